// report.hpp — Tabular scan reports with deterministic CSV/JSON emission.
//
// Numbers are printed with 12 significant digits through std::to_chars, so
// output is independent of the process locale and byte-stable across runs.

#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace ramsey {

struct ScanReport {
    std::string scenario;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();    // scenario-level scalars
    nlohmann::ordered_json extras = nlohmann::ordered_json::object();     // JSON-only payload (fringes, ...)
    nlohmann::ordered_json provenance = nlohmann::ordered_json::object(); // config echo, tolerances, variant

    // Header row plus one line per row; '.' decimal separator, '\n' line ends.
    [[nodiscard]] std::string to_csv() const;
    [[nodiscard]] nlohmann::ordered_json to_json() const;
    [[nodiscard]] std::string to_json_string() const;
};

// Shortest text with at most 12 significant digits.
[[nodiscard]] std::string format_number(double v);

// v rounded to 12 significant digits, for embedding into JSON.
[[nodiscard]] double round12(double v);

} // namespace ramsey
