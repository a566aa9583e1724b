#include "ramsey/report.hpp"

#include "ramsey/errors.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace ramsey {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0"; // folds -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    if (res.ec != std::errc{}) throw Error("format_number: conversion failed");
    return std::string(buf, res.ptr);
}

double round12(double v) {
    if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
    const std::string s = format_number(v);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

std::string ScanReport::to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out += ',';
        out += columns[c];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_number(row[c]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json ScanReport::to_json() const {
    nlohmann::ordered_json j;
    j["scenario"] = scenario;
    j["columns"] = columns;
    auto& jr = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        auto r = nlohmann::ordered_json::array();
        for (double v : row) r.push_back(round12(v));
        jr.push_back(std::move(r));
    }
    j["summary"] = summary;
    if (!extras.empty()) j["extras"] = extras;
    j["provenance"] = provenance;
    return j;
}

std::string ScanReport::to_json_string() const {
    return to_json().dump(2) + "\n";
}

} // namespace ramsey
