// experiments.hpp — Scenario runners: coherent-field Ramsey scan (setup 1),
// shared-cavity eraser fringe (setup 2), visibility-vs-wait curves, and the
// atomic-velocity prediction. Each runner returns a ScanReport.

#pragma once

#include "ramsey/fock_core.hpp"
#include "ramsey/report.hpp"
#include "ramsey/thermal_series.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ramsey {

enum class VariantChoice { A, B, C, Auto };

[[nodiscard]] std::string_view to_string(VariantChoice v) noexcept;
[[nodiscard]] VariantChoice variant_choice_from_string(std::string_view s);

struct PhysicalConfig {
    double t_cav_s{1e-3};        // photon damping time
    double tau_s{16e-6};         // wait between the two pulses
    double nbar{0.7};            // bath occupation
    double eta{0.75};            // aggregate detection factor
    double v_ref_mps{500.0};     // atomic velocity of the reference run
    double v_observed_ref{0.69}; // visibility observed at v_ref
    double omega_chi_rad{kVacuumPiHalf};
    TruncationConfig trunc{};
    SeriesConfig series{};
    VariantChoice variant{VariantChoice::Auto};

    // T = k tau with k = 1/(2 t_cav).
    [[nodiscard]] double T() const noexcept { return tau_s / (2.0 * t_cav_s); }

    // Throws ValidationError on out-of-range fields.
    void validate() const;

    bool operator==(const PhysicalConfig&) const = default;
};

// JSON schema keys: t_cav_s, tau_s, nbar, eta, v_ref_mps, v_observed_ref,
// omega_chi_rad, n_max, tail_tol, term_tol, variant. Missing keys keep their
// defaults; unknown keys are rejected.
[[nodiscard]] nlohmann::ordered_json config_to_json(const PhysicalConfig& cfg);
[[nodiscard]] PhysicalConfig config_from_json(const nlohmann::json& j);
[[nodiscard]] PhysicalConfig load_config(const std::string& path);
[[nodiscard]] std::string config_schema();

// Resolves VariantChoice::Auto through select_variant (memoized per
// omega_chi/term_tol). When `selection` is non-null and a selection ran, it is
// filled in.
[[nodiscard]] SeriesVariant resolve_variant(const PhysicalConfig& cfg, VariantSelection* selection = nullptr);

[[nodiscard]] std::vector<double> default_setup1_grid();
[[nodiscard]] std::vector<double> default_velocity_grid();

// `fringe_n` picks the photon number whose full fringe goes into extras;
// defaults to the last entry of n_values.
[[nodiscard]] ScanReport run_setup1(const std::vector<double>& n_values, const PhysicalConfig& cfg,
                                    int phi_points = 32, std::optional<double> fringe_n = std::nullopt);
[[nodiscard]] ScanReport run_setup2(const PhysicalConfig& cfg, int phi_points = 32);
[[nodiscard]] ScanReport run_fig4(const std::vector<double>& t_grid, const PhysicalConfig& cfg);
[[nodiscard]] ScanReport run_velocity_scan(const std::vector<double>& velocities, const PhysicalConfig& cfg);

// Inclusive "start:stop:step" grid.
[[nodiscard]] std::vector<double> parse_range(const std::string& text);

struct SelfCheck {
    std::string name;
    double value{0.0};
    double tolerance{0.0};
    bool passed{false};
};

// Oracle-vs-closed-form consistency checks.
[[nodiscard]] std::vector<SelfCheck> run_selftest(const PhysicalConfig& cfg);

} // namespace ramsey
