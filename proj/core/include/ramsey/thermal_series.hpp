// thermal_series.hpp — Finite-temperature fringe of the shared-cavity setup as
// nested infinite series.
//
// With x = nbar/(1+nbar), w = e^{-2T}, Omega_m chi = omega_chi sqrt(m+1):
//
//   P_g(phi) = P_c + P_o sin(phi)
//   P_c = c1 + c2 + c3 + c4
//   c1 = 1/2 sum_j w^j a_j,                 a_j = (nbar^j - j nbar^{j-1}) / (1+nbar)^{j+1}
//   c2 = 1/2 sum_j w^j a_j sum_{m<j} [-(1+nbar)]^{-m-1} C(j,m+1) cos^2(Omega_m chi)
//   c3 = 1/2 sum_j w^j b_j sum_{l<=j} (-nbar)^{-l} C(j,l) sum_{m>=l} x^m C(m,l) sin^2(Omega_m chi)
//   c4 = 1/2 sum_j w^j a_j sum_{l<=j} (-nbar)^{-l} C(j,l) sum_{m>=l} x^{m+1} C(m+1,l) cos^2(Omega_m chi)
//   P_o = e^{-T}/2 sum_j w^j nbar^j/(1+nbar)^{j+2} sum_{l<=j} s_l C(j,l)
//                     sum_{m>=l} x^m C(m,l) F(j,l,m) sin(2 Omega_m chi)
// with b_j = nbar^j/(1+nbar)^{j+1}. The oscillatory sign/factor pair (s_l, F)
// is selected by SeriesVariant:
//   A: s_l = (-nbar)^l,  F = (j+1) sqrt(m+1) / (l+1)
//   B: s_l = (-nbar)^l,  F = sqrt((j+1)(m+1)) / (l+1)
//   C: s_l = (-nbar)^-l, F = (j+1) sqrt(m+1) / (l+1)
//
// Evaluation: every inner m-sum is rewritten as a negative-binomial
// expectation, sum_{m>=l} x^m C(m,l) f(m) = nbar^l (1+nbar) E[f(l+K)] with
// K ~ NB(l+1, x), so no (-nbar)^{-l} power is ever formed explicitly and the
// sums stay finite for small nbar. Binomials are taken in log domain and all
// accumulation is compensated.

#pragma once

#include "ramsey/open_system.hpp"

#include <array>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace ramsey {

enum class SeriesVariant { A, B, C };

[[nodiscard]] std::string_view to_string(SeriesVariant v) noexcept;
[[nodiscard]] SeriesVariant series_variant_from_string(std::string_view s);

inline constexpr std::array<SeriesVariant, 3> kAllSeriesVariants{SeriesVariant::A, SeriesVariant::B,
                                                                  SeriesVariant::C};

struct SeriesConfig {
    double term_tol{1e-13}; // per-sum truncation threshold
    int j_max{20000};
    int m_max{200000};
    SeriesVariant variant{SeriesVariant::C};

    // term_tol in (0, 1e-6], caps >= 16.
    void validate() const;

    bool operator==(const SeriesConfig&) const = default;
};

struct ConstantParts {
    double c1{0.0};
    double c2{0.0};
    double c3{0.0};
    double c4{0.0};

    [[nodiscard]] double total() const noexcept { return c1 + c2 + c3 + c4; }
};

// Require 0 < nbar < 1 and T >= 0 (DomainError otherwise). Throw
// ConvergenceFailure when j_max or m_max is reached before term_tol.
[[nodiscard]] ConstantParts pg_constant_parts(double T, double nbar, double omega_chi, const SeriesConfig& cfg = {});
[[nodiscard]] double pg_constant(double T, double nbar, double omega_chi, const SeriesConfig& cfg = {});
[[nodiscard]] double pg_oscillatory(double T, double nbar, double omega_chi, const SeriesConfig& cfg = {});

// P_o / P_c without clipping.
[[nodiscard]] double thermal_visibility_unclipped(double T, double nbar, const SeriesConfig& cfg = {},
                                                  double omega_chi = kVacuumPiHalf);

// P_o / P_c clipped to [0, 1]; warns when the raw ratio leaves [0, 1] by more than 1e-6.
[[nodiscard]] double thermal_visibility(double T, double nbar, const SeriesConfig& cfg = {},
                                        double omega_chi = kVacuumPiHalf);

struct GridPoint {
    double T{0.0};
    double nbar{0.0};
};

struct VariantProbe {
    GridPoint point;
    double oracle{0.0};
    std::array<double, 3> series{}; // unclipped visibility, indexed by SeriesVariant
};

struct VariantSelection {
    SeriesVariant winner{SeriesVariant::C};
    std::array<double, 3> total_deviation{};
    std::vector<VariantProbe> probes;
    bool stable{true}; // same per-point winner everywhere
};

using VisibilityOracle = std::function<double(const GridPoint&)>;

// Default probe grid {0.008, 0.1, 0.4} x {0.3, 0.7}.
[[nodiscard]] std::vector<GridPoint> default_selection_grid();

// Master-equation oracle visibility for the shared-cavity setup.
[[nodiscard]] VisibilityOracle master_equation_oracle(double omega_chi = kVacuumPiHalf);

// Picks the variant with the least total |series - oracle| over the grid.
// Throws Inconclusive when every variant misses the oracle by > 0.05 at every point.
[[nodiscard]] VariantSelection select_variant(std::span<const GridPoint> grid, const SeriesConfig& cfg,
                                              const VisibilityOracle& oracle, double omega_chi = kVacuumPiHalf);
[[nodiscard]] VariantSelection select_variant(const SeriesConfig& cfg = {}, double omega_chi = kVacuumPiHalf);

} // namespace ramsey
