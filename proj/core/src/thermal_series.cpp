#include "ramsey/thermal_series.hpp"

#include "ramsey/errors.hpp"
#include "ramsey/report.hpp"
#include "ramsey/log.hpp"
#include "ramsey/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ramsey {
namespace {

struct Tracked {
    CompensatedSum sum;
    int small_run{0};
    bool done{false};

    void add(double term, double tol) {
        if (done) return;
        sum += term;
        small_run = std::abs(term) < tol ? small_run + 1 : 0;
        if (small_run >= 3) done = true;
    }
};

class LogFactorials {
public:
    double operator()(int n) {
        while (static_cast<int>(table_.size()) <= n) {
            table_.push_back(std::lgamma(static_cast<double>(table_.size()) + 1.0));
        }
        return table_[static_cast<std::size_t>(n)];
    }
    double log_binomial(int n, int k) { return (*this)(n) - (*this)(k) - (*this)(n - k); }

private:
    std::vector<double> table_;
};

// Negative-binomial expectations over K ~ NB(l+1, x), P(K=k) = C(k+l,l) x^k (1-x)^{l+1}:
//   s3(l) = E[sin^2(w sqrt(l+K+1))]
//   s4(l) = E[1{K>=1} cos^2(w sqrt(l+K))]
//   s5(l) = E[sqrt(l+K+1) sin(2 w sqrt(l+K+1))]
class InnerSums {
public:
    InnerSums(double nbar, double omega_chi, const SeriesConfig& cfg)
        : log_x_(std::log(nbar / (1.0 + nbar))), log_1mx_(-std::log1p(nbar)), nbar_(nbar),
          omega_chi_(omega_chi), cfg_(cfg) {}

    void ensure(int l_max) {
        while (static_cast<int>(s3_.size()) <= l_max) compute(static_cast<int>(s3_.size()));
    }
    double s3(int l) const { return s3_[static_cast<std::size_t>(l)]; }
    double s4(int l) const { return s4_[static_cast<std::size_t>(l)]; }
    double s5(int l) const { return s5_[static_cast<std::size_t>(l)]; }

private:
    void compute(int l) {
        CompensatedSum a3, a4, a5;
        double log_p = (l + 1.0) * log_1mx_;
        const double mode = static_cast<double>(l) * nbar_;
        const double tol = 1e-3 * cfg_.term_tol;
        int small_run = 0;
        for (int k = 0;; ++k) {
            if (l + k > cfg_.m_max) {
                throw ConvergenceFailure("thermal series: m_max reached in inner sum at l=" + std::to_string(l));
            }
            const double p = std::exp(log_p);
            const double root_next = std::sqrt(l + k + 1.0);
            const double s = std::sin(omega_chi_ * root_next);
            a3 += p * s * s;
            if (k >= 1) {
                const double c = std::cos(omega_chi_ * std::sqrt(static_cast<double>(l + k)));
                a4 += p * c * c;
            }
            a5 += p * root_next * std::sin(2.0 * omega_chi_ * root_next);
            const double envelope = p * root_next;
            small_run = (k > mode && envelope < tol) ? small_run + 1 : 0;
            if (small_run >= 3) break;
            log_p += log_x_ + std::log((k + l + 1.0) / (k + 1.0));
        }
        s3_.push_back(a3.value());
        s4_.push_back(a4.value());
        s5_.push_back(a5.value());
    }

    double log_x_;
    double log_1mx_;
    double nbar_;
    double omega_chi_;
    SeriesConfig cfg_;
    std::vector<double> s3_, s4_, s5_;
};

struct SeriesResult {
    ConstantParts parts;
    double oscillatory{0.0};
};

void check_domain(double T, double nbar, double omega_chi, const SeriesConfig& cfg) {
    cfg.validate();
    if (!(nbar > 0.0 && nbar < 1.0)) {
        throw DomainError("thermal series: nbar must lie in (0, 1), got " + format_number(nbar));
    }
    if (!(T >= 0.0) || !std::isfinite(T)) throw DomainError("thermal series: T must be finite and >= 0");
    if (!std::isfinite(omega_chi)) throw DomainError("thermal series: omega_chi must be finite");
}

SeriesResult evaluate(double T, double nbar, double omega_chi, const SeriesConfig& cfg, bool want_constant,
                      bool want_oscillatory) {
    check_domain(T, nbar, omega_chi, cfg);
    LogFactorials lf;
    InnerSums inner(nbar, omega_chi, cfg);

    const double log_n = std::log(nbar);
    const double log_1pn = std::log1p(nbar);
    const double log_y = log_n - log_1pn;
    const double log_w = -2.0 * T;
    const double tol = cfg.term_tol;
    const bool positive_power_sign = cfg.variant != SeriesVariant::C;

    Tracked c1, c2, c3, c4, osc;
    if (!want_constant) c1.done = c2.done = c3.done = c4.done = true;
    if (!want_oscillatory) osc.done = true;

    for (int j = 0;; ++j) {
        if (c1.done && c2.done && c3.done && c4.done && osc.done) break;
        if (j > cfg.j_max) throw ConvergenceFailure("thermal series: j_max reached before term_tol");
        inner.ensure(j);

        // a_j = (nbar^j - j nbar^{j-1}) / (1+nbar)^{j+1}, with j nbar^{j-1} = 0 at j = 0.
        double log_abs_a = 0.0;
        double sign_a = 1.0;
        if (j == 0) {
            log_abs_a = -log_1pn;
        } else {
            log_abs_a = (j - 1) * log_n + std::log(std::abs(nbar - j)) - (j + 1) * log_1pn;
            sign_a = nbar - j < 0.0 ? -1.0 : 1.0;
        }
        const double jw = j * log_w;

        if (!c1.done) c1.add(sign_a * std::exp(jw + log_abs_a), tol);

        if (!c2.done) {
            CompensatedSum s;
            for (int p = 1; p <= j; ++p) {
                const double c = std::cos(omega_chi * std::sqrt(static_cast<double>(p)));
                const double mag = std::exp(jw + log_abs_a + lf.log_binomial(j, p) - p * log_1pn);
                s += ((p % 2 == 0) ? 1.0 : -1.0) * sign_a * mag * c * c;
            }
            c2.add(s.value(), tol);
        }

        if (!c3.done || !c4.done || !osc.done) {
            CompensatedSum s3, s4, s5;
            const double base3 = jw + j * log_y;
            const double base4 = jw + log_abs_a + log_1pn;
            const double base5 = jw + j * log_y - log_1pn;
            for (int l = 0; l <= j; ++l) {
                const double lb = lf.log_binomial(j, l);
                const double alt = (l % 2 == 0) ? 1.0 : -1.0;
                if (!c3.done) s3 += alt * std::exp(base3 + lb) * inner.s3(l);
                if (!c4.done) s4 += alt * sign_a * std::exp(base4 + lb) * inner.s4(l);
                if (!osc.done) {
                    const double extra = positive_power_sign ? 2.0 * l * log_n : 0.0;
                    s5 += alt * std::exp(base5 + lb + extra) * inner.s5(l) / (l + 1.0);
                }
            }
            c3.add(s3.value(), tol);
            c4.add(s4.value(), tol);
            if (!osc.done) {
                const double jfac = cfg.variant == SeriesVariant::B ? std::sqrt(j + 1.0) : (j + 1.0);
                osc.add(jfac * s5.value(), tol);
            }
        }
    }

    SeriesResult out;
    out.parts = ConstantParts{0.5 * c1.sum.value(), 0.5 * c2.sum.value(), 0.5 * c3.sum.value(),
                              0.5 * c4.sum.value()};
    out.oscillatory = 0.5 * std::exp(-T) * osc.sum.value();
    return out;
}

} // namespace

std::string_view to_string(SeriesVariant v) noexcept {
    switch (v) {
    case SeriesVariant::A: return "A";
    case SeriesVariant::B: return "B";
    case SeriesVariant::C: return "C";
    }
    return "?";
}

SeriesVariant series_variant_from_string(std::string_view s) {
    if (s == "A" || s == "a") return SeriesVariant::A;
    if (s == "B" || s == "b") return SeriesVariant::B;
    if (s == "C" || s == "c") return SeriesVariant::C;
    throw DomainError("unknown series variant '" + std::string(s) + "' (expected A, B or C)");
}

void SeriesConfig::validate() const {
    if (!(term_tol > 0.0 && term_tol <= 1e-6)) throw DomainError("SeriesConfig: term_tol must lie in (0, 1e-6]");
    if (j_max < 16 || m_max < 16) throw DomainError("SeriesConfig: j_max and m_max must be >= 16");
}

ConstantParts pg_constant_parts(double T, double nbar, double omega_chi, const SeriesConfig& cfg) {
    return evaluate(T, nbar, omega_chi, cfg, true, false).parts;
}

double pg_constant(double T, double nbar, double omega_chi, const SeriesConfig& cfg) {
    return pg_constant_parts(T, nbar, omega_chi, cfg).total();
}

double pg_oscillatory(double T, double nbar, double omega_chi, const SeriesConfig& cfg) {
    return evaluate(T, nbar, omega_chi, cfg, false, true).oscillatory;
}

double thermal_visibility_unclipped(double T, double nbar, const SeriesConfig& cfg, double omega_chi) {
    const SeriesResult r = evaluate(T, nbar, omega_chi, cfg, true, true);
    return r.oscillatory / r.parts.total();
}

double thermal_visibility(double T, double nbar, const SeriesConfig& cfg, double omega_chi) {
    const double raw = thermal_visibility_unclipped(T, nbar, cfg, omega_chi);
    if (raw < -1e-6 || raw > 1.0 + 1e-6) {
        warn("thermal_visibility: raw ratio " + format_number(raw) + " outside [0, 1] (variant " +
             std::string(to_string(cfg.variant)) + "); clipped");
    }
    return std::clamp(raw, 0.0, 1.0);
}

std::vector<GridPoint> default_selection_grid() {
    std::vector<GridPoint> grid;
    for (double T : {0.008, 0.1, 0.4}) {
        for (double nbar : {0.3, 0.7}) grid.push_back({T, nbar});
    }
    return grid;
}

VisibilityOracle master_equation_oracle(double omega_chi) {
    return [omega_chi](const GridPoint& p) {
        OracleSettings s;
        s.omega_chi = omega_chi;
        s.trunc = truncation_for_bath(p.nbar);
        return oracle_setup2_visibility(p.T, p.nbar, 8, s);
    };
}

VariantSelection select_variant(std::span<const GridPoint> grid, const SeriesConfig& cfg,
                                const VisibilityOracle& oracle, double omega_chi) {
    if (grid.empty()) throw DomainError("select_variant: empty grid");
    VariantSelection sel;
    sel.total_deviation.fill(0.0);
    bool any_close = false;
    int first_winner = -1;
    for (const GridPoint& p : grid) {
        VariantProbe probe{p, oracle(p), {}};
        int best = 0;
        for (SeriesVariant v : kAllSeriesVariants) {
            SeriesConfig c = cfg;
            c.variant = v;
            const auto idx = static_cast<std::size_t>(v);
            probe.series[idx] = thermal_visibility_unclipped(p.T, p.nbar, c, omega_chi);
            const double dev = std::abs(probe.series[idx] - probe.oracle);
            sel.total_deviation[idx] += dev;
            if (dev <= 0.05) any_close = true;
            if (dev < std::abs(probe.series[static_cast<std::size_t>(best)] - probe.oracle)) best = static_cast<int>(idx);
        }
        if (first_winner < 0) first_winner = best;
        if (best != first_winner) sel.stable = false;
        sel.probes.push_back(probe);
    }
    if (!any_close) {
        throw Inconclusive("select_variant: every series variant misses the oracle by > 0.05 at every probe");
    }
    const auto it = std::min_element(sel.total_deviation.begin(), sel.total_deviation.end());
    sel.winner = static_cast<SeriesVariant>(std::distance(sel.total_deviation.begin(), it));
    return sel;
}

VariantSelection select_variant(const SeriesConfig& cfg, double omega_chi) {
    const std::vector<GridPoint> grid = default_selection_grid();
    return select_variant(grid, cfg, master_equation_oracle(omega_chi), omega_chi);
}

} // namespace ramsey
