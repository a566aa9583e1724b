#include "ramsey/jaynes_cummings.hpp"

#include "ramsey/errors.hpp"
#include "ramsey/report.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace ramsey {
namespace {

void check_duration(double duration) {
    if (!(duration >= 0.0) || !std::isfinite(duration)) {
        throw DomainError("jc_evolve: duration must be finite and >= 0");
    }
}

double excited_norm2(cplx alpha, double t, const JCParams& params, const TruncationConfig& trunc) {
    return branch_states(alpha, t, params, trunc).excited.norm2();
}

} // namespace

void JCParams::validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw DomainError("JCParams: omega must be finite and > 0");
    }
}

Eigen::MatrixXcd jc_unitary(int n_max, double duration, const JCParams& params) {
    params.validate();
    check_duration(duration);
    const Eigen::Index d = n_max + 1;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2 * d, 2 * d);
    const cplx minus_i{0.0, -1.0};
    for (int n = 0; n < n_max; ++n) {
        const double angle = params.omega * std::sqrt(n + 1.0) * duration;
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        const Eigen::Index ie = d + n;    // |e, n>
        const Eigen::Index ig = n + 1;    // |g, n+1>
        u(ie, ie) = c;
        u(ig, ig) = c;
        u(ig, ie) = minus_i * s;
        u(ie, ig) = minus_i * s;
    }
    return u;
}

JointVector jc_evolve(const JointVector& state, double duration, const JCParams& params,
                      double leak_tol) {
    const int n_max = state.n_max();
    const double edge = std::norm(state.at(Level::e, n_max));
    if (edge > leak_tol) {
        throw TruncationLeak("jc_evolve: |e, n_max> holds probability " + format_number(edge));
    }
    return JointVector{jc_unitary(n_max, duration, params) * state.amps};
}

JointDensity jc_evolve(const JointDensity& state, double duration, const JCParams& params,
                       double leak_tol) {
    const int n_max = state.n_max();
    const Eigen::Index edge_idx = state.index(Level::e, n_max);
    const double edge = state.mat(edge_idx, edge_idx).real();
    if (edge > leak_tol) {
        throw TruncationLeak("jc_evolve: |e, n_max> holds probability " + format_number(edge));
    }
    const Eigen::MatrixXcd u = jc_unitary(n_max, duration, params);
    return JointDensity{u * state.mat * u.adjoint()};
}

BranchStates branch_states(cplx alpha, double t, const JCParams& params,
                           const TruncationConfig& trunc) {
    params.validate();
    check_duration(t);
    const FieldVector c = coherent_state(alpha, trunc);
    const int n_max = trunc.n_max;
    BranchStates out{FieldVector{Eigen::VectorXcd::Zero(n_max + 1)},
                     FieldVector{Eigen::VectorXcd::Zero(n_max + 1)}};
    const cplx minus_i{0.0, -1.0};
    for (int n = 0; n <= n_max; ++n) {
        const double angle = params.omega * std::sqrt(n + 1.0) * t;
        out.excited.amps(n) = c.amps(n) * std::cos(angle);
        if (n < n_max) out.ground.amps(n + 1) = minus_i * c.amps(n) * std::sin(angle);
    }
    return out;
}

double solve_pi_half_time(cplx alpha, const JCParams& params, const TruncationConfig& trunc) {
    params.validate();
    const double mean = std::norm(alpha);
    const double step = std::numbers::pi / (64.0 * params.omega * std::sqrt(mean + 1.0));
    const double t_limit = 4.0 * std::numbers::pi / params.omega;
    auto residual = [&](double t) { return excited_norm2(alpha, t, params, trunc) - 0.5; };

    double lo = 0.0;
    double f_lo = residual(lo);
    double hi = lo;
    double f_hi = f_lo;
    bool bracketed = false;
    while (hi < t_limit) {
        hi = lo + step;
        f_hi = residual(hi);
        if (f_hi == 0.0) return hi;
        if ((f_lo > 0.0) != (f_hi > 0.0)) {
            bracketed = true;
            break;
        }
        lo = hi;
        f_lo = f_hi;
    }
    if (!bracketed) {
        throw NoRootFound("solve_pi_half_time: no crossing of <alpha_e|alpha_e> = 1/2 before "
                          "Omega t = 4 pi for |alpha|^2 = " + format_number(mean));
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = residual(mid);
        if (std::abs(f_mid) < 1e-13) {
            return mid;
        }
        if ((f_lo > 0.0) == (f_mid > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
            return std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
        }
    }
    return 0.5 * (lo + hi);
}

JointVector stark_phase(const JointVector& state, double phi) {
    JointVector out = state;
    const Eigen::Index d = state.n_max() + 1;
    out.amps.head(d) *= std::polar(1.0, phi);
    return out;
}

JointDensity stark_phase(const JointDensity& state, double phi) {
    JointDensity out = state;
    const Eigen::Index d = state.n_max() + 1;
    const cplx ph = std::polar(1.0, phi);
    // rho -> P rho P^dagger with P = diag(e^{i phi} on g, 1 on e)
    out.mat.block(0, d, d, d) *= ph;
    out.mat.block(d, 0, d, d) *= std::conj(ph);
    return out;
}

} // namespace ramsey
