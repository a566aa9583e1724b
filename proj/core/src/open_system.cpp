#include "ramsey/open_system.hpp"

#include "ramsey/errors.hpp"
#include "ramsey/report.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace ramsey {
namespace {

// Dissipator on a matrix made of `blocks` x `blocks` field blocks of size d.
// Entry (a*d + n, b*d + m) couples only to (n+1, m+1) and (n-1, m-1).
void apply_dissipator(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out, Eigen::Index d,
                      const ReservoirParams& p) {
    const Eigen::Index dim = rho.rows();
    const Eigen::Index n_max = d - 1;
    const double loss = p.k * (p.nbar + 1.0);
    const double gain = p.k * p.nbar;
    thread_local std::vector<double> sq;
    thread_local std::vector<double> num;  // diag of a+a
    thread_local std::vector<double> anum; // diag of a a+ (truncated: 0 at n_max)
    if (static_cast<Eigen::Index>(sq.size()) != d + 1) {
        sq.resize(static_cast<std::size_t>(d + 1));
        num.resize(static_cast<std::size_t>(d));
        anum.resize(static_cast<std::size_t>(d));
        for (Eigen::Index n = 0; n <= d; ++n) sq[static_cast<std::size_t>(n)] = std::sqrt(static_cast<double>(n));
        for (Eigen::Index n = 0; n < d; ++n) {
            num[static_cast<std::size_t>(n)] = static_cast<double>(n);
            anum[static_cast<std::size_t>(n)] = n < n_max ? static_cast<double>(n + 1) : 0.0;
        }
    }
    out.resize(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Eigen::Index m = j % d;
        const auto um = static_cast<std::size_t>(m);
        for (Eigen::Index i = 0; i < dim; ++i) {
            const Eigen::Index n = i % d;
            const auto un = static_cast<std::size_t>(n);
            cplx v = -(loss * (num[un] + num[um]) + gain * (anum[un] + anum[um])) * rho(i, j);
            if (n < n_max && m < n_max) {
                v += 2.0 * loss * sq[un + 1] * sq[um + 1] * rho(i + 1, j + 1);
            }
            if (n > 0 && m > 0) {
                v += 2.0 * gain * sq[un] * sq[um] * rho(i - 1, j - 1);
            }
            out(i, j) = v;
        }
    }
}

Eigen::MatrixXcd rk4_integrate(const Eigen::MatrixXcd& rho0, double tau, long steps, Eigen::Index d,
                               const ReservoirParams& p) {
    const double h = tau / static_cast<double>(steps);
    Eigen::MatrixXcd y = rho0;
    Eigen::MatrixXcd k1, k2, k3, k4, tmp;
    for (long s = 0; s < steps; ++s) {
        apply_dissipator(y, k1, d, p);
        tmp = y + (0.5 * h) * k1;
        apply_dissipator(tmp, k2, d, p);
        tmp = y + (0.5 * h) * k2;
        apply_dissipator(tmp, k3, d, p);
        tmp = y + h * k3;
        apply_dissipator(tmp, k4, d, p);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
}

} // namespace

void ReservoirParams::validate() const {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("ReservoirParams: k must be finite and > 0");
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw DomainError("ReservoirParams: nbar must be finite and >= 0");
}

FieldDensity dissipator_apply(const FieldDensity& rho, const ReservoirParams& params) {
    params.validate();
    FieldDensity out;
    apply_dissipator(rho.mat, out.mat, rho.mat.rows(), params);
    return out;
}

JointDensity dissipator_apply(const JointDensity& rho, const ReservoirParams& params) {
    params.validate();
    JointDensity out;
    apply_dissipator(rho.mat, out.mat, rho.n_max() + 1, params);
    return out;
}

JointDensity evolve_master(const JointDensity& rho, double tau, const ReservoirParams& params,
                           const StepControl& ctrl) {
    params.validate();
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw DomainError("evolve_master: tau must be finite and >= 0");
    if (tau == 0.0) return rho;

    const Eigen::Index d = rho.n_max() + 1;
    // Largest decay rate of the truncated generator; keeps h * rate <= 1.
    const double rate = 2.0 * params.k *
                        ((params.nbar + 1.0) * static_cast<double>(d - 1) + params.nbar * static_cast<double>(d));
    long steps = std::max<long>(4, static_cast<long>(std::ceil(tau * rate)));

    Eigen::MatrixXcd coarse = rk4_integrate(rho.mat, tau, steps, d, params);
    for (;;) {
        const long fine_steps = 2 * steps;
        if (tau / static_cast<double>(fine_steps) < ctrl.underflow_fraction * tau) {
            throw StepUnderflow("evolve_master: step refinement fell below " +
                                format_number(ctrl.underflow_fraction) + " * tau");
        }
        Eigen::MatrixXcd fine = rk4_integrate(rho.mat, tau, fine_steps, d, params);
        const double gap = (fine - coarse).cwiseAbs().maxCoeff();
        if (gap < ctrl.tol) return JointDensity{std::move(fine)};
        coarse = std::move(fine);
        steps = fine_steps;
    }
}

WaitResult wait(const JointDensity& rho, double tau, const ReservoirParams& params, const StepControl& ctrl) {
    return WaitResult{evolve_master(rho, tau, params, ctrl), params.k * tau};
}

JointDensity zero_temp_wait(double phi, double T, const TruncationConfig& trunc) {
    trunc.validate();
    if (!(T >= 0.0)) throw DomainError("zero_temp_wait: T must be >= 0");
    const int d = trunc.dim();
    JointDensity out{Eigen::MatrixXcd::Zero(2 * d, 2 * d)};
    const Eigen::Index g0 = out.index(Level::g, 0);
    const Eigen::Index g1 = out.index(Level::g, 1);
    const Eigen::Index e0 = out.index(Level::e, 0);
    const double decay2 = std::exp(-2.0 * T);
    out.mat(g0, g0) = 0.5 * (1.0 - decay2);
    out.mat(g1, g1) = 0.5 * decay2;
    out.mat(e0, e0) = 0.5;
    out.mat(g1, e0) = 0.5 * std::exp(-T) * std::polar(1.0, phi);
    out.mat(e0, g1) = std::conj(out.mat(g1, e0));
    return out;
}

double setup2_pg(double phi, double T, const JCParams& params) {
    // Stark phase phi on (|e,0> - i|g,1>)/sqrt(2) is the relative phase phi - pi/2.
    const JointDensity waited = zero_temp_wait(phi - 0.5 * std::numbers::pi, T, TruncationConfig{2, 1e-10});
    const JointDensity after = jc_evolve(waited, kVacuumPiHalf / params.omega, params);
    return partial_trace_field(after).p_g();
}

double setup2_pg_simplified(double phi, double T) {
    return 0.25 - 0.25 * std::exp(-2.0 * T) + 0.5 * std::exp(-T) * std::sin(phi);
}

double zero_temp_visibility_closed_form(double T) {
    if (!(T >= 0.0)) throw DomainError("zero_temp_visibility_closed_form: T must be >= 0");
    const double e = std::exp(-T);
    return 2.0 * e / (3.0 - e);
}

double oracle_setup2_pg(double phi, double T, double nbar, const OracleSettings& settings) {
    const int n_max = settings.trunc.n_max;
    const JCParams unit{};
    JointVector psi = JointVector::basis(Level::e, 0, n_max);
    psi = jc_evolve(psi, kVacuumPiHalf, unit, settings.trunc.tail_tol);
    psi = stark_phase(psi, phi);
    const JointDensity waited = evolve_master(projector(psi), T, ReservoirParams{1.0, nbar}, settings.step);
    const JointDensity after = jc_evolve(waited, settings.omega_chi, unit, settings.trunc.tail_tol);
    return partial_trace_field(after).p_g();
}

FringePattern oracle_setup2_fringe(double T, double nbar, std::span<const double> phi_grid,
                                   const OracleSettings& settings) {
    FringePattern out;
    out.samples.reserve(phi_grid.size());
    for (double phi : phi_grid) {
        out.samples.push_back({phi, oracle_setup2_pg(phi, T, nbar, settings)});
    }
    out.visibility = visibility_from_pattern(out.samples);
    return out;
}

double oracle_setup2_visibility(double T, double nbar, int phi_points, const OracleSettings& settings) {
    const std::vector<double> grid = uniform_phi_grid(phi_points);
    return oracle_setup2_fringe(T, nbar, grid, settings).visibility;
}

TruncationConfig truncation_for_bath(double nbar, double tail_tol, int floor) {
    if (!(nbar >= 0.0)) throw DomainError("truncation_for_bath: nbar must be >= 0");
    TruncationConfig out{std::max(floor, 1), tail_tol};
    out.validate();
    if (nbar == 0.0) return out;
    const double r = nbar / (1.0 + nbar);
    // Photon-number law during the wait is dominated by (n+1) r^n.
    while ((out.n_max + 2.0) * std::pow(r, out.n_max + 1) >= 1e-2 * tail_tol) {
        ++out.n_max;
    }
    return out;
}

} // namespace ramsey
