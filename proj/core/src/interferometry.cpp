#include "ramsey/interferometry.hpp"

#include "ramsey/errors.hpp"
#include "ramsey/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ramsey {

void DetectionModel::validate() const {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError("DetectionModel: eta must lie in [0, 1]");
    }
}

PlusMinus plus_minus_decomposition(const FieldVector& alpha_e, const FieldVector& alpha_g) {
    if (alpha_e.amps.size() != alpha_g.amps.size()) {
        throw DomainError("plus_minus_decomposition: dimension mismatch");
    }
    PlusMinus out;
    const cplx ov = overlap(alpha_e, alpha_g);
    out.theta = std::abs(ov) < 1e-12 ? 0.0 : std::arg(ov);
    const Eigen::VectorXcd g = std::polar(1.0, -out.theta) * alpha_g.amps;
    out.plus.amps = 0.5 * (alpha_e.amps + g);
    out.minus.amps = 0.5 * (alpha_e.amps - g);
    out.n_plus = out.plus.norm2();
    out.n_minus = out.minus.norm2();
    return out;
}

AtomDensity atomic_state_after_phase(const FieldVector& alpha_e, const FieldVector& alpha_g, double phi) {
    const double ne = alpha_e.norm2();
    const double ng = alpha_g.norm2();
    if (std::abs(ne - 0.5) > 1e-9 || std::abs(ng - 0.5) > 1e-9) {
        throw DomainError("atomic_state_after_phase: branch norms (" + format_number(ne) + ", " +
                          format_number(ng) + ") violate the pi/2 condition");
    }
    const cplx c = std::polar(1.0, phi) * overlap(alpha_e, alpha_g);
    AtomDensity rho;
    rho.mat << 0.5, c,
               std::conj(c), 0.5;
    return rho;
}

Eigen::Matrix2cd classical_pi_half_unitary() {
    Eigen::Matrix2cd u;
    u << 1.0, 1.0,
        -1.0, 1.0;
    return u / std::numbers::sqrt2;
}

AtomDensity classical_pi_half(const AtomDensity& rho) {
    const Eigen::Matrix2cd u = classical_pi_half_unitary();
    return AtomDensity{u * rho.mat * u.adjoint()};
}

double visibility_from_pattern(std::span<const FringeSample> samples) {
    if (samples.size() < 8) {
        throw DomainError("visibility_from_pattern: need at least 8 samples, got " +
                          std::to_string(samples.size()));
    }
    auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end(),
        [](const FringeSample& a, const FringeSample& b) { return a.phi < b.phi; });
    const double span = hi_it->phi - lo_it->phi;
    const double n = static_cast<double>(samples.size());
    if (span * n / (n - 1.0) < 2.0 * std::numbers::pi * (1.0 - 1e-9)) {
        throw DomainError("visibility_from_pattern: samples do not cover a full period");
    }
    auto [pmin, pmax] = std::minmax_element(samples.begin(), samples.end(),
        [](const FringeSample& a, const FringeSample& b) { return a.p_g < b.p_g; });
    if (pmin->p_g + pmax->p_g < 1e-12) {
        throw DegeneratePattern("visibility_from_pattern: max + min below 1e-12");
    }

    Eigen::MatrixXd design(samples.size(), 3);
    Eigen::VectorXd rhs(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        design(row, 0) = 1.0;
        design(row, 1) = std::cos(samples[i].phi);
        design(row, 2) = std::sin(samples[i].phi);
        rhs(row) = samples[i].p_g;
    }
    const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(rhs);
    if (std::abs(coef(0)) < 0.5e-12) {
        throw DegeneratePattern("visibility_from_pattern: fitted mean vanishes");
    }
    return std::hypot(coef(1), coef(2)) / coef(0);
}

std::vector<double> uniform_phi_grid(int points) {
    if (points < 1) throw DomainError("uniform_phi_grid: points must be >= 1");
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        grid[static_cast<std::size_t>(i)] = 2.0 * std::numbers::pi * i / points;
    }
    return grid;
}

FringePattern fringe_scan_setup1(cplx alpha, const JCParams& params, const TruncationConfig& trunc,
                                 std::span<const double> phi_grid) {
    if (phi_grid.size() < 8) {
        throw DomainError("fringe_scan_setup1: phi_grid needs at least 8 points");
    }
    const double t = solve_pi_half_time(alpha, params, trunc);
    const BranchStates br = branch_states(alpha, t, params, trunc);
    FringePattern out;
    out.samples.reserve(phi_grid.size());
    for (double phi : phi_grid) {
        const AtomDensity rho = classical_pi_half(atomic_state_after_phase(br.excited, br.ground, phi));
        out.samples.push_back({phi, rho.p_g()});
    }
    out.visibility = visibility_from_pattern(out.samples);
    return out;
}

double apply_detection(double v, const DetectionModel& model) {
    model.validate();
    if (!(v >= 0.0 && v <= 1.0)) {
        throw DomainError("apply_detection: visibility must lie in [0, 1]");
    }
    return model.eta * v;
}

Setup1Point setup1_point(double mean_photons, const JCParams& params, const TruncationConfig& trunc) {
    if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons)) {
        throw DomainError("setup1_point: mean photon number must be finite and >= 0");
    }
    const cplx alpha{std::sqrt(mean_photons), 0.0};
    Setup1Point p;
    p.mean_photons = mean_photons;
    p.pulse_time = solve_pi_half_time(alpha, params, trunc);
    const BranchStates br = branch_states(alpha, p.pulse_time, params, trunc);
    const PlusMinus pm = plus_minus_decomposition(br.excited, br.ground);
    p.coherence = overlap(br.excited, br.ground);
    p.n_plus = pm.n_plus;
    p.n_minus = pm.n_minus;
    p.visibility = 2.0 * std::abs(p.coherence);
    return p;
}

} // namespace ramsey
