#include "ramsey/fock_core.hpp"

#include "ramsey/errors.hpp"
#include "ramsey/report.hpp"
#include "ramsey/log.hpp"
#include "ramsey/summation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ramsey {

void TruncationConfig::validate() const {
    if (n_max < 1) {
        throw DomainError("TruncationConfig: n_max must be >= 1, got " + std::to_string(n_max));
    }
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
        throw DomainError("TruncationConfig: tail_tol must lie in (0, 1)");
    }
}

TruncationConfig truncation_for_coherent(double mean_photons, TruncationConfig base) {
    base.validate();
    if (mean_photons <= 30.0) return base;
    TruncationConfig out = base;
    while (poisson_tail(mean_photons, out.n_max) >= out.tail_tol) {
        out.n_max += 10;
    }
    if (out.n_max != base.n_max) {
        warn("mean photon number " + format_number(mean_photons) + " exceeds 30; n_max raised from " +
             std::to_string(base.n_max) + " to " + std::to_string(out.n_max));
    }
    return out;
}

JointVector JointVector::zero(int n_max) {
    return JointVector{Eigen::VectorXcd::Zero(2 * (n_max + 1))};
}

JointVector JointVector::basis(Level a, int n, int n_max) {
    JointVector v = zero(n_max);
    v.at(a, n) = 1.0;
    return v;
}

AtomVector ket(Level a) {
    AtomVector v = AtomVector::Zero();
    v(static_cast<int>(a)) = 1.0;
    return v;
}

double poisson_tail(double mean, int n_max) {
    if (mean <= 0.0) return 0.0;
    // Terms decrease monotonically once n exceeds the mean.
    CompensatedSum tail;
    const double log_mean = std::log(mean);
    for (int n = n_max + 1;; ++n) {
        const double term = std::exp(-mean + n * log_mean - std::lgamma(n + 1.0));
        tail += term;
        if (n > mean && term < 1e-18 * std::max(tail.value(), 1e-300)) break;
        if (n > mean && term == 0.0) break;
    }
    return tail.value();
}

FieldVector coherent_state(cplx alpha, const TruncationConfig& trunc) {
    trunc.validate();
    const double mean = std::norm(alpha);
    const double tail = poisson_tail(mean, trunc.n_max);
    if (tail >= trunc.tail_tol) {
        throw TailTooLarge("coherent_state: discarded probability " + format_number(tail) +
                           " >= tail_tol at n_max=" + std::to_string(trunc.n_max));
    }
    FieldVector out{Eigen::VectorXcd::Zero(trunc.dim())};
    if (mean == 0.0) {
        out.amps(0) = 1.0;
        return out;
    }
    const double log_abs = std::log(std::abs(alpha));
    const double phase = std::arg(alpha);
    for (int n = 0; n <= trunc.n_max; ++n) {
        const double log_mag = -0.5 * mean + n * log_abs - 0.5 * std::lgamma(n + 1.0);
        out.amps(n) = std::polar(std::exp(log_mag), n * phase);
    }
    return out;
}

FieldDensity thermal_density(double nbar, const TruncationConfig& trunc) {
    trunc.validate();
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
        throw DomainError("thermal_density: nbar must be finite and >= 0");
    }
    FieldDensity out{Eigen::MatrixXcd::Zero(trunc.dim(), trunc.dim())};
    if (nbar == 0.0) {
        out.mat(0, 0) = 1.0;
        return out;
    }
    const double ratio = nbar / (1.0 + nbar);
    const double tail = std::pow(ratio, trunc.n_max + 1);
    if (tail >= trunc.tail_tol) {
        throw TailTooLarge("thermal_density: geometric tail " + format_number(tail) +
                           " >= tail_tol at n_max=" + std::to_string(trunc.n_max));
    }
    // p_n = ratio^n (1 - ratio), renormalized by 1 - tail.
    const double norm = (1.0 - ratio) / (1.0 - tail);
    double w = 1.0;
    for (int n = 0; n <= trunc.n_max; ++n) {
        out.mat(n, n) = w * norm;
        w *= ratio;
    }
    return out;
}

JointVector tensor(const AtomVector& atom, const FieldVector& field) {
    const int d = static_cast<int>(field.amps.size());
    JointVector out = JointVector::zero(d - 1);
    out.amps.head(d) = atom(0) * field.amps;
    out.amps.tail(d) = atom(1) * field.amps;
    return out;
}

JointDensity tensor(const AtomDensity& atom, const FieldDensity& field) {
    const Eigen::Index d = field.mat.rows();
    JointDensity out{Eigen::MatrixXcd(2 * d, 2 * d)};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            out.mat.block(a * d, b * d, d, d) = atom.mat(a, b) * field.mat;
        }
    }
    return out;
}

JointDensity projector(const JointVector& psi) {
    return JointDensity{psi.amps * psi.amps.adjoint()};
}

AtomDensity partial_trace_field(const JointDensity& rho) {
    const Eigen::Index d = rho.n_max() + 1;
    AtomDensity out{Eigen::Matrix2cd::Zero()};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            out.mat(a, b) = rho.mat.block(a * d, b * d, d, d).trace();
        }
    }
    return out;
}

FieldDensity partial_trace_atom(const JointDensity& rho) {
    const Eigen::Index d = rho.n_max() + 1;
    return FieldDensity{rho.mat.topLeftCorner(d, d) + rho.mat.bottomRightCorner(d, d)};
}

cplx overlap(const FieldVector& a, const FieldVector& b) {
    if (a.amps.size() != b.amps.size()) {
        throw DomainError("overlap: dimension mismatch");
    }
    return a.amps.dot(b.amps); // Eigen's dot conjugates the first argument
}

double mean_photon_number(const FieldVector& psi) {
    CompensatedSum acc;
    for (Eigen::Index n = 0; n < psi.amps.size(); ++n) {
        acc += static_cast<double>(n) * std::norm(psi.amps(n));
    }
    return acc.value();
}

double mean_photon_number(const FieldDensity& rho) {
    CompensatedSum acc;
    for (Eigen::Index n = 0; n < rho.mat.rows(); ++n) {
        acc += static_cast<double>(n) * rho.mat(n, n).real();
    }
    return acc.value();
}

DensityDiagnostics diagnose(const Eigen::MatrixXcd& rho) {
    DensityDiagnostics d;
    d.hermiticity_residual = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    d.trace_error = std::abs(rho.trace() - cplx{1.0, 0.0});
    const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = solver.eigenvalues().minCoeff();
    return d;
}

} // namespace ramsey
