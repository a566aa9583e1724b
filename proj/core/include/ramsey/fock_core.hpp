// fock_core.hpp — Truncated Fock-space states for one cavity mode and a
// two-level atom: construction, tensor structure, partial trace, and
// density-operator diagnostics.
//
// Atom basis order is (g, e): index 0 is |g>, index 1 is |e>. A 2x2 atomic
// density matrix therefore reads
//     [ <g|rho|g>  <g|rho|e> ]
//     [ <e|rho|g>  <e|rho|e> ]
// Joint states use atom-major, photon-minor indexing:
//     index(a, n) = a * (n_max + 1) + n
// so the doublet {|g,n+1>, |e,n>} sits at a fixed stride of n_max.

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace ramsey {

using cplx = std::complex<double>;

enum class Level : int { g = 0, e = 1 };

struct TruncationConfig {
    int n_max{60};          // highest retained Fock level
    double tail_tol{1e-10}; // admissible discarded probability

    [[nodiscard]] int dim() const noexcept { return n_max + 1; }

    // Throws DomainError unless n_max >= 1 and tail_tol in (0, 1).
    void validate() const;

    bool operator==(const TruncationConfig&) const = default;
};

// Returns `base` unchanged when mean_photons <= 30. Above that, n_max is raised
// until the discarded Poisson tail is below base.tail_tol, and a warning is
// emitted.
TruncationConfig truncation_for_coherent(double mean_photons, TruncationConfig base = {});

struct FieldVector {
    Eigen::VectorXcd amps;

    [[nodiscard]] int n_max() const noexcept { return static_cast<int>(amps.size()) - 1; }
    [[nodiscard]] double norm2() const { return amps.squaredNorm(); }
};

struct FieldDensity {
    Eigen::MatrixXcd mat;

    [[nodiscard]] int n_max() const noexcept { return static_cast<int>(mat.rows()) - 1; }
};

using AtomVector = Eigen::Vector2cd;

struct JointVector {
    Eigen::VectorXcd amps; // size 2 * (n_max + 1)

    [[nodiscard]] int n_max() const noexcept { return static_cast<int>(amps.size()) / 2 - 1; }
    [[nodiscard]] Eigen::Index index(Level a, int n) const noexcept {
        return static_cast<Eigen::Index>(a) * (n_max() + 1) + n;
    }
    [[nodiscard]] cplx& at(Level a, int n) { return amps(index(a, n)); }
    [[nodiscard]] cplx at(Level a, int n) const { return amps(index(a, n)); }

    static JointVector zero(int n_max);
    static JointVector basis(Level a, int n, int n_max);
};

struct JointDensity {
    Eigen::MatrixXcd mat; // 2(n_max+1) square

    [[nodiscard]] int n_max() const noexcept { return static_cast<int>(mat.rows()) / 2 - 1; }
    [[nodiscard]] Eigen::Index index(Level a, int n) const noexcept {
        return static_cast<Eigen::Index>(a) * (n_max() + 1) + n;
    }
    [[nodiscard]] cplx at(Level a, int n, Level b, int m) const {
        return mat(index(a, n), index(b, m));
    }
};

struct AtomDensity {
    Eigen::Matrix2cd mat;

    [[nodiscard]] double p_g() const { return mat(0, 0).real(); }
    [[nodiscard]] double p_e() const { return mat(1, 1).real(); }
};

[[nodiscard]] AtomVector ket(Level a);

// |alpha> truncated at trunc.n_max. Amplitudes use log-domain factorials.
// Throws TailTooLarge if the discarded Poisson probability is >= tail_tol.
[[nodiscard]] FieldVector coherent_state(cplx alpha, const TruncationConfig& trunc = {});

// Sum_{n > n_max} of the Poisson(mean) law.
[[nodiscard]] double poisson_tail(double mean, int n_max);

// Geometric (Bose-Einstein) occupation law renormalized over the kept levels.
[[nodiscard]] FieldDensity thermal_density(double nbar, const TruncationConfig& trunc = {});

[[nodiscard]] JointVector tensor(const AtomVector& atom, const FieldVector& field);
[[nodiscard]] JointDensity tensor(const AtomDensity& atom, const FieldDensity& field);
[[nodiscard]] JointDensity projector(const JointVector& psi);

[[nodiscard]] AtomDensity partial_trace_field(const JointDensity& rho);
[[nodiscard]] FieldDensity partial_trace_atom(const JointDensity& rho);

// <a|b>, antilinear in the first argument.
[[nodiscard]] cplx overlap(const FieldVector& a, const FieldVector& b);
[[nodiscard]] double mean_photon_number(const FieldVector& psi);
[[nodiscard]] double mean_photon_number(const FieldDensity& rho);

struct DensityDiagnostics {
    double hermiticity_residual{0.0}; // max |rho - rho^dagger|
    double trace_error{0.0};          // |tr(rho) - 1|
    double min_eigenvalue{0.0};
};

[[nodiscard]] DensityDiagnostics diagnose(const Eigen::MatrixXcd& rho);

} // namespace ramsey
