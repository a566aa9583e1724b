// interferometry.hpp — Coherent-field Ramsey interferometer: which-path
// decomposition, the reduced atomic state through both zones, fringe synthesis
// and visibility extraction.

#pragma once

#include "ramsey/fock_core.hpp"
#include "ramsey/jaynes_cummings.hpp"

#include <span>
#include <vector>

namespace ramsey {

struct FringeSample {
    double phi{0.0};
    double p_g{0.0};
};

struct FringePattern {
    std::vector<FringeSample> samples;
    double visibility{0.0};
};

struct DetectionModel {
    double eta{0.75};

    void validate() const;
};

struct PlusMinus {
    FieldVector plus;  // (alpha_e + e^{-i theta} alpha_g) / 2
    FieldVector minus; // (alpha_e - e^{-i theta} alpha_g) / 2
    double n_plus{0.0};
    double n_minus{0.0};
    double theta{0.0}; // ground-branch phase removed before combining
};

// The ground branch carries a convention-dependent phase (the -i of the JC
// rotation, plus arg alpha). It is removed first: theta = arg <alpha_e|alpha_g>,
// or 0 when |<alpha_e|alpha_g>| < 1e-12. With theta removed, n_minus -> 0 when
// the branches coincide and n_plus = n_minus when they are orthogonal.
[[nodiscard]] PlusMinus plus_minus_decomposition(const FieldVector& alpha_e, const FieldVector& alpha_g);

// Reduced atomic state after the phase phi, using the pi/2 norms (1/2, 1/2).
// Requires both branch norms within 1e-9 of 1/2.
[[nodiscard]] AtomDensity atomic_state_after_phase(const FieldVector& alpha_e, const FieldVector& alpha_g,
                                                   double phi);

// Ideal second Ramsey zone: rho -> U rho U^dagger with, in the (g, e) basis,
//     U = 1/sqrt(2) [[ 1, 1],
//                    [-1, 1]]
// This sends [[1/2, c], [c*, 1/2]] to [[1/2 + Re c, i Im c], [-i Im c, 1/2 - Re c]].
[[nodiscard]] AtomDensity classical_pi_half(const AtomDensity& rho);
[[nodiscard]] Eigen::Matrix2cd classical_pi_half_unitary();

// Fits a + b cos(phi) + c sin(phi) by least squares and returns sqrt(b^2+c^2)/a,
// i.e. (max - min)/(max + min) of the fitted sinusoid.
// Needs >= 8 samples covering a full period; throws DegeneratePattern when
// max + min of the samples is below 1e-12.
[[nodiscard]] double visibility_from_pattern(std::span<const FringeSample> samples);

// Uniform grid of `points` phases on [0, 2 pi).
[[nodiscard]] std::vector<double> uniform_phi_grid(int points);

[[nodiscard]] FringePattern fringe_scan_setup1(cplx alpha, const JCParams& params,
                                               const TruncationConfig& trunc,
                                               std::span<const double> phi_grid);

[[nodiscard]] double apply_detection(double v, const DetectionModel& model);

struct Setup1Point {
    double mean_photons{0.0};
    double pulse_time{0.0}; // solved pi/2 time
    cplx coherence{0.0};    // <alpha_e|alpha_g>
    double n_plus{0.0};
    double n_minus{0.0};
    double visibility{0.0}; // 2 |<alpha_e|alpha_g>|
};

// Solves the pi/2 time for |alpha|^2 = mean_photons (alpha real) and returns
// the which-path quantities at that time.
[[nodiscard]] Setup1Point setup1_point(double mean_photons, const JCParams& params,
                                       const TruncationConfig& trunc);

} // namespace ramsey
