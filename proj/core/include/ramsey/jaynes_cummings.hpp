// jaynes_cummings.hpp — Resonant Jaynes-Cummings dynamics in the rotating frame.
//
// Each doublet span{|e,n>, |g,n+1>} rotates at Omega_n = Omega * sqrt(n+1):
//     |e,n>   -> cos(Omega_n t)|e,n>   - i sin(Omega_n t)|g,n+1>
//     |g,n+1> -> cos(Omega_n t)|g,n+1> - i sin(Omega_n t)|e,n>
// and |g,0> is dark. Free-evolution phases exp(-i nu t) are dropped; they only
// translate fringes, and every fringe phase is an explicit parameter here.

#pragma once

#include "ramsey/fock_core.hpp"

#include <utility>

namespace ramsey {

struct JCParams {
    double omega{1.0}; // vacuum Rabi frequency, rad per time unit

    void validate() const;
};

// Unitary on the truncated joint space. |e, n_max> has no partner inside the
// space and is left untouched; jc_evolve refuses states that populate it.
[[nodiscard]] Eigen::MatrixXcd jc_unitary(int n_max, double duration, const JCParams& params = {});

// Throws TruncationLeak when |e, n_max> carries probability above leak_tol.
[[nodiscard]] JointVector jc_evolve(const JointVector& state, double duration,
                                    const JCParams& params = {}, double leak_tol = 1e-10);
[[nodiscard]] JointDensity jc_evolve(const JointDensity& state, double duration,
                                     const JCParams& params = {}, double leak_tol = 1e-10);

struct BranchStates {
    FieldVector excited; // |alpha_e>, unnormalized
    FieldVector ground;  // |alpha_g>, unnormalized
};

// Field states correlated with e and g after |e>|alpha> interacts for time t.
[[nodiscard]] BranchStates branch_states(cplx alpha, double t, const JCParams& params = {},
                                         const TruncationConfig& trunc = {});

// Smallest t > 0 with <alpha_e|alpha_e> = 1/2. Brackets the first sign change
// on a grid of step pi / (64 Omega sqrt(N+1)) and bisects to |residual| < 1e-13.
// Throws NoRootFound when no crossing occurs before Omega t = 4 pi.
[[nodiscard]] double solve_pi_half_time(cplx alpha, const JCParams& params = {},
                                        const TruncationConfig& trunc = {});

// Multiplies every |g, n> amplitude by exp(i phi).
[[nodiscard]] JointVector stark_phase(const JointVector& state, double phi);
[[nodiscard]] JointDensity stark_phase(const JointDensity& state, double phi);

} // namespace ramsey
