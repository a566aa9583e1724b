// open_system.hpp — Cavity damping during the free wait between pulses.
//
// The field relaxes under the thermal-bath dissipator
//     D rho = k(nbar+1) {2 a rho a+ - a+a rho - rho a+a}
//           + k nbar    {2 a+ rho a - a a+ rho - rho a a+}
// with a and a+ the truncated ladder matrices, so the truncated generator is
// exactly trace preserving. The field Hamiltonian is dropped (rotating frame);
// it only translates fringes.
//
// The RK4 integrator here is the reference every closed form is checked
// against. Dimensionless time is T = k * tau.

#pragma once

#include "ramsey/fock_core.hpp"
#include "ramsey/interferometry.hpp"
#include "ramsey/jaynes_cummings.hpp"

#include <numbers>
#include <span>

namespace ramsey {

struct ReservoirParams {
    double k{1.0};    // damping constant 1/(2 T_cav)
    double nbar{0.0}; // bath mean occupation

    void validate() const;
};

struct StepControl {
    double tol{1e-10};               // max-norm gap between successive refinements
    double underflow_fraction{1e-15}; // smallest admissible step, relative to tau
};

struct WaitResult {
    JointDensity rho;
    double T{0.0};
};

inline constexpr double kVacuumPiHalf = std::numbers::pi / 4.0; // Omega * chi on vacuum

[[nodiscard]] FieldDensity dissipator_apply(const FieldDensity& rho, const ReservoirParams& params);
[[nodiscard]] JointDensity dissipator_apply(const JointDensity& rho, const ReservoirParams& params);

// Integrates d rho/dt = D rho over [0, tau] with classical RK4, doubling the
// step count until two successive refinements differ by < ctrl.tol.
// Throws StepUnderflow when the step would drop below underflow_fraction * tau.
[[nodiscard]] JointDensity evolve_master(const JointDensity& rho, double tau, const ReservoirParams& params,
                                         const StepControl& ctrl = {});
[[nodiscard]] WaitResult wait(const JointDensity& rho, double tau, const ReservoirParams& params,
                              const StepControl& ctrl = {});

// Pulse-1 output with relative phase phi,
//     |Psi> = (|e,0> + e^{i phi} |g,1>) / sqrt(2),
// after a zero-temperature wait of dimensionless length T, in closed form.
[[nodiscard]] JointDensity zero_temp_wait(double phi, double T, const TruncationConfig& trunc = {});

// Probability of detecting g after the second vacuum pi/2 pulse, zero
// temperature. phi is the Stark phase applied on top of the first pulse
// output (|e,0> - i|g,1>)/sqrt(2), so P_g(phi, 0) = cos^2(phi/2).
[[nodiscard]] double setup2_pg(double phi, double T, const JCParams& params = {});

// Simplified zero-temperature fringe formula:
//     1/4 - e^{-2T}/4 + e^{-T} sin(phi) / 2
// It goes negative at T = 0 and is kept for comparison only.
[[nodiscard]] double setup2_pg_simplified(double phi, double T);

// 2 e^{-T} / (3 - e^{-T}), closed-form zero-temperature visibility.
[[nodiscard]] double zero_temp_visibility_closed_form(double T);

// Full reference chain for the second setup at bath occupation nbar:
// |e,0> -> vacuum pi/2 pulse -> Stark phase phi -> master-equation wait of
// length T (k = 1) -> JC pulse of area omega_chi -> P_g.
struct OracleSettings {
    double omega_chi{kVacuumPiHalf};
    TruncationConfig trunc{};
    StepControl step{};
};

[[nodiscard]] double oracle_setup2_pg(double phi, double T, double nbar, const OracleSettings& settings = {});
[[nodiscard]] FringePattern oracle_setup2_fringe(double T, double nbar, std::span<const double> phi_grid,
                                                 const OracleSettings& settings = {});
[[nodiscard]] double oracle_setup2_visibility(double T, double nbar, int phi_points = 8,
                                              const OracleSettings& settings = {});

// Smallest n_max whose stationary thermal tail at nbar is below tail_tol
// (at least `floor`).
[[nodiscard]] TruncationConfig truncation_for_bath(double nbar, double tail_tol = 1e-10, int floor = 4);

} // namespace ramsey
