#include "ramsey/errors.hpp"
#include "ramsey/jaynes_cummings.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace ramsey;
using std::numbers::pi;

namespace {
const cplx I{0.0, 1.0};
}

TEST(JCParams, RejectsNonPositiveCoupling) {
    EXPECT_THROW((JCParams{0.0}.validate()), DomainError);
    EXPECT_THROW((JCParams{-1.0}.validate()), DomainError);
}

TEST(JcEvolve, VacuumQuarterPeriodSplitsExcitation) {
    const JointVector out = jc_evolve(JointVector::basis(Level::e, 0, 4), pi / 4.0);
    EXPECT_NEAR(std::abs(out.at(Level::e, 0) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out.at(Level::g, 1) + I / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(out.amps.norm(), 1.0, 1e-15);
}

TEST(JcEvolve, CouplingScalesTime) {
    const JointVector a = jc_evolve(JointVector::basis(Level::e, 2, 6), 0.3, JCParams{2.0});
    const JointVector b = jc_evolve(JointVector::basis(Level::e, 2, 6), 0.6, JCParams{1.0});
    EXPECT_LT((a.amps - b.amps).norm(), 1e-14);
}

TEST(JcEvolve, ZeroDurationIsIdentity) {
    std::mt19937 rng(7);
    std::normal_distribution<double> nd;
    JointVector psi = JointVector::zero(6);
    for (int n = 0; n < 6; ++n) {
        psi.at(Level::g, n) = cplx{nd(rng), nd(rng)};
        psi.at(Level::e, n) = cplx{nd(rng), nd(rng)};
    }
    psi.amps.normalize();
    EXPECT_LT((jc_evolve(psi, 0.0).amps - psi.amps).norm(), 1e-15);
}

TEST(JcEvolve, GroundVacuumIsDark) {
    for (double t : {0.1, 1.0, 17.3}) {
        const JointVector out = jc_evolve(JointVector::basis(Level::g, 0, 3), t);
        EXPECT_LT((out.amps - JointVector::basis(Level::g, 0, 3).amps).norm(), 1e-15);
    }
}

TEST(JcEvolve, DoubletRotationFrequency) {
    const int n = 3;
    const double t = 0.37;
    const JointVector out = jc_evolve(JointVector::basis(Level::e, n, 8), t);
    const double w = std::sqrt(n + 1.0) * t;
    EXPECT_NEAR(std::abs(out.at(Level::e, n) - std::cos(w)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(out.at(Level::g, n + 1) + I * std::sin(w)), 0.0, 1e-14);
    const JointVector back = jc_evolve(JointVector::basis(Level::g, n + 1, 8), t);
    EXPECT_NEAR(std::abs(back.at(Level::e, n) + I * std::sin(w)), 0.0, 1e-14);
}

TEST(JcEvolve, RefusesTopLevelPopulation) {
    EXPECT_THROW((void)jc_evolve(JointVector::basis(Level::e, 4, 4), 0.5), TruncationLeak);
    JointDensity rho = projector(JointVector::basis(Level::e, 4, 4));
    EXPECT_THROW((void)jc_evolve(rho, 0.5), TruncationLeak);
}

TEST(JcEvolve, DensityMatchesVector) {
    JointVector psi = JointVector::zero(5);
    psi.at(Level::e, 1) = 0.6;
    psi.at(Level::g, 0) = cplx{0.0, 0.8};
    const JointVector v = jc_evolve(psi, 1.1);
    const JointDensity r = jc_evolve(projector(psi), 1.1);
    EXPECT_LT((r.mat - projector(v).mat).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(JcUnitary, UnitaryAndSemigroup) {
    const int n_max = 7;
    const Eigen::MatrixXcd u = jc_unitary(n_max, 0.8);
    const auto id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    EXPECT_LT((u * u.adjoint() - id).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((jc_unitary(n_max, 0.3) * jc_unitary(n_max, 0.5) - u).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(BranchStates, VacuumQuarterPeriod) {
    const BranchStates b = branch_states(0.0, pi / 4.0, JCParams{}, TruncationConfig{4, 1e-10});
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(5), g = Eigen::VectorXcd::Zero(5);
    e(0) = 1.0 / std::sqrt(2.0);
    g(1) = -I / std::sqrt(2.0);
    EXPECT_LT((b.excited.amps - e).norm(), 1e-15);
    EXPECT_LT((b.ground.amps - g).norm(), 1e-15);
}

TEST(BranchStates, MatchesFullEvolution) {
    const TruncationConfig t{40, 1e-10};
    const cplx alpha{1.2, -0.4};
    const BranchStates b = branch_states(alpha, 0.9, JCParams{}, t);
    // Build |e>|alpha> in a space one level larger so the top doublet stays closed.
    const FieldVector f = coherent_state(alpha, t);
    JointVector psi = JointVector::zero(t.n_max + 1);
    for (int n = 0; n <= t.n_max; ++n) psi.at(Level::e, n) = f.amps(n);
    const JointVector out = jc_evolve(psi, 0.9);
    for (int n = 0; n <= t.n_max; ++n) {
        EXPECT_LT(std::abs(out.at(Level::e, n) - b.excited.amps(n)), 1e-14);
        EXPECT_LT(std::abs(out.at(Level::g, n) - b.ground.amps(n)), 1e-14);
    }
}

TEST(BranchStatesProperty, NormsSumToOne) {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> mag(0.0, 4.0), ph(0.0, 2 * pi), tt(0.0, 10.0);
    for (int i = 0; i < 100; ++i) {
        const BranchStates b = branch_states(std::polar(mag(rng), ph(rng)), tt(rng));
        EXPECT_NEAR(b.excited.norm2() + b.ground.norm2(), 1.0, 1e-10);
    }
}

TEST(SolvePiHalf, VacuumQuarterPeriod) {
    EXPECT_NEAR(solve_pi_half_time(0.0), pi / 4.0, 1e-12);
    EXPECT_NEAR(solve_pi_half_time(0.0, JCParams{2.0}), pi / 8.0, 1e-12);
}

TEST(SolvePiHalf, LargeFieldScaling) {
    const double t = solve_pi_half_time(std::sqrt(20.0));
    const double approx = pi / (4.0 * std::sqrt(20.0));
    EXPECT_LT(std::abs(t - approx) / approx, 0.05);
}

TEST(SolvePiHalf, ResidualsBelowTolerance) {
    for (double n : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
        const cplx alpha{std::sqrt(n), 0.0};
        const double t = solve_pi_half_time(alpha);
        const BranchStates b = branch_states(alpha, t);
        EXPECT_LT(std::abs(b.excited.norm2() - 0.5), 1e-9) << n;
        EXPECT_LT(std::abs(b.ground.norm2() - 0.5), 1e-9) << n;
    }
}

TEST(SolvePiHalf, MatchesIndependentBisection) {
    // Reference times from a 30-digit bisection of sum_n p_n cos^2(sqrt(n+1) t) = 1/2.
    EXPECT_NEAR(solve_pi_half_time(std::sqrt(0.5)), 0.659791727500022, 1e-11);
    EXPECT_NEAR(solve_pi_half_time(1.0), 0.573973588048208, 1e-11);
    EXPECT_NEAR(solve_pi_half_time(std::sqrt(10.0)), 0.23932599260268, 1e-11);
    EXPECT_NEAR(solve_pi_half_time(std::sqrt(20.0)), 0.172375388017337, 1e-11);
}

TEST(StarkPhase, IdentityCases) {
    JointVector psi = JointVector::zero(3);
    psi.at(Level::e, 0) = 0.6;
    psi.at(Level::g, 1) = 0.8;
    EXPECT_LT((stark_phase(psi, 0.0).amps - psi.amps).norm(), 1e-15);
    EXPECT_LT((stark_phase(psi, 2 * pi).amps - psi.amps).norm(), 1e-15);
}

TEST(StarkPhase, TurnsPulseOutputIntoPhasedDoublet) {
    const JointVector pulse = jc_evolve(JointVector::basis(Level::e, 0, 3), pi / 4.0);
    const double phi = 1.3;
    const JointVector out = stark_phase(pulse, phi);
    // (|e,0> + e^{i phi'} |g,1>)/sqrt(2) with phi' = phi - pi/2.
    EXPECT_NEAR(std::abs(out.at(Level::e, 0) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out.at(Level::g, 1) - std::polar(1.0 / std::sqrt(2.0), phi - pi / 2.0)), 0.0, 1e-15);
}

TEST(StarkPhase, DensityMatchesVector) {
    JointVector psi = JointVector::zero(3);
    psi.at(Level::e, 0) = 0.6;
    psi.at(Level::g, 1) = cplx{0.0, 0.8};
    EXPECT_LT((stark_phase(projector(psi), 0.4).mat - projector(stark_phase(psi, 0.4)).mat).cwiseAbs().maxCoeff(),
              1e-15);
}
