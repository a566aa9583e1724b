#include "ramsey/errors.hpp"
#include "ramsey/interferometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

using namespace ramsey;
using std::numbers::pi;

namespace {

BranchStates pi_half_branches(double n) {
    const TruncationConfig t = truncation_for_coherent(n);
    const cplx alpha{std::sqrt(n), 0.0};
    return branch_states(alpha, solve_pi_half_time(alpha, JCParams{}, t), JCParams{}, t);
}

std::vector<FringeSample> sample(const std::function<double(double)>& f, int n) {
    std::vector<FringeSample> s;
    for (double phi : uniform_phi_grid(n)) s.push_back({phi, f(phi)});
    return s;
}

} // namespace

TEST(PlusMinus, VacuumIsMaximallyEntangled) {
    const PlusMinus pm = plus_minus_decomposition(pi_half_branches(0.0).excited, pi_half_branches(0.0).ground);
    EXPECT_NEAR(pm.n_plus, 0.25, 1e-12);
    EXPECT_NEAR(pm.n_minus, 0.25, 1e-12);
}

TEST(PlusMinus, StrongFieldIsNearlyFactorized) {
    const BranchStates b = pi_half_branches(20.0);
    const PlusMinus pm = plus_minus_decomposition(b.excited, b.ground);
    EXPECT_LT(pm.n_minus / pm.n_plus, 0.1);
    EXPECT_NEAR(pm.n_plus + pm.n_minus, 0.5, 1e-10);
}

TEST(PlusMinus, IdenticalBranchesFactorize) {
    const FieldVector f{coherent_state(1.5).amps / std::sqrt(2.0)};
    const PlusMinus pm = plus_minus_decomposition(f, f);
    EXPECT_NEAR(pm.n_minus, 0.0, 1e-15);
    EXPECT_NEAR(pm.n_plus, 0.5, 1e-12);
    EXPECT_LT((pm.plus.amps - f.amps).norm(), 1e-15);
}

TEST(PlusMinus, ReconstructsBranches) {
    const BranchStates b = pi_half_branches(3.0);
    const PlusMinus pm = plus_minus_decomposition(b.excited, b.ground);
    EXPECT_LT((pm.plus.amps + pm.minus.amps - b.excited.amps).norm(), 1e-14);
    EXPECT_LT((std::polar(1.0, pm.theta) * (pm.plus.amps - pm.minus.amps) - b.ground.amps).norm(), 1e-14);
}

TEST(PlusMinusProperty, ParallelogramLaw) {
    for (double n : {0.0, 0.3, 1.0, 4.0, 9.0, 20.0}) {
        const BranchStates b = pi_half_branches(n);
        const PlusMinus pm = plus_minus_decomposition(b.excited, b.ground);
        EXPECT_NEAR(pm.n_plus + pm.n_minus, 0.5, 1e-10) << n;
    }
}

TEST(AtomicState, ZeroPhaseCoherenceIsOverlap) {
    const BranchStates b = pi_half_branches(2.0);
    const AtomDensity r = atomic_state_after_phase(b.excited, b.ground, 0.0);
    EXPECT_NEAR(r.p_g(), 0.5, 1e-15);
    EXPECT_NEAR(r.p_e(), 0.5, 1e-15);
    EXPECT_LT(std::abs(r.mat(0, 1) - overlap(b.excited, b.ground)), 1e-15);
}

TEST(AtomicState, VacuumHasNoCoherence) {
    const BranchStates b = pi_half_branches(0.0);
    const AtomDensity r = atomic_state_after_phase(b.excited, b.ground, 1.0);
    EXPECT_LT((r.mat - 0.5 * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(AtomicState, RejectsBrokenPiHalfCondition) {
    const BranchStates b = branch_states(1.0, 0.2);
    EXPECT_THROW((void)atomic_state_after_phase(b.excited, b.ground, 0.0), DomainError);
}

TEST(AtomicStateProperty, ValidDensity) {
    for (double n : {0.5, 3.0, 12.0}) {
        const BranchStates b = pi_half_branches(n);
        for (double phi : {0.0, 0.9, 2.5, 5.0}) {
            const AtomDensity r = atomic_state_after_phase(b.excited, b.ground, phi);
            EXPECT_NEAR(r.mat.trace().real(), 1.0, 1e-12);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(r.mat);
            EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
            EXPECT_LE(es.eigenvalues().maxCoeff(), 1.0 + 1e-12);
        }
    }
}

TEST(ClassicalPulse, DiagonalAfterPulse) {
    const cplx c = std::polar(0.3, 0.7);
    AtomDensity r;
    r.mat << 0.5, c, std::conj(c), 0.5;
    const AtomDensity out = classical_pi_half(r);
    EXPECT_NEAR(out.p_g(), 0.5 + c.real(), 1e-15);
    EXPECT_NEAR(out.p_e(), 0.5 - c.real(), 1e-15);
    EXPECT_NEAR(std::abs(out.mat(0, 1) - cplx{0.0, c.imag()}), 0.0, 1e-15);
}

TEST(ClassicalPulse, MixedStaysMixedAndPurityKept) {
    AtomDensity mixed;
    mixed.mat = 0.5 * Eigen::Matrix2cd::Identity();
    EXPECT_LT((classical_pi_half(mixed).mat - mixed.mat).cwiseAbs().maxCoeff(), 1e-15);
    const Eigen::Matrix2cd u = classical_pi_half_unitary();
    EXPECT_LT((u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 1e-15);
    AtomDensity r;
    r.mat << 0.7, cplx(0.1, 0.3), cplx(0.1, -0.3), 0.3;
    const AtomDensity out = classical_pi_half(r);
    EXPECT_NEAR((out.mat * out.mat).trace().real(), (r.mat * r.mat).trace().real(), 1e-12);
}

TEST(VisibilityFit, FullContrast) {
    const auto s = sample([](double p) { return 0.5 + 0.5 * std::cos(p); }, 16);
    EXPECT_NEAR(visibility_from_pattern(s), 1.0, 1e-14);
}

TEST(VisibilityFit, ConstantIsZero) {
    const auto s = sample([](double) { return 0.4; }, 16);
    EXPECT_NEAR(visibility_from_pattern(s), 0.0, 1e-14);
}

TEST(VisibilityFit, ShiftedSinusoidMatchesClosedForm) {
    // (3 - e^{-T})/4 + (e^{-T}/2) sin(phi): contrast is 2e^{-T}/(3 - e^{-T}).
    const double T = 0.008;
    const auto s = sample([T](double p) { return (3.0 - std::exp(-T)) / 4.0 + std::exp(-T) / 2.0 * std::sin(p); }, 32);
    EXPECT_NEAR(visibility_from_pattern(s), 2.0 * std::exp(-T) / (3.0 - std::exp(-T)), 1e-6);
}

TEST(VisibilityFit, RejectsBadPatterns) {
    EXPECT_THROW((void)visibility_from_pattern(sample([](double) { return 0.5; }, 4)), DomainError);
    EXPECT_THROW((void)visibility_from_pattern(sample([](double) { return 0.0; }, 16)), DegeneratePattern);
    std::vector<FringeSample> narrow;
    for (int i = 0; i < 16; ++i) narrow.push_back({0.1 * i, 0.5 + 0.1 * std::cos(0.1 * i)});
    EXPECT_THROW((void)visibility_from_pattern(narrow), DomainError);
}

TEST(FringeScan, VacuumIsFlat) {
    const FringePattern f = fringe_scan_setup1(0.0, JCParams{}, TruncationConfig{}, uniform_phi_grid(16));
    EXPECT_NEAR(f.visibility, 0.0, 1e-14);
    for (const FringeSample& s : f.samples) EXPECT_NEAR(s.p_g, 0.5, 1e-14);
}

TEST(FringeScan, VisibilityIsTwiceOverlap) {
    for (double n : {0.5, 1.0, 5.0, 20.0}) {
        const TruncationConfig t = truncation_for_coherent(n);
        const cplx alpha{std::sqrt(n), 0.0};
        const Setup1Point p = setup1_point(n, JCParams{}, t);
        const FringePattern f = fringe_scan_setup1(alpha, JCParams{}, t, uniform_phi_grid(24));
        EXPECT_NEAR(f.visibility, 2.0 * std::abs(p.coherence), 1e-10) << n;
        EXPECT_NEAR(p.visibility, 2.0 * std::abs(p.coherence), 1e-15);
    }
}

TEST(FringeScan, VisibilityGrowsWithPhotonNumber) {
    EXPECT_GT(setup1_point(10.0, JCParams{}, TruncationConfig{}).visibility,
              setup1_point(1.0, JCParams{}, TruncationConfig{}).visibility);
}

TEST(FringeScan, MatchesIndependentOverlapOracle) {
    // 2|<a_e|a_g>| at the pi/2 time, from a 30-digit reference computation.
    const std::pair<double, double> ref[] = {{0.5, 0.428914711094515}, {1.0, 0.571905195072744},
                                             {2.0, 0.715582094205249}, {5.0, 0.859416662666823},
                                             {10.0, 0.923954355091303}, {20.0, 0.960389693607348}};
    for (const auto& [n, v] : ref) {
        EXPECT_NEAR(setup1_point(n, JCParams{}, truncation_for_coherent(n)).visibility, v, 1e-10) << n;
    }
}

TEST(FringeScanProperty, GroundPhaseDoesNotChangeVisibility) {
    const BranchStates b = pi_half_branches(3.0);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ph(0.0, 2 * pi);
    auto vis = [](const FieldVector& e, const FieldVector& g) {
        std::vector<FringeSample> s;
        for (double phi : uniform_phi_grid(16)) {
            s.push_back({phi, classical_pi_half(atomic_state_after_phase(e, g, phi)).p_g()});
        }
        return visibility_from_pattern(s);
    };
    const double v0 = vis(b.excited, b.ground);
    for (int i = 0; i < 10; ++i) {
        const FieldVector g{std::polar(1.0, ph(rng)) * b.ground.amps};
        EXPECT_NEAR(vis(b.excited, g), v0, 1e-12);
    }
}

TEST(Detection, Scaling) {
    EXPECT_NEAR(apply_detection(0.988, DetectionModel{0.75}), 0.741, 5e-4);
    EXPECT_NEAR(apply_detection(0.983, DetectionModel{0.75}), 0.737, 5e-4);
    EXPECT_DOUBLE_EQ(apply_detection(0.42, DetectionModel{1.0}), 0.42);
    EXPECT_THROW((void)apply_detection(1.2, DetectionModel{}), DomainError);
    EXPECT_THROW((void)apply_detection(0.5, DetectionModel{1.5}), DomainError);
}

TEST(PhiGrid, UniformHalfOpen) {
    const auto g = uniform_phi_grid(8);
    ASSERT_EQ(g.size(), 8u);
    EXPECT_DOUBLE_EQ(g.front(), 0.0);
    EXPECT_NEAR(g.back(), 2 * pi * 7.0 / 8.0, 1e-15);
}
