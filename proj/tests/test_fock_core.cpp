#include "ramsey/errors.hpp"
#include "ramsey/fock_core.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace ramsey;

TEST(TruncationConfig, RejectsBadFields) {
    EXPECT_THROW((TruncationConfig{0, 1e-10}.validate()), DomainError);
    EXPECT_THROW((TruncationConfig{5, 0.0}.validate()), DomainError);
    EXPECT_THROW((TruncationConfig{5, 1.0}.validate()), DomainError);
    EXPECT_NO_THROW((TruncationConfig{1, 0.5}.validate()));
}

TEST(TruncationConfig, LargeMeanRaisesCutoff) {
    const TruncationConfig base{};
    EXPECT_EQ(truncation_for_coherent(20.0, base), base);
    const TruncationConfig big = truncation_for_coherent(50.0, base);
    EXPECT_GT(big.n_max, base.n_max);
    EXPECT_LT(poisson_tail(50.0, big.n_max), base.tail_tol);
    EXPECT_NO_THROW((void)coherent_state(cplx{std::sqrt(50.0), 0.0}, big));
}

TEST(CoherentState, ZeroAmplitudeIsVacuum) {
    const FieldVector v = coherent_state(0.0);
    EXPECT_DOUBLE_EQ(std::abs(v.amps(0)), 1.0);
    EXPECT_DOUBLE_EQ(v.amps.tail(v.amps.size() - 1).norm(), 0.0);
}

TEST(CoherentState, MeanPhotonNumber) {
    const FieldVector v = coherent_state(2.0, TruncationConfig{60, 1e-10});
    EXPECT_NEAR(mean_photon_number(v), 4.0, 1e-10);
}

TEST(CoherentState, TailMatchesIncompleteGamma) {
    const FieldVector v = coherent_state(2.0, TruncationConfig{40, 1e-10});
    EXPECT_LT(1.0 - v.norm2(), 1e-12);
    // P(X > n) for X ~ Poisson(mu) is the regularized lower gamma P(n+1, mu).
    for (double mu : {0.5, 4.0, 10.0}) {
        for (int n : {5, 15, 30}) {
            const double ref = boost::math::gamma_p(n + 1.0, mu);
            EXPECT_NEAR(poisson_tail(mu, n), ref, 1e-13 + 1e-9 * ref) << mu << " " << n;
        }
    }
}

TEST(CoherentState, ThrowsWhenTailTooLarge) {
    EXPECT_THROW((void)coherent_state(5.0, TruncationConfig{10, 1e-10}), TailTooLarge);
}

TEST(CoherentState, PhaseOfAlphaCarriesThrough) {
    const cplx alpha = std::polar(1.3, 0.4);
    const FieldVector v = coherent_state(alpha);
    EXPECT_NEAR(std::abs(v.amps(1) / v.amps(0) - alpha), 0.0, 1e-12);
}

TEST(ThermalDensity, ZeroOccupationIsVacuum) {
    const FieldDensity rho = thermal_density(0.0, TruncationConfig{10, 1e-10});
    EXPECT_DOUBLE_EQ(rho.mat(0, 0).real(), 1.0);
    EXPECT_DOUBLE_EQ(rho.mat.cwiseAbs().sum(), 1.0);
}

TEST(ThermalDensity, GroundPopulation) {
    const FieldDensity rho = thermal_density(0.7, TruncationConfig{20, 1e-8});
    EXPECT_NEAR(rho.mat(0, 0).real(), 1.0 / 1.7, 1e-8);
    EXPECT_THROW((void)thermal_density(0.7, TruncationConfig{20, 1e-10}), TailTooLarge);
}

TEST(ThermalDensity, MeanOccupation) {
    const FieldDensity rho = thermal_density(0.7, TruncationConfig{40, 1e-10});
    EXPECT_NEAR(mean_photon_number(rho), 0.7, 1e-6);
    const DensityDiagnostics d = diagnose(rho.mat);
    EXPECT_LT(d.trace_error, 1e-12);
    EXPECT_GE(d.min_eigenvalue, 0.0);
}

TEST(Tensor, ExcitedVacuumHasSingleAmplitude) {
    const JointVector psi = tensor(ket(Level::e), coherent_state(0.0, TruncationConfig{5, 1e-10}));
    EXPECT_EQ(psi.n_max(), 5);
    EXPECT_DOUBLE_EQ(std::abs(psi.at(Level::e, 0)), 1.0);
    EXPECT_DOUBLE_EQ(psi.amps.norm(), 1.0);
    EXPECT_EQ(psi.index(Level::e, 0), 6);
}

TEST(Tensor, GroundTimesVacuumIsJointGround) {
    const JointVector psi = tensor(ket(Level::g), coherent_state(0.0, TruncationConfig{3, 1e-10}));
    EXPECT_EQ(psi.amps, JointVector::basis(Level::g, 0, 3).amps);
}

TEST(Tensor, DensityProductMatchesVectorProduct) {
    const TruncationConfig t{12, 1e-10};
    const AtomVector a = (ket(Level::g) + cplx{0, 1} * ket(Level::e)) / std::sqrt(2.0);
    const FieldVector f = coherent_state(0.8, t);
    AtomDensity ra;
    ra.mat = a * a.adjoint();
    FieldDensity rf;
    rf.mat = f.amps * f.amps.adjoint();
    EXPECT_LT((tensor(ra, rf).mat - projector(tensor(a, f)).mat).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PartialTrace, ProductState) {
    const TruncationConfig t{8, 1e-10};
    AtomDensity ra;
    ra.mat << 0.3, cplx(0.1, 0.2), cplx(0.1, -0.2), 0.7;
    const FieldDensity rf = thermal_density(0.2, TruncationConfig{8, 1e-4});
    const JointDensity rho = tensor(ra, rf);
    EXPECT_LT((partial_trace_field(rho).mat - ra.mat).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((partial_trace_atom(rho).mat - rf.mat).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(PartialTrace, EntangledDoubletGivesMaximallyMixedAtom) {
    JointVector psi = JointVector::zero(3);
    psi.at(Level::e, 0) = 1.0 / std::sqrt(2.0);
    psi.at(Level::g, 1) = std::polar(1.0 / std::sqrt(2.0), 0.9);
    const AtomDensity ra = partial_trace_field(projector(psi));
    EXPECT_LT((ra.mat - 0.5 * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PartialTrace, BranchStatesGiveOverlapCoherence) {
    // |e>|a_e> + |g>|a_g> reduces to [[<a_g|a_g>, <a_e|a_g>], [c.c., <a_e|a_e>]].
    const TruncationConfig t{30, 1e-10};
    const FieldVector ae{coherent_state(1.0, t).amps * std::sqrt(0.5)};
    const FieldVector ag{coherent_state(cplx{0.7, 0.5}, t).amps * std::sqrt(0.5)};
    JointVector psi = JointVector::zero(t.n_max);
    for (int n = 0; n <= t.n_max; ++n) {
        psi.at(Level::e, n) = ae.amps(n);
        psi.at(Level::g, n) = ag.amps(n);
    }
    const AtomDensity ra = partial_trace_field(projector(psi));
    EXPECT_NEAR(ra.p_g(), 0.5, 1e-12);
    EXPECT_NEAR(ra.p_e(), 0.5, 1e-12);
    EXPECT_LT(std::abs(ra.mat(0, 1) - overlap(ae, ag)), 1e-14);
    EXPECT_LT(std::abs(ra.mat(1, 0) - std::conj(overlap(ae, ag))), 1e-14);
}

TEST(Diagnostics, FlagsUnphysicalMatrix) {
    Eigen::MatrixXcd m(2, 2);
    m << 1.2, 0.0, 0.0, -0.2;
    const DensityDiagnostics d = diagnose(m);
    EXPECT_NEAR(d.min_eigenvalue, -0.2, 1e-14);
    EXPECT_NEAR(d.trace_error, 0.0, 1e-14);
    m(0, 1) = 0.1;
    EXPECT_NEAR(diagnose(m).hermiticity_residual, 0.1, 1e-14);
}

TEST(CoherentStateProperty, RandomAmplitudesNormalizedWithRightMean) {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> mag(0.0, 5.0), ph(0.0, 6.283185307179586);
    for (int i = 0; i < 50; ++i) {
        const cplx alpha = std::polar(mag(rng), ph(rng));
        const FieldVector v = coherent_state(alpha);
        EXPECT_NEAR(v.norm2(), 1.0, 1e-10);
        EXPECT_NEAR(mean_photon_number(v), std::norm(alpha), 1e-8);
    }
}
