#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nmwork/channels.hpp"
#include "nmwork/sampling.hpp"

using namespace nmwork;

TEST(Rates, ClosedFormIntegrals) {
    EXPECT_NEAR(RateFunction::constant(0.4).integral(3.0), 0.6, 1e-15);
    EXPECT_NEAR(RateFunction::tan_rate(2.0).integral(0.3), -0.5 * std::log(std::cos(0.6)), 1e-15);
    EXPECT_NEAR(RateFunction::tanh_rate(0.5).integral(4.0), -0.5 * std::log(std::cosh(2.0)), 1e-14);
}

TEST(Rates, QuadratureAgreesWithClosedForm) {
    for (double t : {0.1, 0.5, 0.7, 2.0}) {
        const auto tan = RateFunction::tan_rate(2.0, false);
        if (2.0 * t < std::numbers::pi / 2) {
            EXPECT_NEAR(tan.integral(t), RateFunction::tan_rate(2.0).integral(t), 1e-9) << t;
        }
        EXPECT_NEAR(RateFunction::tanh_rate(0.5, false).integral(t), RateFunction::tanh_rate(0.5).integral(t), 1e-9);
    }
}

TEST(Rates, TanSingularity) {
    const auto tan = RateFunction::tan_rate(2.0);
    EXPECT_THROW(tan(std::numbers::pi / 4), SingularityError);
    // attenuation passes smoothly through zero
    EXPECT_NEAR(tan.attenuation(std::numbers::pi / 4), 0.0, 1e-15);
    EXPECT_NEAR(tan.attenuation(1.0), std::cos(2.0), 1e-15);
}

TEST(Rates, TabulatedIsPiecewiseLinear) {
    const auto r = RateFunction::tabulated({0.0, 1.0, 3.0}, {0.0, 2.0, -2.0});
    EXPECT_NEAR(r(0.5), 1.0, 1e-15);
    EXPECT_NEAR(r(2.0), 0.0, 1e-15);
    EXPECT_NEAR(r(5.0), -2.0, 1e-15);
    EXPECT_NEAR(r.integral(3.0), 1.0, 1e-14); // 1 + 0
    EXPECT_THROW(RateFunction::tabulated({0.5, 1.0}, {0.0, 0.0}), std::invalid_argument);
}

TEST(Pauli, ConstantRatesGiveDepolarizingLimit) {
    // equal constant rates: all lambda = e^{-2 l t}, p -> 1/4 each
    const auto c = RateFunction::constant(1.0);
    const PauliRateSet rates{c, c, c};
    const auto s = pauli_snapshot(rates, 50.0);
    for (double p : s.p) EXPECT_NEAR(p, 0.25, 1e-12);
    const auto s1 = pauli_snapshot(rates, 0.3);
    EXPECT_NEAR(s1.lambda[0], std::exp(-0.6), 1e-15);
    EXPECT_NEAR(s1.p[0], 0.25 * (1 + 3 * std::exp(-0.6)), 1e-15);
}

TEST(Pauli, ProbabilitiesHandWorked) {
    // lambda = (0.5, 0.3, 0.1)
    const auto s = PauliSnapshot::from_eigenvalues(0.0, {0.5, 0.3, 0.1});
    EXPECT_NEAR(s.p[0], 0.475, 1e-15);
    EXPECT_NEAR(s.p[1], 0.275, 1e-15);
    EXPECT_NEAR(s.p[2], 0.175, 1e-15);
    EXPECT_NEAR(s.p[3], 0.075, 1e-15);
}

TEST(Pauli, BlochContraction) {
    // rho = (I + r.sigma)/2 -> components scaled by lambda_k
    const auto rates = PauliRateSet::tanh_scenario(1.0, 0.5);
    const auto snap = pauli_snapshot(rates, 0.8);
    const std::array<double, 3> r{0.3, -0.4, 0.5};
    Mat2 m = Mat2::identity();
    const auto sig = pauli::all();
    for (std::size_t k = 0; k < 3; ++k) m += Complex{r[k]} * sig[k + 1];
    m *= 0.5;
    const auto out = apply_pauli(snap, Qubit(m));
    for (std::size_t k = 0; k < 3; ++k) {
        const double got = (out.matrix() * sig[k + 1]).trace().real();
        EXPECT_NEAR(got, snap.lambda[k] * r[k], 1e-14);
    }
}

TEST(Pauli, FromEigenvaluesRoundTripsGamma) {
    const auto rates = PauliRateSet::tanh_scenario(1.0, 0.5);
    const auto s = pauli_snapshot(rates, 1.7);
    const auto back = PauliSnapshot::from_eigenvalues(1.7, s.lambda);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(back.Gamma[k], s.Gamma[k], 1e-12);
}

TEST(Pauli, KrausCompleteAndMatchesDirectApplication) {
    std::mt19937_64 rng(21);
    const auto rates = PauliRateSet::tan_scenario(0.1, 2.0);
    const auto snap = pauli_snapshot(rates, 0.5);
    const auto kraus = pauli_kraus(snap);
    EXPECT_LT(kraus_completeness_defect(kraus), 1e-14);
    const auto rho = random_density_matrix<2>(rng);
    Mat2 via_kraus;
    for (const auto& k : kraus) via_kraus += k * rho.matrix() * k.adjoint();
    EXPECT_LT(max_abs_diff(via_kraus, apply_pauli(snap, rho).matrix()), 1e-14);
}

TEST(Pauli, NonCPSnapshotRejected) {
    const auto s = PauliSnapshot::from_eigenvalues(0.0, {1.0, 1.0, -1.0});
    EXPECT_TRUE(s.cp_violation());
    EXPECT_THROW(pauli_kraus(s), ModelViolation);
    EXPECT_LT(herm_eigvals(pauli_choi(s))[0], -0.1);
}

TEST(Pauli, ChoiTraceAndPartialTrace) {
    const auto snap = pauli_snapshot(PauliRateSet::tanh_scenario(1.0, 0.5), 2.0);
    const Mat4 choi = pauli_choi(snap);
    EXPECT_NEAR(choi.trace().real(), 1.0, 1e-14);
    // eigenvalues of the Choi matrix are exactly the p_alpha
    auto ev = herm_eigvals(choi);
    auto p = snap.p;
    std::sort(p.begin(), p.end());
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(ev[i], p[i], 1e-12);
}

TEST(Divisibility, Fig2Scenarios) {
    const auto tan = PauliRateSet::tan_scenario(0.1, 2.0);
    // gamma_3 < -0.05 for omega t in (pi/2, pi) away from the ends
    auto f = divisibility_flags(tan, 1.2);
    EXPECT_FALSE(f.cp_divisible);
    EXPECT_FALSE(f.p_divisible);
    f = divisibility_flags(tan, 0.3);
    EXPECT_TRUE(f.cp_divisible && f.p_divisible);

    const auto tanh = PauliRateSet::tanh_scenario(1.0, 0.5);
    f = divisibility_flags(tanh, 3.0); // gamma_3 > -0.25 = -lambda/2 .. sums stay positive
    EXPECT_FALSE(f.cp_divisible);
    EXPECT_TRUE(f.p_divisible);
    EXPECT_FALSE(f.cp_violation);
}

TEST(AmplitudeDamping, Kraus) {
    const auto k = amplitude_damping_kraus(std::polar(0.6, 1.0));
    EXPECT_LT(kraus_completeness_defect(k.operators()), 1e-15);
    EXPECT_THROW(amplitude_damping_kraus(1.1), std::invalid_argument);
}

TEST(Subsystem, NoisyPartyMatters) {
    // amplitude damping on S: ground state population of S grows
    const auto k = amplitude_damping_kraus(0.5).operators();
    const auto rho = apply_to_subsystem(k, singlet(), Party::system);
    const auto s = partial_trace(rho, Party::system).matrix();
    EXPECT_NEAR(s(0, 0).real(), 0.5 + 0.5 * 0.75, 1e-14);
    EXPECT_NEAR(partial_trace(rho, Party::memory).matrix()(0, 0).real(), 0.5, 1e-14);
}

TEST(Subsystem, NonTracePreservingRejected) {
    const std::array<Mat2, 1> k{Mat2{1.0, 0.0, 0.0, 0.5}};
    EXPECT_THROW(apply_to_subsystem(k, singlet(), Party::memory), std::invalid_argument);
}
