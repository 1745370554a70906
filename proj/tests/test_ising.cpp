#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nmwork/ising.hpp"
#include "nmwork/quadrature.hpp"

using namespace nmwork;

namespace {

// Echo built mode by mode from the 2x2 Bogoliubov-de Gennes blocks
// H_k(g) = 2J[(g - cos k) sz + sin k sx]: prepare the ground state at the
// bare field, evolve exactly under the shifted field, multiply overlaps.
double echo_by_mode_evolution(const IsingParams& p, double t) {
    double L = 1.0;
    for (int m = 1; m <= p.N / 2; ++m) {
        const double k = 2.0 * std::numbers::pi * m / p.N;
        auto block = [&](double g) {
            const double a = 2 * p.J * (g - std::cos(k)), b = 2 * p.J * std::sin(k);
            return Mat2{a, b, b, -a};
        };
        const Mat2 h0 = block(p.lambda_field);
        const Mat2 h1 = block(p.perturbed_field());
        // ground state of [[a, b], [b, -a]]: (b, -(a + e)) normalized
        const double a = h0(0, 0).real(), b = h0(0, 1).real(), e0 = std::hypot(a, b);
        std::array<Complex, 2> g{b, -(a + e0)};
        const double n = std::hypot(std::abs(g[0]), std::abs(g[1]));
        g[0] /= n;
        g[1] /= n;
        // exp(-i h1 t) = cos(e t) I - i sin(e t) h1 / e
        const double e1 = std::hypot(h1(0, 0).real(), h1(0, 1).real());
        const Mat2 u = Complex{std::cos(e1 * t)} * Mat2::identity() -
                       Complex{0.0, std::sin(e1 * t) / e1} * h1;
        Complex amp{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) amp += std::conj(g[i]) * u(i, j) * g[j];
        L *= std::norm(amp);
    }
    return L;
}

} // namespace

TEST(Ising, MatchesModeByModeEvolution) {
    for (double field : {0.0, 0.5, 0.9, 1.0, 1.8})
        for (double t : {0.1, 1.0, 3.7, 12.0}) {
            const IsingParams p{1.0, field, 0.1, 60};
            EXPECT_NEAR(loschmidt_echo(p, t), echo_by_mode_evolution(p, t), 1e-12) << field << " " << t;
        }
}

TEST(Ising, NegativeCouplingAndOtherJ) {
    const IsingParams p{0.7, 0.4, -0.3, 40};
    for (double t : {0.5, 2.0, 9.0}) EXPECT_NEAR(loschmidt_echo(p, t), echo_by_mode_evolution(p, t), 1e-12);
}

TEST(Ising, BoundsAndInitialValue) {
    const LoschmidtEcho echo({1.0, 0.9, 0.1, 4000});
    EXPECT_EQ(echo(0.0), 1.0);
    for (int i = 1; i <= 200; ++i) {
        const double l = echo(0.1 * i);
        EXPECT_GE(l, 0.0);
        EXPECT_LE(l, 1.0);
    }
}

TEST(Ising, NoCouplingNoDecay) {
    const LoschmidtEcho echo({1.0, 0.9, 0.0, 200});
    for (double t : {0.5, 5.0, 50.0}) {
        EXPECT_EQ(echo(t), 1.0);
        EXPECT_EQ(echo.decay_rate(t), 0.0);
    }
}

TEST(Ising, ShortTimeQuadraticDecay) {
    // 1 - L(t) ~ t^2 sum_k sin^2(2 beta_k) eps_k^2 as t -> 0
    const IsingParams p{1.0, 0.9, 0.1, 400};
    const auto bare = mode_spectrum(p, p.lambda_field);
    const auto dressed = mode_spectrum(p, p.perturbed_field());
    double coeff = 0.0;
    for (std::size_t i = 0; i < bare.size(); ++i) {
        const double s = std::sin(2 * (dressed[i].bogoliubov_angle - bare[i].bogoliubov_angle));
        coeff += s * s * dressed[i].energy * dressed[i].energy;
    }
    const double t = 1e-4;
    EXPECT_NEAR((1.0 - loschmidt_echo(p, t)) / (t * t), coeff, 1e-4 * coeff);
    // and gamma(t) ~ coeff t / 2
    EXPECT_NEAR(ising_decay_rate(p, 1e-2), 0.5 * coeff * 1e-2, 1e-3 * coeff * 1e-2);
}

TEST(Ising, RateIntegratesToLogEcho) {
    const LoschmidtEcho echo({1.0, 0.0, 0.1, 400});
    const double a = 0.5, b = 3.0;
    const double integral = adaptive_simpson([&](double t) { return echo.decay_rate(t); }, a, b, 1e-9);
    EXPECT_NEAR(integral, -0.25 * (echo.log_echo(b) - echo.log_echo(a)), 1e-6);
}

TEST(Ising, BogoliubovAngleRange) {
    for (double field : {0.0, 0.5, 1.0, 2.0})
        for (const auto& m : mode_spectrum({1.0, field, 0.1, 100}, field)) {
            EXPECT_GE(m.bogoliubov_angle, 0.0);
            EXPECT_LT(m.bogoliubov_angle, std::numbers::pi / 2);
        }
}

TEST(Ising, CoherentInfoFromEcho) {
    EXPECT_NEAR(coherent_info_from_echo(1.0), 1.0, 1e-15);
    EXPECT_NEAR(coherent_info_from_echo(0.0), 0.0, 1e-15);
    // L = 0.36: eigenvalues 0.2 and 0.8 -> 1 - h(0.2)
    EXPECT_NEAR(coherent_info_from_echo(0.36), 1.0 - 0.72192809488736235, 1e-14);
}

TEST(Ising, SnapshotIsDephasing) {
    const LoschmidtEcho echo({1.0, 1.8, 0.1, 4000});
    const auto s = ising_snapshot(echo, 4.0);
    EXPECT_NEAR(s.lambda[0], std::sqrt(echo(4.0)), 1e-12);
    EXPECT_NEAR(s.lambda[1], std::sqrt(echo(4.0)), 1e-12);
    EXPECT_NEAR(s.lambda[2], 1.0, 1e-15);
    EXPECT_NEAR(s.p[1], 0.0, 1e-15);
    EXPECT_NEAR(s.p[2], 0.0, 1e-15);
}

TEST(Ising, ParameterValidation) {
    EXPECT_THROW(LoschmidtEcho({1.0, 0.5, 0.1, 3}), std::invalid_argument);
    EXPECT_THROW(LoschmidtEcho({0.0, 0.5, 0.1, 4}), std::invalid_argument);
    EXPECT_THROW(LoschmidtEcho({1.0, -0.5, 0.1, 4}), std::invalid_argument);
    EXPECT_THROW(loschmidt_echo({1.0, 0.5, 0.1, 4}, -1.0), std::invalid_argument);
}
