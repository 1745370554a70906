#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nmwork/sampling.hpp"
#include "nmwork/thermo.hpp"

using namespace nmwork;

TEST(Thermo, SingletAnchors) {
    const auto e = entropic_profile(singlet());
    EXPECT_NEAR(e.H_SQ, 0.0, 1e-12);
    EXPECT_NEAR(e.coherent_info, 1.0, 1e-12);
    EXPECT_NEAR(e.mutual_info, 2.0, 1e-12);
    EXPECT_NEAR(work_memory_scenario(singlet()), 2.0, 1e-12);
    EXPECT_NEAR(work_system_scenario(singlet()), 2.0, 1e-12);
}

TEST(Thermo, MaximallyMixedGivesZeroWork) {
    EXPECT_NEAR(work_memory_scenario(TwoQubit::maximally_mixed()), 0.0, 1e-12);
}

TEST(Thermo, ProductStateWorkIsOneMinusEntropy) {
    // rho_S (x) |0><0|: no correlations, W = 1 - H(S)
    const Qubit s(Mat2::diagonal({0.1, 0.9}));
    const Qubit q(Mat2::diagonal({1.0, 0.0}));
    const TwoQubit rho(tensor(s, q));
    EXPECT_NEAR(work_memory_scenario(rho), 1.0 - 0.46899559358928122, 1e-12);
}

TEST(Thermo, ScenarioFormulasAgreeOnRandomStates) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        const auto rho = random_density_matrix<4>(rng);
        EXPECT_NEAR(work_memory_scenario(rho), work_system_scenario(rho), 1e-12);
        const double w = work_memory_scenario(rho);
        EXPECT_GE(w, -1e-12);
        EXPECT_LE(w, 2.0 + 1e-12);
    }
}

TEST(Thermo, OnlyOneQubitSupported) {
    EXPECT_THROW(work_memory_scenario(singlet(), 2), Unsupported);
    EXPECT_THROW(work_system_scenario(singlet(), 0), Unsupported);
}

TEST(Thermo, AnalyticPauliCoherentInfo) {
    // depolarized singlet with p = (0.7, 0.1, 0.1, 0.1): Bell-diagonal state
    const std::array<double, 4> p{0.7, 0.1, 0.1, 0.1};
    const double expected = 1.0 + 0.7 * std::log2(0.7) + 3 * 0.1 * std::log2(0.1);
    EXPECT_NEAR(pauli_coherent_info_analytic(p), expected, 1e-15);
    EXPECT_THROW(pauli_coherent_info_analytic({0.5, 0.5, 0.5, -0.5}), std::invalid_argument);
    EXPECT_THROW(pauli_coherent_info_analytic({0.5, 0.1, 0.1, 0.1}), std::invalid_argument);
}

TEST(Thermo, JouleConversion) {
    // 1 bit at 300 K
    EXPECT_NEAR(work_in_joules(1.0, 300.0), 2.87106e-21, 1e-25);
}

TEST(Thermo, WorkChangeDecomposition) {
    auto pt = [](double t, double hs, double mi, double w) {
        WorkPoint p;
        p.t = t;
        p.H_S = hs;
        p.mutual_info = mi;
        p.w_ex = w;
        return p;
    };
    const auto d = delta_work(pt(0.0, 0.8, 1.0, 1.2), pt(1.0, 0.9, 1.3, 1.4));
    EXPECT_NEAR(d.delta_w_ex, 0.2, 1e-15);
    EXPECT_NEAR(d.minus_delta_H_S, -0.1, 1e-15);
    EXPECT_NEAR(d.delta_mutual, 0.3, 1e-15);
    EXPECT_THROW(delta_work(pt(1.0, 0, 0, 0), pt(0.0, 0, 0, 0)), std::invalid_argument);
}

TEST(Thermo, InvariantDefect) {
    WorkPoint p = WorkPoint::from_profile(0.0, entropic_profile(singlet()), 2.0);
    EXPECT_LT(p.invariant_defect(), 1e-12);
    p.mutual_info += 0.1;
    EXPECT_NEAR(p.invariant_defect(), 0.1, 1e-12);
    p.w_ex = std::nan("");
    EXPECT_TRUE(std::isinf(p.invariant_defect()));
}
