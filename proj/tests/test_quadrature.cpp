#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nmwork/quadrature.hpp"

using nmwork::adaptive_simpson;

TEST(Quadrature, Polynomial) {
    EXPECT_NEAR(adaptive_simpson([](double x) { return x * x * x - 2 * x; }, 0.0, 2.0), 0.0, 1e-12);
}

TEST(Quadrature, Oscillatory) {
    EXPECT_NEAR(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi), 2.0, 1e-10);
    EXPECT_NEAR(adaptive_simpson([](double x) { return std::cos(10 * x); }, 0.0, 3.0), std::sin(30.0) / 10, 1e-10);
}

TEST(Quadrature, TangentBelowPole) {
    // int_0^1 tan(x) dx = -ln cos 1
    EXPECT_NEAR(adaptive_simpson([](double x) { return std::tan(x); }, 0.0, 1.0), -std::log(std::cos(1.0)), 1e-10);
}

TEST(Quadrature, ReversedAndEmptyInterval) {
    EXPECT_NEAR(adaptive_simpson([](double x) { return x; }, 1.0, 0.0), -0.5, 1e-14);
    EXPECT_EQ(adaptive_simpson([](double x) { return x; }, 1.0, 1.0), 0.0);
}

TEST(Quadrature, NonFiniteIntegrandThrows) {
    EXPECT_ANY_THROW(adaptive_simpson([](double) { return std::nan(""); }, 0.0, 1.0));
}
