// pbg.hpp: Excited-state amplitude G(t) of an atom near the edge of an
// isotropic photonic band gap, and the entropies of the amplitude-damped singlet.
//
//   A+-  = [1/2 +- 1/2 (1 + (4/27) d^3/b^3)^(1/2)]^(1/3)
//   x1   = (A+ + A-) e^{i pi/4}
//   x2   = (A+ e^{-i pi/6} - A- e^{i pi/6}) e^{-i pi/4}
//   x3   = (A+ e^{i pi/6} - A- e^{-i pi/6}) e^{i 3pi/4}
//   v_j  = x_j / ((x_j - x_i)(x_j - x_k)),   y_j = sqrt(x_j^2)
//
//   G(t) = e^{i d t} [ 2 v1 x1 e^{b x1^2 t} + v2 (x2 + y2) e^{b x2^2 t}
//                      - sum_j a_j y_j e^{z_j^2} erfc(z_j) ],  z_j = sqrt(b x_j^2 t)
//
// with a_j = v_j. All fractional powers use the principal branch; the choice
// is validated by requiring G(0) = 1 when a model is constructed.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

#include "nmwork/errors.hpp"
#include "nmwork/linalg.hpp"
#include "nmwork/specfun.hpp"

namespace nmwork {

struct PBGParams {
    double beta = 1.0;
    double detuning = -1.0;

    void validate() const {
        if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("PBGParams: beta must be positive");
        if (!std::isfinite(detuning)) throw std::invalid_argument("PBGParams: detuning must be finite");
    }
};

struct PBGCoefficients {
    Complex A_plus;
    Complex A_minus;
    std::array<Complex, 3> x;
    std::array<Complex, 3> v;
    std::array<Complex, 3> y;

    PBGCoefficients conjugated() const {
        PBGCoefficients c = *this;
        c.A_plus = std::conj(A_plus);
        c.A_minus = std::conj(A_minus);
        for (std::size_t j = 0; j < 3; ++j) {
            c.x[j] = std::conj(x[j]);
            c.v[j] = std::conj(v[j]);
            c.y[j] = std::conj(y[j]);
        }
        return c;
    }
};

namespace detail {

// Principal n-th root; a zero imaginary part is read as +0 so negative reals
// land at arg = +pi.
inline Complex principal_root(Complex z, int n) {
    if (z == Complex{}) return {};
    const double arg = std::atan2(z.imag() == 0.0 ? 0.0 : z.imag(), z.real());
    return std::polar(std::pow(std::abs(z), 1.0 / n), arg / n);
}

inline Complex phase(double angle) { return std::polar(1.0, angle); }

} // namespace detail

inline PBGCoefficients pbg_coefficients(const PBGParams& params) {
    using detail::phase;
    using detail::principal_root;
    params.validate();
    constexpr double pi = std::numbers::pi;

    const double ratio = params.detuning / params.beta;
    const Complex inner = principal_root(Complex{1.0 + (4.0 / 27.0) * ratio * ratio * ratio, 0.0}, 2);

    PBGCoefficients c;
    c.A_plus = principal_root(0.5 + 0.5 * inner, 3);
    c.A_minus = principal_root(0.5 - 0.5 * inner, 3);
    c.x[0] = (c.A_plus + c.A_minus) * phase(pi / 4);
    c.x[1] = (c.A_plus * phase(-pi / 6) - c.A_minus * phase(pi / 6)) * phase(-pi / 4);
    c.x[2] = (c.A_plus * phase(pi / 6) - c.A_minus * phase(-pi / 6)) * phase(3 * pi / 4);

    double scale = 0.0;
    for (const auto& xj : c.x) scale = std::max(scale, std::abs(xj));
    for (std::size_t j = 0; j < 3; ++j) {
        const Complex xi = c.x[(j + 1) % 3];
        const Complex xk = c.x[(j + 2) % 3];
        if (std::abs(c.x[j] - xi) <= 1e-6 * scale || std::abs(c.x[j] - xk) <= 1e-6 * scale)
            throw DegenerateParameters("pbg_coefficients: coincident roots for detuning " +
                                       std::to_string(params.detuning) + ", beta " + std::to_string(params.beta));
        c.v[j] = c.x[j] / ((c.x[j] - xi) * (c.x[j] - xk));
        c.y[j] = principal_root(c.x[j] * c.x[j], 2);
    }
    return c;
}

// Raw evaluation of the amplitude formula, no validation. `pole_weights` are
// the a_j multiplying the erfc terms; `phase_rate` is the detuning in the
// e^{i d t} factor.
inline Complex pbg_amplitude(const PBGCoefficients& c, const std::array<Complex, 3>& pole_weights, double beta,
                             double phase_rate, double t, const ErfConfig& erf = {}) {
    if (!(t >= 0.0)) throw std::invalid_argument("pbg_G: t must be >= 0");
    std::array<Complex, 3> exponent{};
    for (std::size_t j = 0; j < 3; ++j) exponent[j] = beta * c.x[j] * c.x[j] * t;

    Complex g = 2.0 * c.v[0] * c.x[0] * std::exp(exponent[0]) + c.v[1] * (c.x[1] + c.y[1]) * std::exp(exponent[1]);
    for (std::size_t j = 0; j < 3; ++j) {
        // (1 - erf z) e^{z^2} with z^2 = exponent; z on the principal branch.
        const Complex z = detail::principal_root(exponent[j], 2);
        g -= pole_weights[j] * c.y[j] * erfc_scaled(z, erf);
    }
    return g * std::polar(1.0, phase_rate * t);
}

// Validated G(t) evaluator. Construction checks |G(0) - 1| < 1e-6 and throws
// ModelViolation otherwise; every evaluation enforces |G| <= 1 + 1e-6.
class PBGModel {
public:
    static constexpr double normalization_tolerance = 1e-6;

    explicit PBGModel(const PBGParams& params, double pole_weight_scale = 1.0)
        : params_(params), coeffs_(pbg_coefficients(params)) {
        for (std::size_t j = 0; j < 3; ++j) pole_weights_[j] = pole_weight_scale * coeffs_.v[j];
        const Complex g0 = pbg_amplitude(coeffs_, pole_weights_, params_.beta, params_.detuning, 0.0);
        if (!(std::abs(g0 - 1.0) < normalization_tolerance))
            throw ModelViolation("pbg: G(0) = " + std::to_string(g0.real()) + (g0.imag() < 0 ? "" : "+") +
                                 std::to_string(g0.imag()) + "i, expected 1");
    }

    const PBGParams& params() const { return params_; }
    const PBGCoefficients& coefficients() const { return coeffs_; }

    Complex G(double t) const {
        const Complex g = pbg_amplitude(coeffs_, pole_weights_, params_.beta, params_.detuning, t);
        if (!std::isfinite(g.real()) || !std::isfinite(g.imag()) || std::abs(g) > 1.0 + normalization_tolerance)
            throw ModelViolation("pbg: |G(" + std::to_string(t) + ")| = " + std::to_string(std::abs(g)) +
                                 " exceeds 1");
        return g;
    }

private:
    PBGParams params_;
    PBGCoefficients coeffs_;
    std::array<Complex, 3> pole_weights_{};
};

inline Complex pbg_G(const PBGParams& params, double t) { return PBGModel(params).G(t); }

struct PBGEntropies {
    double H_S;
    double H_Q;
    double H_SQ;
};

// Closed-form entropies (bits) of the singlet after amplitude damping of the
// system with amplitude |G|.
inline PBGEntropies pbg_entropies(double g_abs) {
    if (!(g_abs >= -1e-12 && g_abs <= 1.0 + 1e-12))
        throw std::invalid_argument("pbg_entropies: |G| must lie in [0, 1]");
    const double g2 = std::clamp(g_abs, 0.0, 1.0) * std::clamp(g_abs, 0.0, 1.0);
    return {entropy_term(0.5 * (2.0 - g2)) + entropy_term(0.5 * g2), 1.0,
            entropy_term(0.5 * (1.0 - g2)) + entropy_term(0.5 * (1.0 + g2))};
}

} // namespace nmwork
