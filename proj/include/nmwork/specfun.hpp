// specfun.hpp: Complex error function for the band-gap amplitude
//
// Two evaluation routes, both carried out in long double:
//   * Maclaurin series  erf(z) = 2/sqrt(pi) sum (-1)^n z^(2n+1) / (n! (2n+1)),
//     used when |z| <= series_cutoff_radius or Re z <= 3 (after folding to
//     Re z >= 0). Cancellation there is bounded by e^16 or exp(2 Re(z)^2) <= e^18.
//   * Laplace continued fraction for the scaled complement
//     e^(z^2) erfc(z) = (1/sqrt(pi)) / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))),
//     used otherwise, where it converges quickly. The scaled complement always
//     takes this route for Re z > 3 since the series would lose exp(2 Re(z)^2).

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "nmwork/linalg.hpp"

namespace nmwork {

struct ErfConfig {
    double series_cutoff_radius = 4.0;
    double target_relative_error = 1e-12;

    void validate() const {
        if (!(series_cutoff_radius > 0.0))
            throw std::invalid_argument("ErfConfig: series cutoff must be positive");
        if (!(target_relative_error > 0.0 && target_relative_error <= 1e-6))
            throw std::invalid_argument("ErfConfig: target error must lie in (0, 1e-6]");
    }
};

namespace detail {

using LComplex = std::complex<long double>;

inline constexpr long double two_over_sqrt_pi = 1.128379167095512573896158903121545172L;
inline constexpr long double inv_sqrt_pi = 0.564189583547756286948079451560772586L;
inline constexpr double erf_max_modulus = 50.0;
// Re z above which the continued fraction replaces the series.
inline constexpr double erf_cf_real_part = 3.0;

inline void check_erf_domain(Complex z, const char* who) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::out_of_range(std::string(who) + ": non-finite argument");
    if (std::abs(z) > erf_max_modulus) throw std::out_of_range(std::string(who) + ": |z| > 50");
}

inline LComplex erf_series(LComplex z, const ErfConfig& cfg) {
    const LComplex z2 = z * z;
    const long double r2 = std::norm(z);
    LComplex power = z; // (-1)^n z^(2n+1) / n!
    LComplex sum = z;
    const long double tol = 1e-3L * static_cast<long double>(cfg.target_relative_error);
    for (int n = 1; n < 20000; ++n) {
        power *= -z2 / static_cast<long double>(n);
        const LComplex term = power / static_cast<long double>(2 * n + 1);
        sum += term;
        // Past the peak term (n > |z|^2) the terms shrink geometrically.
        if (n > r2 && std::abs(term) <= tol * std::abs(sum)) break;
    }
    return two_over_sqrt_pi * sum;
}

// (1/sqrt(pi)) / (z + (1/2)/(z + 1/(z + ...))) by modified Lentz; Re z > 0.
inline LComplex erfc_scaled_cf(LComplex z, const ErfConfig& cfg) {
    constexpr long double tiny = 1e-300L;
    const long double tol = 1e-3L * static_cast<long double>(cfg.target_relative_error);
    LComplex f = z;
    LComplex c = f;
    LComplex d = 0.0L;
    for (int n = 1; n < 100000; ++n) {
        const long double a = 0.5L * n;
        d = z + a * d;
        if (std::abs(d) < tiny) d = tiny;
        c = z + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0L / d;
        const LComplex delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0L) <= tol) break;
    }
    return inv_sqrt_pi / f;
}

inline Complex to_double(LComplex v, const char* who) {
    const Complex out{static_cast<double>(v.real()), static_cast<double>(v.imag())};
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag()))
        throw std::out_of_range(std::string(who) + ": result overflows double");
    return out;
}

} // namespace detail

// erf(z) = (2/sqrt(pi)) int_0^z exp(-s^2) ds. Throws std::out_of_range for
// |z| > 50 or when the value itself is not representable.
inline Complex erf_complex(Complex z, const ErfConfig& cfg = {}) {
    using namespace detail;
    check_erf_domain(z, "erf_complex");
    cfg.validate();
    if (z.real() < 0.0) return -erf_complex(-z, cfg);

    const LComplex lz{z.real(), z.imag()};
    if (std::abs(z) <= cfg.series_cutoff_radius || z.real() <= erf_cf_real_part)
        return to_double(erf_series(lz, cfg), "erf_complex");
    // erf = 1 - e^(-z^2) * scaled complement
    return to_double(1.0L - std::exp(-lz * lz) * erfc_scaled_cf(lz, cfg), "erf_complex");
}

// e^(z^2) erfc(z) = e^(z^2) [1 - erf(z)] for Re z >= 0, evaluated without
// forming the overflowing/underflowing factors separately when Re z is large.
inline Complex erfc_scaled(Complex z, const ErfConfig& cfg = {}) {
    using namespace detail;
    check_erf_domain(z, "erfc_scaled");
    cfg.validate();
    if (z.real() < 0.0) throw std::domain_error("erfc_scaled: requires Re z >= 0");

    const LComplex lz{z.real(), z.imag()};
    if (z.real() > erf_cf_real_part) return to_double(erfc_scaled_cf(lz, cfg), "erfc_scaled");
    return to_double(std::exp(lz * lz) * (1.0L - erf_series(lz, cfg)), "erfc_scaled");
}

} // namespace nmwork
