// quadrature.hpp: Adaptive Simpson integration

#pragma once

#include <cmath>
#include <stdexcept>

namespace nmwork {

namespace detail {

template <class F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (!std::isfinite(diff)) throw std::domain_error("adaptive_simpson: non-finite integrand");
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// int_a^b f(x) dx to absolute tolerance `tol` (Richardson-corrected Simpson
// with interval bisection).
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol = 1e-10, int max_depth = 48) {
    if (!(tol > 0.0)) throw std::invalid_argument("adaptive_simpson: tolerance must be positive");
    if (a == b) return 0.0;
    // Pre-split so a single coarse Simpson panel cannot hide structure.
    constexpr int panels = 8;
    double sum = 0.0;
    const double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * h;
        const double hi = (i + 1 == panels) ? b : lo + h;
        const double flo = f(lo);
        const double fhi = f(hi);
        const double fmid = f(0.5 * (lo + hi));
        const double panel = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        sum += detail::simpson_step(f, lo, hi, flo, fmid, fhi, panel, tol / panels, max_depth);
    }
    return sum;
}

} // namespace nmwork
