#pragma once

#include <cmath>
#include <functional>

#include "bloch/errors.hpp"
#include "bloch/linalg.hpp"

namespace bloch {

namespace detail {

template <class F>
Complex adaptive_simpson_step(const F& f, double a, double b, Complex fa, Complex fm, Complex fb,
                              Complex whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    Complex flm = f(lm), frm = f(rm);
    Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    Complex delta = left + right - whole;
    // Second condition: the estimate has hit the rounding-noise floor of the
    // local integral and further halving of tol cannot be satisfied.
    if (std::abs(delta) <= 15.0 * tol ||
        std::abs(delta) <= 1e-14 * (std::abs(left) + std::abs(right)))
        return left + right + delta / 15.0;
    if (depth <= 0) throw QuadratureNotConverged("adaptive refinement depth exhausted");
    return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature for complex-valued integrands on [a, b].
template <class F>
Complex adaptive_simpson(const F& f, double a, double b, double tol = 1e-12,
                         int max_depth = 48) {
    Complex fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Trapezoid rule on [a, b] with node doubling until two successive
/// refinements agree below tol.
template <class F>
Complex doubling_trapezoid(const F& f, double a, double b, double tol = 1e-10,
                           int start_nodes = 64, int max_nodes = (1 << 22)) {
    int n = start_nodes;
    double h = (b - a) / n;
    Complex sum = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) sum += f(a + i * h);
    Complex value = sum * h;
    int stable = 0;
    while (n < max_nodes) {
        // Add the midpoints of the current grid.
        for (int i = 0; i < n; ++i) sum += f(a + (i + 0.5) * h);
        n *= 2;
        h *= 0.5;
        Complex refined = sum * h;
        stable = std::abs(refined - value) < tol * (1.0 + std::abs(refined)) ? stable + 1 : 0;
        value = refined;
        if (stable >= 2) return value;
    }
    throw QuadratureNotConverged("trapezoid refinement did not stabilize");
}

}  // namespace bloch
