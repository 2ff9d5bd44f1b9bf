#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "bloch/errors.hpp"
#include "bloch/quadrature.hpp"
#include "bloch/special.hpp"

namespace bloch {

/// Heat kernel of H = -d^2/dx^2 + omega^2 x^2 / 4 (mass 1/2, hbar 1), with
/// eigenvalues omega (l + 1/2). Reduces to the free kernel as omega -> 0.
inline double mehler_heat_kernel(double omega, double t, double x1, double x2) {
    if (t <= 0.0) throw NonPositiveTime("heat kernel requires t > 0");
    const double pi = std::numbers::pi;
    if (omega == 0.0) {
        double d = x1 - x2;
        return std::exp(-d * d / (4.0 * t)) / std::sqrt(4.0 * pi * t);
    }
    double s = std::sinh(omega * t);
    double half = std::sinh(0.5 * omega * t);
    // (x1^2 + x2^2) cosh - 2 x1 x2 rewritten to avoid cancellation at small t.
    double quad = (x1 - x2) * (x1 - x2) + 2.0 * (x1 * x1 + x2 * x2) * half * half;
    return std::sqrt(omega / (4.0 * pi * s)) * std::exp(-(omega / (4.0 * s)) * quad);
}

/// Normalized eigenfunction phi_l of the same oscillator:
/// phi_l(x) = (omega/2 pi)^{1/4} (2^l l!)^{-1/2} H_l(sqrt(omega/2) x)
///            e^{-omega x^2/4}, evaluated by the stable normalized recurrence.
inline std::vector<double> oscillator_eigenfunctions(double omega, double x, int l_max) {
    const double w = 0.5 * omega;
    const double xi = std::sqrt(w) * x;
    std::vector<double> phi(l_max + 1);
    double h_prev = 0.0;
    double h_cur = std::pow(w / std::numbers::pi, 0.25) * std::exp(-0.5 * xi * xi);
    phi[0] = h_cur;
    for (int l = 0; l < l_max; ++l) {
        double h_next = std::sqrt(2.0 / (l + 1.0)) * xi * h_cur -
                        std::sqrt(double(l) / (l + 1.0)) * h_prev;
        h_prev = h_cur;
        h_cur = h_next;
        phi[l + 1] = h_cur;
    }
    return phi;
}

/// Truncated eigenfunction expansion of the heat kernel, used as an oracle.
inline double oscillator_heat_eigen_sum(double omega, double t, double x1, double x2,
                                        int l_max) {
    if (t <= 0.0) throw NonPositiveTime("heat kernel requires t > 0");
    std::vector<double> p1 = oscillator_eigenfunctions(omega, x1, l_max);
    std::vector<double> p2 = oscillator_eigenfunctions(omega, x2, l_max);
    double s = 0.0;
    for (int l = l_max; l >= 0; --l) s += std::exp(-t * omega * (l + 0.5)) * p1[l] * p2[l];
    return s;
}

enum class HoGreenMethod { Laplace, Pcf, Eigen };

/// Green function of the oscillator, Laplace-transform route:
/// G_z(x1, x2) = Int_0^inf e^{z t} p(t; x1, x2) dt for Re z < 0,
/// substituted t = u^2 to tame the short-time 1/sqrt(t) spike.
inline Complex ho_green_laplace(Complex z, double omega, double x1, double x2) {
    if (z.real() >= 0.0) throw InvalidSpectralParameter("laplace route requires Re z < 0");
    double rate = -z.real() + 0.5 * omega;
    double t_max = 50.0 / rate;
    double u_max = std::sqrt(t_max);
    auto integrand = [&](double u) -> Complex {
        // 2 u p(u^2; x1, x2) -> 1/sqrt(pi) on the diagonal as u -> 0.
        if (u <= 0.0) return x1 == x2 ? 1.0 / std::sqrt(std::numbers::pi) : 0.0;
        double t = u * u;
        return 2.0 * u * std::exp(z * t) * mehler_heat_kernel(omega, t, x1, x2);
    };
    // Geometric panels: for well-separated arguments the integrand is a
    // narrow short-time peak that a single top-level Simpson pass can skip.
    Complex total = 0.0;
    double lo = 0.0, hi = std::min(1e-4, 0.5 * u_max);
    while (lo < u_max) {
        total += adaptive_simpson(integrand, lo, hi, 1e-14, 48);
        lo = hi;
        hi = std::min(2.0 * hi, u_max);
    }
    return total;
}

/// Closed form via parabolic cylinder functions,
/// G_z = Gamma(1/2 - z/omega) D_nu(sqrt(omega) x_>) D_nu(-sqrt(omega) x_<)
///       / sqrt(2 pi omega), nu = -1/2 + z/omega.
inline Complex ho_green_pcf(Complex z, double omega, double x1, double x2) {
    Complex a = 0.5 - z / omega;
    // Gamma poles at 1/2 - z/omega = -n, i.e. z at the eigenvalues.
    double frac = a.real() - std::round(a.real());
    if (a.real() < 0.5 && std::abs(Complex(frac, a.imag())) < 1e-6)
        throw PoleProximity("z is too close to an oscillator eigenvalue");
    Complex nu = -0.5 + z / omega;
    double hi = std::max(x1, x2), lo = std::min(x1, x2);
    double sw = std::sqrt(omega);
    return gamma_fn(a) * parabolic_cylinder_d(nu, sw * hi) *
           parabolic_cylinder_d(nu, -sw * lo) / std::sqrt(2.0 * std::numbers::pi * omega);
}

/// Eigenfunction-expansion route, cheap enough for use inside lattice sums.
inline Complex ho_green_eigen(Complex z, double omega, double x1, double x2) {
    int l_max = static_cast<int>(0.75 * omega * (x1 * x1 + x2 * x2)) + 160;
    std::vector<double> p1 = oscillator_eigenfunctions(omega, x1, l_max);
    std::vector<double> p2 = oscillator_eigenfunctions(omega, x2, l_max);
    Complex s = 0.0;
    for (int l = l_max; l >= 0; --l) s += p1[l] * p2[l] / (omega * (l + 0.5) - z);
    return s;
}

inline Complex ho_green(Complex z, double omega, double x1, double x2,
                        HoGreenMethod method = HoGreenMethod::Laplace) {
    switch (method) {
        case HoGreenMethod::Laplace:
            return ho_green_laplace(z, omega, x1, x2);
        case HoGreenMethod::Pcf:
            return ho_green_pcf(z, omega, x1, x2);
        case HoGreenMethod::Eigen:
            return ho_green_eigen(z, omega, x1, x2);
    }
    throw ConfigInvalid("unknown oscillator Green method");
}

}  // namespace bloch
