#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "bloch/errors.hpp"
#include "bloch/linalg.hpp"

namespace bloch {

/// Green function of the discrete Laplacian 2 f(n) - f(n-1) - f(n+1) on Z:
/// G_z(n, n') = r^{|n-n'|} / sqrt((2-z)^2 - 4) with the decaying root r of
/// r^2 - (2-z) r + 1 = 0.
inline Complex lattice_green_decay_rate(Complex z) {
    Complex b = 2.0 - z;
    Complex s = std::sqrt(b * b - 4.0);
    Complex r1 = (b - s) / 2.0, r2 = (b + s) / 2.0;
    return std::abs(r1) < std::abs(r2) ? r1 : r2;
}

inline Complex lattice_green_z(Complex z, long n, long np) {
    Complex r = lattice_green_decay_rate(z);
    Complex b = 2.0 - z;
    // 1/sqrt((2-z)^2-4) with the branch matching the chosen root: b - 2r = +sqrt.
    Complex denom = b - 2.0 * r;
    return std::pow(r, double(std::labs(n - np))) / denom;
}

inline Matrix cycle_laplacian(int n) {
    Matrix h = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = 2.0;
        h(i, (i + 1) % n) -= 1.0;
        h((i + 1) % n, i) -= 1.0;
    }
    return h;
}

struct AbelianReductionReport {
    int cycle_length = 0;
    Complex z;
    int truncation = 0;
    double max_deviation = 0.0;        // truncated sum vs direct cycle resolvent
    double truncation_estimate = 0.0;  // geometric tail bound
    double measured_l1_bound = 0.0;    // max column sum of |(H_cycle - z)^{-1}|
    double l1_bound_limit = 0.0;       // 1/|Re z|
    std::vector<std::pair<int, double>> convergence;  // (K, error) curve
};

/// Compare sum_{|k|<=K} G_Z(m + k n, m') against the n-cycle resolvent.
inline AbelianReductionReport abelian_reduction_green(int cycle_length, Complex z,
                                                      int truncation) {
    if (z.real() >= 0.0) throw InvalidSpectralParameter("requires Re z < 0");
    if (cycle_length < 3) throw InvalidSpectralParameter("cycle length must be >= 3");
    if (truncation < 1) throw InvalidSpectralParameter("truncation must be >= 1");

    const int n = cycle_length;
    Matrix resolvent =
        (cycle_laplacian(n) - z * Matrix::Identity(n, n)).partialPivLu().inverse();

    AbelianReductionReport rep;
    rep.cycle_length = n;
    rep.z = z;
    rep.truncation = truncation;
    rep.l1_bound_limit = 1.0 / std::abs(z.real());
    for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < n; ++i) col += std::abs(resolvent(i, j));
        rep.measured_l1_bound = std::max(rep.measured_l1_bound, col);
    }

    Matrix partial = Matrix::Zero(n, n);
    for (int k = 0; k <= truncation; ++k) {
        for (int m1 = 0; m1 < n; ++m1)
            for (int m2 = 0; m2 < n; ++m2) {
                partial(m1, m2) += lattice_green_z(z, m1 + long(k) * n, m2);
                if (k > 0) partial(m1, m2) += lattice_green_z(z, m1 - long(k) * n, m2);
            }
        rep.convergence.emplace_back(k, max_abs(partial - resolvent));
    }
    rep.max_deviation = max_abs(partial - resolvent);

    double r = std::abs(lattice_green_decay_rate(z));
    double amp = std::abs(lattice_green_z(z, 0, 0));
    // Tail: two geometric series starting at shift (K+1) n - (n-1).
    rep.truncation_estimate =
        2.0 * amp * std::pow(r, double(truncation + 1) * n - (n - 1)) / (1.0 - std::pow(r, n));
    return rep;
}

}  // namespace bloch
