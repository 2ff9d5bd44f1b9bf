#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <numbers>
#include <unsupported/Eigen/FFT>
#include <vector>

#include "bloch/errors.hpp"
#include "bloch/landau.hpp"

namespace bloch {

using SparseHermitian = Eigen::SparseMatrix<Complex>;

struct DiscretizedOperator {
    int grid_l = 0;
    LandauModel model;
    SparseHermitian matrix;

    double spacing() const { return 2.0 * std::numbers::pi / grid_l; }
    int index(int j, int k) const { return j * grid_l + k; }
};

/// Five-point discretization of H = -d_x^2 + (-i d_y + N x / 2 pi)^2 on an
/// L x L grid over (0, 2 pi)^2, Landau gauge. y-links at column x_j carry the
/// Peierls phase e^{i N x_j h / 2 pi}; wrapping links carry the
/// quasi-periodicity phases e^{2 pi i mu} e^{-i N y} (x-wrap) and
/// e^{2 pi i nu} (y-wrap).
inline DiscretizedOperator discretize_h_lambda(const LandauModel& m, int grid_l) {
    if (grid_l < 16) throw GridTooCoarse("grid must have at least 16 points per period");
    const int l = grid_l;
    const double h = 2.0 * std::numbers::pi / l;
    const double inv_h2 = 1.0 / (h * h);
    DiscretizedOperator op;
    op.grid_l = l;
    op.model = m;
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(5 * l * l);
    auto idx = [l](int j, int k) { return j * l + k; };
    for (int j = 0; j < l; ++j) {
        double xj = j * h;
        Complex peierls = std::exp(Complex(0.0, m.flux_n * xj * h / (2.0 * std::numbers::pi)));
        for (int k = 0; k < l; ++k) {
            double yk = k * h;
            trip.emplace_back(idx(j, k), idx(j, k), Complex(4.0 * inv_h2, 0.0));
            // x-hops; the wrap implements phi(x + 2 pi, y) = e^{2 pi i mu} e^{-i N y} phi.
            Complex xw = j + 1 < l ? Complex(1.0)
                                   : std::exp(Complex(0.0, 2.0 * std::numbers::pi * m.mu -
                                                               m.flux_n * yk));
            trip.emplace_back(idx(j, k), idx((j + 1) % l, k), -inv_h2 * xw);
            trip.emplace_back(idx((j + 1) % l, k), idx(j, k), -inv_h2 * std::conj(xw));
            // y-hops with the Peierls phase; the wrap adds e^{2 pi i nu}.
            Complex yw = peierls;
            if (k + 1 == l) yw *= std::exp(Complex(0.0, 2.0 * std::numbers::pi * m.nu));
            trip.emplace_back(idx(j, k), idx(j, (k + 1) % l), -inv_h2 * yw);
            trip.emplace_back(idx(j, (k + 1) % l), idx(j, k), -inv_h2 * std::conj(yw));
        }
    }
    op.matrix.resize(l * l, l * l);
    op.matrix.setFromTriplets(trip.begin(), trip.end());
    return op;
}

/// Max deviation of the assembled matrix from Hermitian symmetry.
inline double hermiticity_defect(const DiscretizedOperator& op) {
    SparseHermitian diff = SparseHermitian(op.matrix.adjoint()) - op.matrix;
    double worst = 0.0;
    for (int c = 0; c < diff.outerSize(); ++c)
        for (SparseHermitian::InnerIterator it(diff, c); it; ++it)
            worst = std::max(worst, std::abs(it.value()));
    return worst;
}

/// Total magnetic flux through the discrete torus: sum over plaquettes of the
/// argument of the oriented link-phase product. Equals 2 pi N for integer N.
inline double total_plaquette_flux(const DiscretizedOperator& op) {
    const int l = op.grid_l;
    const LandauModel& m = op.model;
    const double h = op.spacing();
    double flux = 0.0;
    for (int j = 0; j < l; ++j)
        for (int k = 0; k < l; ++k) {
            // Hop phases along the plaquette (j,k) -> (j+1,k) -> (j+1,k+1)
            // -> (j,k+1) -> (j,k); the Laplacian sign drops out.
            auto x_hop = [&](int jj, int kk) {
                return jj + 1 < l ? Complex(1.0)
                                  : std::exp(Complex(0.0, 2.0 * std::numbers::pi * m.mu -
                                                              m.flux_n * (kk * h)));
            };
            auto y_hop = [&](int jj, int kk) {
                Complex ph = std::exp(
                    Complex(0.0, m.flux_n * (jj * h) * h / (2.0 * std::numbers::pi)));
                if (kk + 1 == l) ph *= std::exp(Complex(0.0, 2.0 * std::numbers::pi * m.nu));
                return ph;
            };
            Complex loop = x_hop(j, k) * y_hop((j + 1) % l, k) * std::conj(x_hop(j, k + 1 == l ? 0 : k + 1)) *
                           std::conj(y_hop(j, k));
            flux += std::arg(loop);
        }
    return flux;
}

/// Lowest eigenvalues via shift-invert Lanczos: sparse LU of H, Lanczos with
/// full reorthogonalization on H^{-1}, eigenvalues of the tridiagonal
/// projection inverted back.
inline RealVector lowest_eigenvalues(const DiscretizedOperator& op, int count,
                                     int max_iter = 0, unsigned seed = 12345) {
    const int n = op.matrix.rows();
    if (count < 1 || count > n) throw ConfigInvalid("eigenvalue count out of range");
    int m_iter = max_iter > 0 ? max_iter : std::min(n, 2 * count + 120);
    Eigen::SparseLU<SparseHermitian> lu;
    lu.compute(op.matrix);
    if (lu.info() != Eigen::Success) throw Error("sparse factorization failed");

    std::mt19937_64 rng(seed);
    std::vector<Vector> basis;
    basis.reserve(m_iter);
    Vector v = random_complex_vector(n, rng);
    v /= v.norm();
    basis.push_back(v);
    std::vector<double> alpha, beta;
    for (int j = 0; j < m_iter; ++j) {
        Vector w = lu.solve(basis[j]);
        double a = std::real(basis[j].dot(w));
        alpha.push_back(a);
        w -= a * basis[j];
        if (j > 0) w -= beta[j - 1] * basis[j - 1];
        for (int pass = 0; pass < 2; ++pass)
            for (const Vector& b : basis) w -= b.dot(w) * b;
        double nb = w.norm();
        if (nb < 1e-12) break;
        if (j + 1 < m_iter) {
            beta.push_back(nb);
            basis.push_back(w / nb);
        }
    }
    const int k = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
        tri(i, i) = alpha[i];
        if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    // Largest Ritz values of H^{-1} give the lowest eigenvalues of H.
    RealVector out(count);
    for (int i = 0; i < count; ++i) out[i] = 1.0 / es.eigenvalues()[k - 1 - i];
    return out;
}

struct HeatTraceReport {
    double t = 0.0;
    double eigen_sum = 0.0;          // |N| / (2 sinh(t omega / 2))
    double reference_closed_form = 0.0;  // 2 |N| / sinh(t omega / 2)
    double discrete_trace = 0.0;
    double discrete_tail_bound = 0.0;
    bool oracle_supports_eigen_sum = false;
};

/// Heat trace with a discretized oracle: lowest eigenvalues summed explicitly,
/// remainder bounded by (L^2 - m) e^{-t E_m}.
inline HeatTraceReport heat_trace(const LandauModel& m, double t, int grid_l,
                                  int explicit_levels = 64) {
    if (t <= 0.0) throw NonPositiveTime("heat trace requires t > 0");
    HeatTraceReport rep;
    rep.t = t;
    rep.eigen_sum = heat_trace_eigen_sum(m, t);
    rep.reference_closed_form = heat_trace_reference_closed_form(m, t);
    DiscretizedOperator op = discretize_h_lambda(m, grid_l);
    int count = std::min(explicit_levels, grid_l * grid_l);
    RealVector ev = lowest_eigenvalues(op, count);
    double s = 0.0;
    for (int i = 0; i < count; ++i) s += std::exp(-t * ev[i]);
    rep.discrete_trace = s;
    rep.discrete_tail_bound =
        double(grid_l) * grid_l * std::exp(-t * ev[count - 1]);
    double err_eigen = std::abs(rep.discrete_trace - rep.eigen_sum);
    double err_ref = std::abs(rep.discrete_trace - rep.reference_closed_form);
    rep.oracle_supports_eigen_sum = err_eigen < err_ref;
    return rep;
}

/// Resolvent oracle on the grid: (H - z) u = delta_{p2} / h^2, value u at p1.
inline Complex discrete_green_value(const DiscretizedOperator& op, Complex z, double x1,
                                    double y1, double x2, double y2) {
    const int l = op.grid_l;
    const double h = op.spacing();
    auto nearest = [&](double a) {
        int i = static_cast<int>(std::llround(a / h));
        return ((i % l) + l) % l;
    };
    SparseHermitian shifted = op.matrix;
    for (int i = 0; i < l * l; ++i) shifted.coeffRef(i, i) -= z;
    Eigen::SparseLU<SparseHermitian> lu;
    lu.compute(shifted);
    if (lu.info() != Eigen::Success) throw Error("sparse factorization failed");
    Vector rhs = Vector::Zero(l * l);
    rhs[op.index(nearest(x2), nearest(y2))] = 1.0 / (h * h);
    Vector u = lu.solve(rhs);
    return u[op.index(nearest(x1), nearest(y1))];
}

namespace detail {

/// In-place spectral shift of a periodic sequence by delta in the continuous
/// coordinate (period 2 pi).
inline void spectral_shift(std::vector<Complex>& data, double delta) {
    const int l = static_cast<int>(data.size());
    Eigen::FFT<double> fft;
    std::vector<Complex> freq;
    fft.fwd(freq, data);
    for (int q = 0; q < l; ++q) {
        int signed_q = q <= l / 2 ? q : q - l;
        freq[q] *= std::exp(Complex(0.0, signed_q * delta));
    }
    fft.inv(data, freq);
}

}  // namespace detail

/// Unitary intertwiner from the (mu, nu) = (0, 0) sector to (mu, nu):
/// T phi(x, y) = e^{i nu y} phi(x + 2 pi nu / N, y - 2 pi mu / N), realized
/// with spectral interpolation adapted to the quasi-periodic x rows.
inline Vector t_lambda_map(const LandauModel& m, int grid_l, const Vector& phi) {
    const int l = grid_l;
    if (phi.size() != l * l) throw DimensionMismatch("grid function has wrong size");
    const double h = 2.0 * std::numbers::pi / l;
    const double a = 2.0 * std::numbers::pi * m.nu / m.flux_n;
    const double b = 2.0 * std::numbers::pi * m.mu / m.flux_n;
    Vector out = phi;
    // Shift y -> y - b column by column; the input sector is y-periodic.
    std::vector<Complex> line(l);
    for (int j = 0; j < l; ++j) {
        for (int k = 0; k < l; ++k) line[k] = out[j * l + k];
        detail::spectral_shift(line, -b);
        for (int k = 0; k < l; ++k) out[j * l + k] = line[k];
    }
    // Shift x -> x + a row by row. After the y-shift the row at y_k obeys
    // psi(x + 2 pi) = e^{i beta_k} psi(x) with beta_k = N b - N y_k, so the
    // row is made periodic with a linear phase before the Fourier shift.
    for (int k = 0; k < l; ++k) {
        double beta = m.flux_n * b - m.flux_n * (k * h);
        for (int j = 0; j < l; ++j) {
            double x = j * h;
            line[j] = std::exp(Complex(0.0, -beta * x / (2.0 * std::numbers::pi))) *
                      out[j * l + k];
        }
        detail::spectral_shift(line, a);
        for (int j = 0; j < l; ++j) {
            double x = j * h;
            out[j * l + k] = std::exp(Complex(0.0, beta * (x + a) / (2.0 * std::numbers::pi))) *
                             line[j];
        }
    }
    // Representation phase e^{i nu y}.
    for (int j = 0; j < l; ++j)
        for (int k = 0; k < l; ++k)
            out[j * l + k] *= std::exp(Complex(0.0, m.nu * (k * h)));
    return out;
}

}  // namespace bloch
