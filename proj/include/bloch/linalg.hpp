#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace bloch {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline bool is_hermitian(const Matrix& a, double tol = 1e-12) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_unitary(const Matrix& u, double tol = 1e-12) {
    Matrix id = Matrix::Identity(u.rows(), u.cols());
    return (u.adjoint() * u - id).cwiseAbs().maxCoeff() <= tol;
}

inline double max_abs(const Matrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/// Apply a scalar function to a Hermitian matrix through its spectral
/// decomposition.
inline Matrix hermitian_function(const Matrix& h,
                                 const std::function<Complex(double)>& f) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const RealVector& ev = es.eigenvalues();
    Vector fe(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) fe[i] = f(ev[i]);
    return es.eigenvectors() * fe.asDiagonal() * es.eigenvectors().adjoint();
}

inline Matrix hermitian_exp(const Matrix& h, Complex scale) {
    return hermitian_function(h, [scale](double x) { return std::exp(scale * x); });
}

inline Matrix hermitian_resolvent(const Matrix& h, Complex z) {
    return hermitian_function(h, [z](double x) { return 1.0 / (x - z); });
}

inline RealVector sorted_eigenvalues(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

inline Matrix random_complex_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    return m;
}

inline Vector random_complex_vector(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = Complex(dist(rng), dist(rng));
    return v;
}

inline Matrix random_hermitian(int n, std::mt19937_64& rng) {
    Matrix a = random_complex_matrix(n, n, rng);
    return 0.5 * (a + a.adjoint());
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace bloch
