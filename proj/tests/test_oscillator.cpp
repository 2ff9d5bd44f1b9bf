#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "bloch/oscillator.hpp"

using namespace bloch;

namespace {
const double kOmega = 1.0 / std::numbers::pi;
}

TEST_CASE("Mehler kernel basics") {
    CHECK(std::abs(mehler_heat_kernel(0.0, 1.0, 0.0, 0.0) -
                   1.0 / std::sqrt(4.0 * std::numbers::pi)) < 1e-14);
    CHECK(std::abs(mehler_heat_kernel(1e-9, 1.0, 0.0, 0.0) -
                   1.0 / std::sqrt(4.0 * std::numbers::pi)) < 1e-8);
    CHECK(mehler_heat_kernel(kOmega, 0.5, 0.3, -1.1) ==
          mehler_heat_kernel(kOmega, 0.5, -1.1, 0.3));
    CHECK(mehler_heat_kernel(kOmega, 0.7, 0.2, 1.4) > 0.0);
    CHECK_THROWS_AS(mehler_heat_kernel(kOmega, 0.0, 0.0, 0.0), NonPositiveTime);
}

TEST_CASE("Mehler kernel agrees with the eigenfunction expansion") {
    double direct = mehler_heat_kernel(kOmega, 1.0, 0.5, -0.2);
    // The level-60 truncation tail is ~1.3e-10 for these parameters.
    CHECK(std::abs(direct - oscillator_heat_eigen_sum(kOmega, 1.0, 0.5, -0.2, 60)) < 2e-10);
    CHECK(std::abs(direct - oscillator_heat_eigen_sum(kOmega, 1.0, 0.5, -0.2, 90)) < 1e-12);
}

TEST_CASE("eigenfunctions are orthonormal under the trapezoid measure") {
    const int l_max = 6;
    const int n = 4000;
    const double lim = 40.0, h = 2.0 * lim / n;
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(l_max + 1, l_max + 1);
    for (int i = 0; i <= n; ++i) {
        double x = -lim + i * h;
        std::vector<double> phi = oscillator_eigenfunctions(kOmega, x, l_max);
        double w = (i == 0 || i == n) ? 0.5 * h : h;
        for (int a = 0; a <= l_max; ++a)
            for (int b = 0; b <= l_max; ++b) gram(a, b) += w * phi[a] * phi[b];
    }
    CHECK((gram - Eigen::MatrixXd::Identity(l_max + 1, l_max + 1)).cwiseAbs().maxCoeff() <
          1e-8);
}

TEST_CASE("Chapman-Kolmogorov for the Mehler kernel") {
    const double s = 0.4, t = 0.9, x = 0.3, y = -0.8;
    const int n = 6000;
    const double lim = 45.0, h = 2.0 * lim / n;
    double conv = 0.0;
    for (int i = 0; i <= n; ++i) {
        double u = -lim + i * h;
        double w = (i == 0 || i == n) ? 0.5 * h : h;
        conv += w * mehler_heat_kernel(kOmega, s, x, u) * mehler_heat_kernel(kOmega, t, u, y);
    }
    CHECK(std::abs(conv - mehler_heat_kernel(kOmega, s + t, x, y)) < 1e-8);
}

TEST_CASE("heat kernel is sub-stochastic in the flat measure") {
    const double t = 0.8;
    const int n = 4000;
    const double lim = 40.0, h = 2.0 * lim / n;
    double mass = 0.0;
    for (int i = 0; i <= n; ++i)
        mass += h * mehler_heat_kernel(kOmega, t, 0.2, -lim + i * h);
    CHECK(mass <= 1.0 + 1e-10);
}

TEST_CASE("Green function routes agree") {
    for (double zr : {-0.5, -1.0, -2.0})
        for (double om : {1.0 / std::numbers::pi, 2.0 / std::numbers::pi})
            for (double x1 : {-2.0, -0.5, 0.0, 1.3})
                for (double x2 : {-2.0, -0.5, 0.0, 1.3}) {
                    Complex z(zr, 0.0);
                    Complex a = ho_green(z, om, x1, x2, HoGreenMethod::Laplace);
                    Complex b = ho_green(z, om, x1, x2, HoGreenMethod::Pcf);
                    CHECK(std::abs(a - b) < 1e-6 * std::abs(a));
                }
}

TEST_CASE("Green function symmetry and eigen-sum cross-check") {
    Complex z(-1.0, 0.0);
    Complex g1 = ho_green(z, kOmega, 0.4, -1.2);
    Complex g2 = ho_green(z, kOmega, -1.2, 0.4);
    CHECK(std::abs(g1 - g2) < 1e-10);
    // The eigenfunction series converges slowly on the diagonal; off it
    // the alternating tail still limits accuracy, so the check is loose.
    Complex series = ho_green(z, kOmega, 0.5, -0.4, HoGreenMethod::Eigen);
    Complex direct = ho_green(z, kOmega, 0.5, -0.4, HoGreenMethod::Laplace);
    CHECK(std::abs(series - direct) < 1e-2 * std::abs(direct));
}

TEST_CASE("resolvent equation away from the diagonal") {
    Complex z(-1.0, 0.0);
    double x2 = 0.3, h = 1e-3;
    for (double x1 : {1.1, -0.9}) {
        auto g = [&](double u) { return ho_green_pcf(z, kOmega, u, x2); };
        Complex lap = (g(x1 + h) - 2.0 * g(x1) + g(x1 - h)) / (h * h);
        Complex res = -lap + (0.25 * kOmega * kOmega * x1 * x1 - z) * g(x1);
        CHECK(std::abs(res) < 1e-4);
    }
}

TEST_CASE("pole and parameter guards") {
    CHECK_THROWS_AS(ho_green_laplace(Complex(0.5, 0.0), kOmega, 0.0, 0.0),
                    InvalidSpectralParameter);
    CHECK_THROWS_AS(ho_green_pcf(Complex(0.5 * kOmega, 0.0), kOmega, 0.0, 0.0), PoleProximity);
}
