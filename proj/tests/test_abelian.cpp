#include <catch2/catch_amalgamated.hpp>

#include "bloch/abelian.hpp"

using namespace bloch;

TEST_CASE("free lattice Green function at z = -1") {
    Complex g = lattice_green_z(Complex(-1.0, 0.0), 0, 0);
    CHECK(std::abs(g - Complex(1.0 / std::sqrt(5.0), 0.0)) < 1e-14);
    Complex r = lattice_green_decay_rate(Complex(-1.0, 0.0));
    CHECK(std::abs(r - Complex((3.0 - std::sqrt(5.0)) / 2.0, 0.0)) < 1e-14);
    CHECK(std::abs(r) < 1.0);
}

TEST_CASE("free Green function solves the difference equation") {
    Complex z(-0.4, 0.3);
    for (long n : {-3L, 0L, 2L, 7L}) {
        Complex lhs = 2.0 * lattice_green_z(z, n, 0) - lattice_green_z(z, n - 1, 0) -
                      lattice_green_z(z, n + 1, 0) - z * lattice_green_z(z, n, 0);
        Complex expect = n == 0 ? 1.0 : 0.0;
        CHECK(std::abs(lhs - expect) < 1e-12);
    }
}

TEST_CASE("periodized sum reproduces the cycle resolvent") {
    AbelianReductionReport rep = abelian_reduction_green(8, Complex(-1.0, 0.0), 40);
    CHECK(rep.max_deviation < 1e-10);
    CHECK(rep.max_deviation <= rep.truncation_estimate + 1e-14);
}

TEST_CASE("l1 resolvent bound holds") {
    for (double re : {-0.5, -1.0, -2.0}) {
        AbelianReductionReport rep = abelian_reduction_green(6, Complex(re, 0.2), 20);
        CHECK(rep.measured_l1_bound <= rep.l1_bound_limit + 1e-12);
    }
}

TEST_CASE("convergence in the truncation order is geometric with rate r^n") {
    AbelianReductionReport rep = abelian_reduction_green(5, Complex(-1.5, 0.0), 12);
    double r = std::abs(lattice_green_decay_rate(rep.z));
    double shell = std::pow(r, double(rep.cycle_length));
    int checked = 0;
    for (size_t i = 2; i + 1 < rep.convergence.size(); ++i) {
        if (rep.convergence[i + 1].second < 1e-13) break;  // floating point floor
        double ratio = rep.convergence[i + 1].second / rep.convergence[i].second;
        CHECK(ratio < 1.5 * shell);
        CHECK(ratio > shell / 1.5);
        ++checked;
    }
    CHECK(checked >= 2);
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(abelian_reduction_green(8, Complex(0.5, 0.0), 10), InvalidSpectralParameter);
    CHECK_THROWS_AS(abelian_reduction_green(2, Complex(-1.0, 0.0), 10), InvalidSpectralParameter);
    CHECK_THROWS_AS(abelian_reduction_green(8, Complex(-1.0, 0.0), 0), InvalidSpectralParameter);
}
