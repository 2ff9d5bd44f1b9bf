#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bloch/errors.hpp"
#include "bloch/group.hpp"
#include "bloch/linalg.hpp"

namespace bloch {

struct UnitaryIrrep {
    int dim = 0;
    std::vector<Matrix> matrices;  // one dim x dim unitary per group element

    const Matrix& operator()(int g) const { return matrices[g]; }
    Complex character(int g) const { return matrices[g].trace(); }
};

inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kGroupSumTol = 1e-10;

inline void validate_irrep(const FiniteGroup& g, const UnitaryIrrep& rep) {
    if (static_cast<int>(rep.matrices.size()) != g.order)
        throw DimensionMismatch("irrep defined on " + std::to_string(rep.matrices.size()) +
                                " elements, group has " + std::to_string(g.order));
    for (int i = 0; i < g.order; ++i) {
        if (rep.matrices[i].rows() != rep.dim || rep.matrices[i].cols() != rep.dim)
            throw DimensionMismatch("irrep matrix " + std::to_string(i) + " has wrong shape");
        if (!is_unitary(rep.matrices[i], kAlgebraTol))
            throw Error("irrep matrix " + std::to_string(i) + " is not unitary");
    }
    for (int i = 0; i < g.order; ++i)
        for (int j = 0; j < g.order; ++j)
            if (max_abs(rep.matrices[i] * rep.matrices[j] - rep.matrices[g.mul(i, j)]) > kAlgebraTol)
                throw Error("homomorphism fails at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
    double char_norm = 0.0;
    for (int i = 0; i < g.order; ++i) char_norm += std::norm(rep.character(i));
    char_norm /= g.order;
    if (std::abs(char_norm - 1.0) > kGroupSumTol)
        throw NotIrreducible("character norm " + std::to_string(char_norm) + " != 1");
}

/// The dual of a finite group: a complete list of pairwise inequivalent
/// unitary irreps with Plancherel weights dim(L)/|G|.
struct DualSpace {
    FiniteGroup group;
    std::vector<UnitaryIrrep> irreps;
    std::vector<double> weights;

    int size() const { return static_cast<int>(irreps.size()); }
};

inline DualSpace build_dual(const FiniteGroup& g, std::vector<UnitaryIrrep> irreps) {
    for (const auto& rep : irreps) validate_irrep(g, rep);
    for (size_t a = 0; a < irreps.size(); ++a)
        for (size_t b = a + 1; b < irreps.size(); ++b) {
            Complex ip = 0.0;
            for (int i = 0; i < g.order; ++i)
                ip += irreps[a].character(i) * std::conj(irreps[b].character(i));
            if (std::abs(ip / double(g.order)) > kGroupSumTol)
                throw EquivalentPair("irreps " + std::to_string(a) + " and " +
                                     std::to_string(b) + " are equivalent");
        }
    int dim_sq = 0;
    for (const auto& rep : irreps) dim_sq += rep.dim * rep.dim;
    if (dim_sq != g.order)
        throw IncompleteSet("sum of dim^2 is " + std::to_string(dim_sq) +
                            ", group order is " + std::to_string(g.order));
    std::vector<double> weights;
    weights.reserve(irreps.size());
    for (const auto& rep : irreps) weights.push_back(double(rep.dim) / g.order);
    return DualSpace{g, std::move(irreps), std::move(weights)};
}

inline DualSpace dual_cyclic(int n) {
    FiniteGroup g = cyclic_group(n);
    std::vector<UnitaryIrrep> irreps;
    for (int k = 0; k < n; ++k) {
        UnitaryIrrep rep;
        rep.dim = 1;
        for (int m = 0; m < n; ++m) {
            Matrix mat(1, 1);
            mat(0, 0) = std::exp(Complex(0.0, 2.0 * std::numbers::pi * k * m / n));
            rep.matrices.push_back(mat);
        }
        irreps.push_back(std::move(rep));
    }
    return build_dual(g, std::move(irreps));
}

inline DualSpace dual_s3() {
    FiniteGroup g = symmetric_group_3();
    const auto& perms = detail::s3_permutations();
    auto sign = [](const std::array<int, 3>& p) {
        int s = 1;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (p[i] > p[j]) s = -s;
        return s;
    };
    UnitaryIrrep triv{1, {}}, sgn{1, {}}, std2{2, {}};
    // Standard 2-dim irrep: permutation matrices restricted to the plane
    // orthogonal to (1,1,1), in the orthonormal basis
    // u1 = (1,-1,0)/sqrt(2), u2 = (1,1,-2)/sqrt(6).
    Eigen::MatrixXd basis(3, 2);
    basis << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),
            -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),
             0.0, -2.0 / std::sqrt(6.0);
    for (const auto& p : perms) {
        triv.matrices.push_back(Matrix::Ones(1, 1));
        Matrix s(1, 1);
        s(0, 0) = double(sign(p));
        sgn.matrices.push_back(s);
        Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(3, 3);
        for (int x = 0; x < 3; ++x) perm(p[x], x) = 1.0;
        std2.matrices.push_back((basis.transpose() * perm * basis).cast<Complex>());
    }
    return build_dual(g, {triv, sgn, std2});
}

inline DualSpace dual_d4() {
    FiniteGroup g = dihedral_group_4();
    // Element index k + 4j means r^k s^j.
    auto one_dim = [&](double chi_r, double chi_s) {
        UnitaryIrrep rep{1, {}};
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 4; ++k) {
                Matrix m(1, 1);
                m(0, 0) = std::pow(chi_r, k) * std::pow(chi_s, j);
                rep.matrices.push_back(m);
            }
        return rep;
    };
    Matrix rot(2, 2), refl(2, 2);
    rot << 0, -1, 1, 0;
    refl << 1, 0, 0, -1;
    UnitaryIrrep two{2, {}};
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 4; ++k) {
            Matrix m = Matrix::Identity(2, 2);
            for (int a = 0; a < k; ++a) m = rot * m;
            if (j) m = m * refl;
            two.matrices.push_back(m);
        }
    return build_dual(g, {one_dim(1, 1), one_dim(1, -1), one_dim(-1, 1), one_dim(-1, -1), two});
}

/// Built-in duals addressable by name: "Z2".."Z12", "D4", "S3".
inline DualSpace builtin_dual(const std::string& name) {
    if (name.size() >= 2 && name[0] == 'Z') {
        int n = std::stoi(name.substr(1));
        if (n >= 1 && n <= 12) return dual_cyclic(n);
    }
    if (name == "D4") return dual_d4();
    if (name == "S3") return dual_s3();
    throw ModelLoadError("unknown built-in group '" + name + "'");
}

}  // namespace bloch
