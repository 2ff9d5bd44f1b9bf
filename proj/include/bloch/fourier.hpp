#pragma once

#include <vector>

#include "bloch/irreps.hpp"
#include "bloch/linalg.hpp"

namespace bloch {

/// A function on the group with values in C^d (d = 1 for scalar functions).
struct GroupFunction {
    std::vector<Vector> values;  // one d-vector per group element

    int dim() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }

    static GroupFunction delta(const FiniteGroup& g, int at, int d = 1) {
        GroupFunction f;
        f.values.assign(g.order, Vector::Zero(d));
        f.values[at][0] = 1.0;
        return f;
    }

    static GroupFunction random(const FiniteGroup& g, std::mt19937_64& rng, int d = 1) {
        GroupFunction f;
        f.values.reserve(g.order);
        for (int i = 0; i < g.order; ++i) f.values.push_back(random_complex_vector(d, rng));
        return f;
    }

    double squared_norm() const {
        double s = 0.0;
        for (const auto& v : values) s += v.squaredNorm();
        return s;
    }
};

/// The Fourier image: per irrep, one dim(L) x dim(L) matrix for each of the
/// d vector components.
struct DualField {
    std::vector<std::vector<Matrix>> components;  // [irrep][vector component]

    double weighted_squared_norm(const DualSpace& dual) const {
        double s = 0.0;
        for (size_t l = 0; l < components.size(); ++l)
            for (const auto& m : components[l]) s += dual.weights[l] * m.squaredNorm();
        return s;
    }
};

inline void check_defined(const DualSpace& dual, const GroupFunction& f) {
    if (static_cast<int>(f.values.size()) != dual.group.order)
        throw DimensionMismatch("function defined on " + std::to_string(f.values.size()) +
                                " elements, group has " + std::to_string(dual.group.order));
    for (const auto& v : f.values)
        if (v.size() != f.values[0].size())
            throw DimensionMismatch("value dimension varies across elements");
}

/// F[f](Lambda) = sum_gamma f(gamma) (x) Lambda(gamma).
inline DualField fourier(const DualSpace& dual, const GroupFunction& f) {
    check_defined(dual, f);
    const int d = f.dim();
    DualField out;
    out.components.resize(dual.size());
    for (int l = 0; l < dual.size(); ++l) {
        const auto& rep = dual.irreps[l];
        out.components[l].assign(d, Matrix::Zero(rep.dim, rep.dim));
        for (int g = 0; g < dual.group.order; ++g)
            for (int c = 0; c < d; ++c) out.components[l][c] += f.values[g][c] * rep(g);
    }
    return out;
}

/// f(s) = sum_Lambda weights[Lambda] Tr[Lambda(s)^* fhat(Lambda)].
inline GroupFunction inverse_fourier(const DualSpace& dual, const DualField& fhat) {
    if (static_cast<int>(fhat.components.size()) != dual.size())
        throw DimensionMismatch("dual field has wrong number of components");
    const int d = static_cast<int>(fhat.components[0].size());
    for (int l = 0; l < dual.size(); ++l) {
        if (static_cast<int>(fhat.components[l].size()) != d)
            throw DimensionMismatch("component count varies across irreps");
        for (const auto& m : fhat.components[l])
            if (m.rows() != dual.irreps[l].dim || m.cols() != dual.irreps[l].dim)
                throw DimensionMismatch("component shape does not match irrep dim");
    }
    GroupFunction f;
    f.values.assign(dual.group.order, Vector::Zero(d));
    for (int s = 0; s < dual.group.order; ++s)
        for (int l = 0; l < dual.size(); ++l) {
            const Matrix adj = dual.irreps[l](s).adjoint();
            for (int c = 0; c < d; ++c)
                f.values[s][c] += dual.weights[l] * (adj * fhat.components[l][c]).trace();
        }
    return f;
}

/// (g * h)(s) = sum_gamma g(gamma) h(gamma^{-1} s), so that
/// F[g*h](Lambda) = F[g](Lambda) F[h](Lambda).
inline GroupFunction convolve(const FiniteGroup& grp, const GroupFunction& g,
                              const GroupFunction& h) {
    if (static_cast<int>(g.values.size()) != grp.order ||
        static_cast<int>(h.values.size()) != grp.order)
        throw DimensionMismatch("convolution operands not defined on the whole group");
    if (g.dim() != 1 || h.dim() != 1)
        throw DimensionMismatch("convolution requires scalar-valued functions");
    GroupFunction out;
    out.values.assign(grp.order, Vector::Zero(1));
    for (int s = 0; s < grp.order; ++s)
        for (int a = 0; a < grp.order; ++a)
            out.values[s][0] += g.values[a][0] * h.values[grp.mul(grp.inv(a), s)][0];
    return out;
}

/// The left-translate gamma -> f(r gamma).
inline GroupFunction left_translate(const FiniteGroup& grp, const GroupFunction& f, int r) {
    GroupFunction out;
    out.values.resize(grp.order);
    for (int g = 0; g < grp.order; ++g) out.values[g] = f.values[grp.mul(r, g)];
    return out;
}

}  // namespace bloch
