#pragma once

#include <vector>

#include "bloch/covering.hpp"
#include "bloch/linalg.hpp"

namespace bloch {

/// The Bloch map as a concrete unitary matrix together with the per-irrep
/// blocks. Row ordering: irreps in dual order; within an irrep
/// (vertex, fiber, row index a, column index b), b fastest, so that the
/// conjugated Hamiltonian is block-diagonal with blocks H^Lambda (x) 1.
struct BlockDecomposition {
    Matrix phi;
    std::vector<Matrix> blocks;        // H^Lambda per irrep
    std::vector<int> multiplicities;   // dim Lambda per irrep
    std::vector<int> offsets;          // row offset of each irrep sector

    Matrix block_diagonal() const {
        Matrix out = Matrix::Zero(phi.rows(), phi.rows());
        for (size_t l = 0; l < blocks.size(); ++l) {
            int dl = multiplicities[l];
            out.block(offsets[l], offsets[l], blocks[l].rows() * dl, blocks[l].rows() * dl) =
                kron(blocks[l], Matrix::Identity(dl, dl));
        }
        return out;
    }
};

inline BlockDecomposition decompose(const CoveringModel& m, const DualSpace& dual) {
    int dim_sq = 0;
    for (const auto& rep : dual.irreps) dim_sq += rep.dim * rep.dim;
    if (dim_sq != dual.group.order)
        throw IncompleteDual("sum of irrep dim^2 does not equal the group order");

    const FiniteGroup& grp = dual.group;
    const int d = m.fiber_dim(), n_f = m.quotient.n_vertices;
    BlockDecomposition bd;
    bd.phi = Matrix::Zero(m.dim(), m.dim());
    int offset = 0;
    for (int l = 0; l < dual.size(); ++l) {
        const auto& rep = dual.irreps[l];
        const int dl = rep.dim;
        const double scale = std::sqrt(dual.weights[l]);
        // Phi[f](Lambda)(e, v)_{i, ab} = sum_{g} [Psi_{g^{-1}}(g, v) f(g, v)]_i
        //                                 Lambda(g^{-1})_{ab}
        for (int g = 0; g < grp.order; ++g) {
            for (int v = 0; v < n_f; ++v) {
                const Matrix& psi_v = m.cocycle.at(grp.inv(g), m.cover_index(g, v));
                const Matrix& lam = rep(grp.inv(g));
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        for (int a = 0; a < dl; ++a)
                            for (int b = 0; b < dl; ++b) {
                                int row = offset + ((v * d + i) * dl + a) * dl + b;
                                int col = m.cover_index(g, v) * d + j;
                                bd.phi(row, col) += scale * psi_v(i, j) * lam(a, b);
                            }
            }
        }
        bd.blocks.push_back(build_h_lambda(m, dual, l));
        bd.multiplicities.push_back(dl);
        bd.offsets.push_back(offset);
        offset += n_f * d * dl * dl;
    }
    return bd;
}

enum class EvolutionKind { Unitary, Semigroup };

/// Per-irrep evolution factors exp(-i t H^Lambda) or exp(-t H^Lambda).
inline std::vector<Matrix> evolution_decompose(const BlockDecomposition& bd, double t,
                                               EvolutionKind kind) {
    if (kind == EvolutionKind::Semigroup && t <= 0.0)
        throw NonPositiveTime("semigroup evolution requires t > 0");
    Complex scale = kind == EvolutionKind::Unitary ? Complex(0.0, -t) : Complex(-t, 0.0);
    std::vector<Matrix> out;
    out.reserve(bd.blocks.size());
    for (const auto& h : bd.blocks) out.push_back(hermitian_exp(h, scale));
    return out;
}

enum class KernelKind { Propagator, Green, Semigroup };

/// Kernel values over pairs of covering vertices. For equivariant kernels
/// each entry is (d dl) x (d dl) with fiber index slower than the
/// representation index; for periodic kernels entries are plain d x d blocks.
struct KernelTable {
    KernelKind kind = KernelKind::Propagator;
    Complex parameter;
    int irrep = -1;  // -1 for a periodic kernel
    std::vector<std::vector<Matrix>> entries;

    const Matrix& at(int y1, int y2) const { return entries[y1][y2]; }
};

inline KernelTable periodic_kernel(const CoveringModel& m, KernelKind kind, Complex parameter) {
    Matrix full;
    switch (kind) {
        case KernelKind::Propagator:
            full = hermitian_exp(m.h_tilde, Complex(0.0, -1.0) * parameter);
            break;
        case KernelKind::Semigroup:
            if (parameter.real() <= 0.0) throw NonPositiveTime("semigroup kernel requires t > 0");
            full = hermitian_exp(m.h_tilde, -parameter);
            break;
        case KernelKind::Green:
            full = hermitian_resolvent(m.h_tilde, parameter);
            break;
    }
    const int d = m.fiber_dim();
    KernelTable k;
    k.kind = kind;
    k.parameter = parameter;
    k.entries.assign(m.n_cover(), std::vector<Matrix>(m.n_cover()));
    for (int y1 = 0; y1 < m.n_cover(); ++y1)
        for (int y2 = 0; y2 < m.n_cover(); ++y2)
            k.entries[y1][y2] = full.block(y1 * d, y2 * d, d, d);
    return k;
}

namespace detail {

/// K^Lambda(y1, y2) = sum_gamma ((Psi_gamma (x) 1) Ktilde(gamma^{-1} y1, y2)) (x) Lambda(gamma).
inline KernelTable reconstruct_from_periodic(const CoveringModel& m, const DualSpace& dual,
                                             int irrep, const KernelTable& periodic,
                                             bool second_form) {
    const auto& rep = dual.irreps[irrep];
    const FiniteGroup& grp = m.quotient.group;
    KernelTable out;
    out.kind = periodic.kind;
    out.parameter = periodic.parameter;
    out.irrep = irrep;
    const int n = m.n_cover(), d = m.fiber_dim(), dl = rep.dim;
    out.entries.assign(n, std::vector<Matrix>(n, Matrix::Zero(d * dl, d * dl)));
    for (int y1 = 0; y1 < n; ++y1)
        for (int y2 = 0; y2 < n; ++y2)
            for (int gamma = 0; gamma < grp.order; ++gamma) {
                if (!second_form) {
                    int y0 = m.act(grp.inv(gamma), y1);
                    out.entries[y1][y2] +=
                        kron(m.cocycle.at(gamma, y0) * periodic.at(y0, y2), rep(gamma));
                } else {
                    int y0 = m.act(grp.inv(gamma), y2);
                    out.entries[y1][y2] +=
                        kron(periodic.at(y1, y0) * m.cocycle.at(gamma, y0).adjoint(),
                             rep(grp.inv(gamma)));
                }
            }
    return out;
}

}  // namespace detail

inline void guard_spectral_parameter(const CoveringModel& m, Complex z) {
    RealVector ev = sorted_eigenvalues(m.h_tilde);
    double diam = std::max(ev[ev.size() - 1] - ev[0], 1.0);
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (std::abs(z - Complex(ev[i], 0.0)) < 1e-8 * diam)
            throw SpectralParameterInSpectrum("z is within the guard margin of the spectrum");
}

inline KernelTable reconstruct_propagator(const CoveringModel& m, const DualSpace& dual,
                                          int irrep, double t, bool second_form = false) {
    KernelTable periodic = periodic_kernel(m, KernelKind::Propagator, Complex(t, 0.0));
    return detail::reconstruct_from_periodic(m, dual, irrep, periodic, second_form);
}

inline KernelTable reconstruct_green(const CoveringModel& m, const DualSpace& dual, int irrep,
                                     Complex z, bool second_form = false) {
    guard_spectral_parameter(m, z);
    KernelTable periodic = periodic_kernel(m, KernelKind::Green, z);
    return detail::reconstruct_from_periodic(m, dual, irrep, periodic, second_form);
}

/// Direct equivariant kernel of f(H^Lambda): identity-sheet blocks from the
/// matrix function, extended to the whole cover by the two-sided equivariance.
inline KernelTable direct_equivariant_kernel(const CoveringModel& m, const DualSpace& dual,
                                             int irrep, KernelKind kind, Complex parameter) {
    const auto& rep = dual.irreps[irrep];
    const int d = m.fiber_dim(), dl = rep.dim, n_f = m.quotient.n_vertices;
    const int e = m.quotient.group.identity_index;
    Matrix h = build_h_lambda(m, dual, irrep);
    Matrix full;
    switch (kind) {
        case KernelKind::Propagator:
            full = hermitian_exp(h, Complex(0.0, -1.0) * parameter);
            break;
        case KernelKind::Semigroup:
            full = hermitian_exp(h, -parameter);
            break;
        case KernelKind::Green:
            full = hermitian_resolvent(h, parameter);
            break;
    }
    KernelTable out;
    out.kind = kind;
    out.parameter = parameter;
    out.irrep = irrep;
    out.entries.assign(m.n_cover(), std::vector<Matrix>(m.n_cover()));
    for (int y1 = 0; y1 < m.n_cover(); ++y1) {
        int g1 = m.sheet_of(y1), v1 = m.vertex_of(y1);
        Matrix left = kron(m.cocycle.at(g1, m.cover_index(e, v1)), rep(g1));
        for (int y2 = 0; y2 < m.n_cover(); ++y2) {
            int g2 = m.sheet_of(y2), v2 = m.vertex_of(y2);
            Matrix right = kron(m.cocycle.at(g2, m.cover_index(e, v2)), rep(g2));
            out.entries[y1][y2] =
                left * full.block(v1 * d * dl, v2 * d * dl, d * dl, d * dl) * right.adjoint();
        }
    }
    return out;
}

/// Pair an equivariant kernel with two test vectors on the cover, producing
/// an element of I(L_Lambda).
inline Matrix kernel_pairing(const CoveringModel& m, const DualSpace& dual,
                             const KernelTable& k, const Vector& phi1, const Vector& phi2) {
    const auto& rep = dual.irreps[k.irrep];
    const int d = m.fiber_dim(), dl = rep.dim;
    Matrix out = Matrix::Zero(dl, dl);
    for (int y1 = 0; y1 < m.n_cover(); ++y1)
        for (int y2 = 0; y2 < m.n_cover(); ++y2) {
            const Matrix& block = k.at(y1, y2);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    for (int a = 0; a < dl; ++a)
                        for (int b = 0; b < dl; ++b)
                            out(a, b) += std::conj(phi1[y1 * d + i]) *
                                         block(i * dl + a, j * dl + b) * phi2[y2 * d + j];
        }
    return out;
}

/// F(gamma) = <W_{gamma^{-1}} phi1, B phi2> for the periodic kernel of B.
inline GroupFunction periodic_kernel_pairing(const CoveringModel& m, const KernelTable& k,
                                             const Vector& phi1, const Vector& phi2) {
    const int d = m.fiber_dim();
    Matrix full(m.dim(), m.dim());
    for (int y1 = 0; y1 < m.n_cover(); ++y1)
        for (int y2 = 0; y2 < m.n_cover(); ++y2)
            full.block(y1 * d, y2 * d, d, d) = k.at(y1, y2);
    GroupFunction f;
    f.values.assign(m.group_order(), Vector::Zero(1));
    for (int gamma = 0; gamma < m.group_order(); ++gamma) {
        Matrix w = magnetic_translation(m, gamma);
        f.values[gamma][0] = (phi1.adjoint() * w * full * phi2)(0, 0);
    }
    return f;
}

}  // namespace bloch
