#pragma once

#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <tuple>
#include <vector>

#include "bloch/fourier.hpp"
#include "bloch/irreps.hpp"
#include "bloch/linalg.hpp"

namespace bloch {

struct QuotientEdge {
    int u = 0;
    int v = 0;
    Matrix hopping;  // d x d
    int lift = 0;    // deck element crossed by the edge's lift
};

/// The quotient data: a finite graph with fiber dimension d, Hermitian
/// on-site potentials, and a deck-group label per edge.
struct QuotientModel {
    int n_vertices = 0;
    int fiber_dim = 1;
    std::vector<QuotientEdge> edges;
    std::vector<Matrix> potential;  // one d x d Hermitian matrix per vertex
    FiniteGroup group;
    double weighting = 1.0;  // scale of the degree term on the diagonal
};

/// Unitary cocycle Psi_gamma(y) over the covering vertices, stored densely.
struct Cocycle {
    std::vector<std::vector<Matrix>> phases;  // [gamma][cover vertex] -> d x d

    const Matrix& at(int gamma, int y) const { return phases[gamma][y]; }
};

struct CocycleSpec {
    enum class Kind { Trivial, Table };
    Kind kind = Kind::Trivial;
    std::vector<std::vector<Matrix>> table;  // used when kind == Table

    static CocycleSpec trivial() { return {}; }
    static CocycleSpec from_table(std::vector<std::vector<Matrix>> t) {
        return {Kind::Table, std::move(t)};
    }
    /// Coboundary of a per-vertex unitary frame: Psi_gamma(y) = U(gamma.y) U(y)*.
    /// Always satisfies the composition rule.
    static CocycleSpec coboundary(const FiniteGroup& g, int n_vertices,
                                  const std::vector<Matrix>& frame);
    static CocycleSpec random_u1(const FiniteGroup& g, int n_vertices, std::mt19937_64& rng);
};

class CoveringModel {
  public:
    QuotientModel quotient;
    Cocycle cocycle;
    Matrix h_tilde;

    int group_order() const { return quotient.group.order; }
    int n_cover() const { return group_order() * quotient.n_vertices; }
    int fiber_dim() const { return quotient.fiber_dim; }
    int dim() const { return n_cover() * fiber_dim(); }

    /// Covering vertex index of (deck element g, quotient vertex v).
    int cover_index(int g, int v) const { return g * quotient.n_vertices + v; }
    int sheet_of(int y) const { return y / quotient.n_vertices; }
    int vertex_of(int y) const { return y % quotient.n_vertices; }
    /// Deck action gamma . y on covering vertices.
    int act(int gamma, int y) const {
        return cover_index(quotient.group.mul(gamma, sheet_of(y)), vertex_of(y));
    }
};

inline CocycleSpec CocycleSpec::coboundary(const FiniteGroup& g, int n_vertices,
                                           const std::vector<Matrix>& frame) {
    const int n_cover = g.order * n_vertices;
    if (static_cast<int>(frame.size()) != n_cover)
        throw DimensionMismatch("frame size does not match covering vertex count");
    std::vector<std::vector<Matrix>> table(g.order);
    for (int gamma = 0; gamma < g.order; ++gamma) {
        table[gamma].resize(n_cover);
        for (int y = 0; y < n_cover; ++y) {
            int sheet = y / n_vertices, v = y % n_vertices;
            int gy = g.mul(gamma, sheet) * n_vertices + v;
            table[gamma][y] = frame[gy] * frame[y].adjoint();
        }
    }
    return from_table(std::move(table));
}

inline CocycleSpec CocycleSpec::random_u1(const FiniteGroup& g, int n_vertices,
                                          std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(0.0, 2.0 * std::numbers::pi);
    std::vector<Matrix> frame(g.order * n_vertices);
    for (auto& u : frame) {
        u = Matrix(1, 1);
        u(0, 0) = std::exp(Complex(0.0, dist(rng)));
    }
    return coboundary(g, n_vertices, frame);
}

namespace detail {

inline Cocycle make_cocycle(const QuotientModel& q, const CocycleSpec& spec) {
    const FiniteGroup& g = q.group;
    const int n_cover = g.order * q.n_vertices;
    const int d = q.fiber_dim;
    Cocycle c;
    if (spec.kind == CocycleSpec::Kind::Trivial) {
        c.phases.assign(g.order, std::vector<Matrix>(n_cover, Matrix::Identity(d, d)));
        return c;
    }
    c.phases = spec.table;
    if (static_cast<int>(c.phases.size()) != g.order)
        throw CocycleViolation("cocycle table has wrong number of group elements");
    for (int gamma = 0; gamma < g.order; ++gamma) {
        if (static_cast<int>(c.phases[gamma].size()) != n_cover)
            throw CocycleViolation("cocycle table has wrong number of vertices");
        for (int y = 0; y < n_cover; ++y)
            if (c.phases[gamma][y].rows() != d || !is_unitary(c.phases[gamma][y]))
                throw CocycleViolation("cocycle phase at (" + std::to_string(gamma) + "," +
                                       std::to_string(y) + ") is not a d x d unitary");
    }
    for (int y = 0; y < n_cover; ++y)
        if (max_abs(c.phases[g.identity_index][y] - Matrix::Identity(d, d)) > 1e-12)
            throw CocycleViolation("Psi_e is not the identity at vertex " + std::to_string(y));
    // Composition rule Psi_{g1}(g2.y) Psi_{g2}(y) = Psi_{g1 g2}(y).
    auto act = [&](int gamma, int y) {
        return g.mul(gamma, y / q.n_vertices) * q.n_vertices + y % q.n_vertices;
    };
    for (int g1 = 0; g1 < g.order; ++g1)
        for (int g2 = 0; g2 < g.order; ++g2)
            for (int y = 0; y < n_cover; ++y)
                if (max_abs(c.phases[g1][act(g2, y)] * c.phases[g2][y] -
                            c.phases[g.mul(g1, g2)][y]) > 1e-12)
                    throw CocycleViolation("composition rule fails at (" + std::to_string(g1) +
                                           "," + std::to_string(g2) + "," + std::to_string(y) + ")");
    return c;
}

}  // namespace detail

/// Assemble the covering model. The lifted operator is the graph Bochner
/// Laplacian: diagonal blocks (degree * weighting) I + potential, off-diagonal
/// blocks -hopping conjugated by the cocycle frame.
inline CoveringModel build_covering_model(const QuotientModel& q, const CocycleSpec& spec) {
    const FiniteGroup& grp = q.group;
    const int n_f = q.n_vertices;
    const int d = q.fiber_dim;
    const int n_cover = grp.order * n_f;
    const int dim = n_cover * d;
    if (static_cast<int>(q.potential.size()) != n_f)
        throw DimensionMismatch("potential list does not match vertex count");
    for (const auto& p : q.potential)
        if (p.rows() != d || !is_hermitian(p))
            throw Error("potential matrix is not d x d Hermitian");

    Cocycle cocycle = detail::make_cocycle(q, spec);

    // Directed block assignments of the trivial-cocycle lift, keyed by
    // (edge id, row vertex, col vertex). The same covering edge can be reached
    // from several deck elements; those placements must agree, not accumulate.
    std::map<std::tuple<int, int, int>, Matrix> assign;
    auto place = [&](int e, int y1, int y2, const Matrix& m) {
        auto key = std::make_tuple(e, y1, y2);
        auto it = assign.find(key);
        if (it == assign.end()) {
            assign.emplace(key, m);
        } else if (max_abs(it->second - m) > 1e-12) {
            throw InvalidEdge("inconsistent lift of edge " + std::to_string(e));
        }
    };
    for (size_t e = 0; e < q.edges.size(); ++e) {
        const auto& edge = q.edges[e];
        if (edge.u < 0 || edge.u >= n_f || edge.v < 0 || edge.v >= n_f)
            throw InvalidEdge("edge " + std::to_string(e) + " endpoint out of range");
        if (edge.hopping.rows() != d || edge.hopping.cols() != d)
            throw DimensionMismatch("edge " + std::to_string(e) + " hopping has wrong shape");
        if (max_abs(edge.hopping) == 0.0)
            throw InvalidEdge("edge " + std::to_string(e) + " has zero hopping");
        for (int g = 0; g < grp.order; ++g) {
            int y1 = g * n_f + edge.u;
            int y2 = grp.mul(g, edge.lift) * n_f + edge.v;
            place(static_cast<int>(e), y1, y2, -edge.hopping);
            place(static_cast<int>(e), y2, y1, -edge.hopping.adjoint());
        }
    }

    // Connectivity of the covering graph.
    {
        std::vector<int> parent(n_cover);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
            return parent[x] == x ? x : parent[x] = find(parent[x]);
        };
        for (const auto& [key, m] : assign)
            parent[find(std::get<1>(key))] = find(std::get<2>(key));
        for (int y = 1; y < n_cover; ++y)
            if (find(y) != find(0)) throw DisconnectedCover("covering graph is not connected");
    }

    std::vector<int> degree(n_cover, 0);
    Matrix h0 = Matrix::Zero(dim, dim);
    for (const auto& [key, m] : assign) {
        int y1 = std::get<1>(key), y2 = std::get<2>(key);
        h0.block(y1 * d, y2 * d, d, d) += m;
        if (y1 != y2) degree[y1] += 1;
    }
    for (int y = 0; y < n_cover; ++y) {
        int v = y % n_f;
        h0.block(y * d, y * d, d, d) +=
            degree[y] * q.weighting * Matrix::Identity(d, d) + q.potential[v];
    }

    // Every cocycle over a free finite action is the coboundary of the frame
    // U(g, v) = Psi_g(e, v), so conjugating the trivial lift by that frame
    // gives an operator commuting with every magnetic translation exactly.
    Matrix frame = Matrix::Identity(dim, dim);
    bool nontrivial = false;
    for (int y = 0; y < n_cover; ++y) {
        int g = y / n_f, v = y % n_f;
        const Matrix& u = cocycle.at(g, grp.identity_index * n_f + v);
        frame.block(y * d, y * d, d, d) = u;
        if (max_abs(u - Matrix::Identity(d, d)) > 0) nontrivial = true;
    }
    CoveringModel m;
    m.quotient = q;
    m.cocycle = std::move(cocycle);
    m.h_tilde = nontrivial ? Matrix(frame * h0 * frame.adjoint()) : h0;
    m.h_tilde = 0.5 * (m.h_tilde + m.h_tilde.adjoint());  // kill rounding skew
    return m;
}

/// W_gamma with (W_gamma f)(gamma.y) = Psi_gamma(y) f(y).
inline Matrix magnetic_translation(const CoveringModel& m, int gamma) {
    const int d = m.fiber_dim();
    Matrix w = Matrix::Zero(m.dim(), m.dim());
    for (int y = 0; y < m.n_cover(); ++y)
        w.block(m.act(gamma, y) * d, y * d, d, d) = m.cocycle.at(gamma, y);
    return w;
}

/// A section of the associated bundle: a (d * dim Lambda)-vector per covering
/// vertex, with the fiber index slower than the representation index.
struct EquivariantSection {
    std::vector<Vector> values;
    int irrep = 0;
};

/// Averaging map: phi(y) = sum_gamma (Psi_gamma(g^{-1}y) (x) Lambda(gamma)) sigma(gamma^{-1}y).
inline EquivariantSection averaging_phi_lambda(const CoveringModel& m, const DualSpace& dual,
                                               int irrep, const std::vector<Vector>& sigma) {
    const auto& rep = dual.irreps[irrep];
    const int d = m.fiber_dim(), dl = rep.dim;
    if (static_cast<int>(sigma.size()) != m.n_cover())
        throw DimensionMismatch("section not defined on all covering vertices");
    EquivariantSection out;
    out.irrep = irrep;
    out.values.assign(m.n_cover(), Vector::Zero(d * dl));
    for (int y = 0; y < m.n_cover(); ++y)
        for (int gamma = 0; gamma < m.group_order(); ++gamma) {
            int y0 = m.act(m.quotient.group.inv(gamma), y);
            out.values[y] += kron(m.cocycle.at(gamma, y0), rep(gamma)) * sigma[y0];
        }
    return out;
}

/// Per-irrep Bloch components Phi[f](Lambda)(y), one d x (dl x dl) stack per
/// covering vertex: entry (i, a, b) = sum_gamma [Psi_gamma f(gamma^{-1}y)]_i Lambda(gamma)_ab.
struct BlochField {
    std::vector<std::vector<std::vector<Matrix>>> components;  // [irrep][y][fiber i]
};

inline BlochField bloch_transform(const CoveringModel& m, const DualSpace& dual,
                                  const Vector& f) {
    const int d = m.fiber_dim();
    if (f.size() != m.dim()) throw DimensionMismatch("input vector has wrong length");
    BlochField out;
    out.components.resize(dual.size());
    for (int l = 0; l < dual.size(); ++l) {
        const auto& rep = dual.irreps[l];
        out.components[l].assign(m.n_cover(),
                                 std::vector<Matrix>(d, Matrix::Zero(rep.dim, rep.dim)));
        for (int y = 0; y < m.n_cover(); ++y)
            for (int gamma = 0; gamma < m.group_order(); ++gamma) {
                int y0 = m.act(m.quotient.group.inv(gamma), y);
                Vector val = m.cocycle.at(gamma, y0) * f.segment(y0 * d, d);
                for (int i = 0; i < d; ++i)
                    out.components[l][y][i] += val[i] * rep(gamma);
            }
    }
    return out;
}

/// Weighted norm of a Bloch field restricted to the identity sheet; equals
/// the l2 norm of the original vector (Plancherel).
inline double bloch_field_norm(const CoveringModel& m, const DualSpace& dual,
                               const BlochField& field) {
    double s = 0.0;
    const int e = m.quotient.group.identity_index;
    for (int l = 0; l < dual.size(); ++l)
        for (int v = 0; v < m.quotient.n_vertices; ++v)
            for (const auto& mat : field.components[l][m.cover_index(e, v)])
                s += dual.weights[l] * mat.squaredNorm();
    return std::sqrt(s);
}

/// Equivariant extension from identity-sheet values: basis ordered by
/// (vertex, fiber, irrep column); returns the (N dl) x (n_F d dl) matrix E
/// with phi(g, v) = (Psi_g(e, v) (x) Lambda(g)) phi(e, v).
inline Matrix equivariant_extension(const CoveringModel& m, const DualSpace& dual, int irrep) {
    const auto& rep = dual.irreps[irrep];
    const int d = m.fiber_dim(), dl = rep.dim, n_f = m.quotient.n_vertices;
    const int e = m.quotient.group.identity_index;
    Matrix ext = Matrix::Zero(m.dim() * dl, n_f * d * dl);
    for (int g = 0; g < m.group_order(); ++g)
        for (int v = 0; v < n_f; ++v) {
            Matrix block = kron(m.cocycle.at(g, m.cover_index(e, v)), rep(g));
            ext.block(m.cover_index(g, v) * d * dl, v * d * dl, d * dl, d * dl) = block;
        }
    return ext;
}

/// H^Lambda on the identity-sheet basis: restriction of (h_tilde (x) 1) to the
/// equivariant subspace.
inline Matrix build_h_lambda(const CoveringModel& m, const DualSpace& dual, int irrep) {
    const int dl = dual.irreps[irrep].dim;
    const int d = m.fiber_dim(), n_f = m.quotient.n_vertices;
    Matrix ext = equivariant_extension(m, dual, irrep);
    Matrix big = kron(m.h_tilde, Matrix::Identity(dl, dl));
    Matrix applied = big * ext;
    // Read off the identity sheet.
    const int e = m.quotient.group.identity_index;
    Matrix h(n_f * d * dl, n_f * d * dl);
    for (int v = 0; v < n_f; ++v)
        h.middleRows(v * d * dl, d * dl) = applied.middleRows(m.cover_index(e, v) * d * dl, d * dl);
    return 0.5 * (h + Matrix(h.adjoint()));
}

}  // namespace bloch
