#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bloch/decomposition.hpp"

using namespace bloch;

namespace {

CoveringModel z2_two_sheet(double c) {
    QuotientModel q;
    q.n_vertices = 1;
    q.fiber_dim = 1;
    q.group = validate_group({{0, 1}, {1, 0}});
    Matrix pot(1, 1);
    pot(0, 0) = c;
    q.potential = {pot};
    q.weighting = 0.0;
    QuotientEdge e;
    e.u = 0;
    e.v = 0;
    e.lift = 1;
    e.hopping = Matrix::Identity(1, 1);
    q.edges = {e};
    return build_covering_model(q, CocycleSpec::trivial());
}

CoveringModel s3_model(std::mt19937_64* rng = nullptr) {
    QuotientModel q;
    q.n_vertices = 2;
    q.fiber_dim = 1;
    q.group = symmetric_group_3();
    Matrix p0(1, 1), p1(1, 1);
    p0(0, 0) = 0.3;
    p1(0, 0) = -0.2;
    q.potential = {p0, p1};
    QuotientEdge e1;
    e1.u = 0;
    e1.v = 1;
    e1.lift = 0;
    e1.hopping = Matrix::Identity(1, 1);
    QuotientEdge e2;
    e2.u = 1;
    e2.v = 0;
    e2.lift = 1;
    e2.hopping = Matrix(1, 1);
    e2.hopping(0, 0) = Complex(0.5, 0.25);
    QuotientEdge e3;
    e3.u = 0;
    e3.v = 0;
    e3.lift = 3;
    e3.hopping = Matrix(1, 1);
    e3.hopping(0, 0) = 0.7;
    q.edges = {e1, e2, e3};
    CocycleSpec spec = rng ? CocycleSpec::random_u1(q.group, q.n_vertices, *rng)
                           : CocycleSpec::trivial();
    return build_covering_model(q, spec);
}

}  // namespace

TEST_CASE("Z2 loop model splits into the scalars c - 1 and c + 1") {
    CoveringModel m = z2_two_sheet(3.0);
    BlockDecomposition bd = decompose(m, dual_cyclic(2));
    REQUIRE(bd.blocks.size() == 2);
    CHECK(std::abs(bd.blocks[0](0, 0) - Complex(2.0)) < 1e-13);
    CHECK(std::abs(bd.blocks[1](0, 0) - Complex(4.0)) < 1e-13);
}

TEST_CASE("Phi is unitary and conjugates H to the block form") {
    std::mt19937_64 rng(37);
    CoveringModel m = s3_model(&rng);
    DualSpace dual = dual_s3();
    BlockDecomposition bd = decompose(m, dual);
    CHECK(is_unitary(bd.phi, 1e-11));
    Matrix conj = bd.phi * m.h_tilde * bd.phi.adjoint();
    CHECK(max_abs(conj - bd.block_diagonal()) < 1e-10);
}

TEST_CASE("eigenvalue multiset of the blocks matches the full operator") {
    std::mt19937_64 rng(41);
    CoveringModel m = s3_model(&rng);
    DualSpace dual = dual_s3();
    BlockDecomposition bd = decompose(m, dual);
    std::vector<double> collected;
    for (size_t l = 0; l < bd.blocks.size(); ++l) {
        RealVector ev = sorted_eigenvalues(bd.blocks[l]);
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            for (int copy = 0; copy < bd.multiplicities[l]; ++copy)
                collected.push_back(ev[i]);
    }
    std::sort(collected.begin(), collected.end());
    RealVector full = sorted_eigenvalues(m.h_tilde);
    REQUIRE(static_cast<Eigen::Index>(collected.size()) == full.size());
    for (Eigen::Index i = 0; i < full.size(); ++i)
        CHECK(std::abs(collected[i] - full[i]) < 1e-8);
}

TEST_CASE("evolution factors block-decompose the full evolution") {
    std::mt19937_64 rng(43);
    CoveringModel m = s3_model(&rng);
    DualSpace dual = dual_s3();
    BlockDecomposition bd = decompose(m, dual);
    for (double t : {0.3, 1.0}) {
        for (EvolutionKind kind : {EvolutionKind::Unitary, EvolutionKind::Semigroup}) {
            Complex scale = kind == EvolutionKind::Unitary ? Complex(0.0, -t) : Complex(-t, 0.0);
            Matrix full = hermitian_exp(m.h_tilde, scale);
            std::vector<Matrix> factors = evolution_decompose(bd, t, kind);
            Matrix assembled = Matrix::Zero(m.dim(), m.dim());
            for (size_t l = 0; l < factors.size(); ++l) {
                int sz = factors[l].rows() * bd.multiplicities[l];
                assembled.block(bd.offsets[l], bd.offsets[l], sz, sz) =
                    kron(factors[l], Matrix::Identity(bd.multiplicities[l], bd.multiplicities[l]));
            }
            CHECK(max_abs(bd.phi * full * bd.phi.adjoint() - assembled) < 1e-10);
        }
    }
    CHECK_THROWS_AS(evolution_decompose(bd, 0.0, EvolutionKind::Semigroup), NonPositiveTime);
}

TEST_CASE("propagator reconstruction from the periodic kernel matches the direct kernel") {
    std::mt19937_64 rng(47);
    CoveringModel m = s3_model(&rng);
    DualSpace dual = dual_s3();
    const double t = 0.8;
    for (int l = 0; l < dual.size(); ++l) {
        KernelTable direct =
            direct_equivariant_kernel(m, dual, l, KernelKind::Propagator, Complex(t, 0.0));
        for (bool second : {false, true}) {
            KernelTable rec = reconstruct_propagator(m, dual, l, t, second);
            for (int y1 = 0; y1 < m.n_cover(); ++y1)
                for (int y2 = 0; y2 < m.n_cover(); ++y2)
                    CHECK(max_abs(rec.at(y1, y2) - direct.at(y1, y2)) < 1e-10);
        }
    }
}

TEST_CASE("Green reconstruction matches and guards the spectrum") {
    std::mt19937_64 rng(53);
    CoveringModel m = s3_model(&rng);
    DualSpace dual = dual_s3();
    const Complex z(-0.7, 0.4);
    for (int l = 0; l < dual.size(); ++l) {
        KernelTable direct = direct_equivariant_kernel(m, dual, l, KernelKind::Green, z);
        KernelTable rec = reconstruct_green(m, dual, l, z);
        for (int y1 = 0; y1 < m.n_cover(); ++y1)
            for (int y2 = 0; y2 < m.n_cover(); ++y2)
                CHECK(max_abs(rec.at(y1, y2) - direct.at(y1, y2)) < 1e-10);
    }
    RealVector ev = sorted_eigenvalues(m.h_tilde);
    CHECK_THROWS_AS(reconstruct_green(m, dual, 0, Complex(ev[0], 0.0)),
                    SpectralParameterInSpectrum);
}

TEST_CASE("kernel pairing of the reconstruction is the Fourier transform of the periodic pairing") {
    std::mt19937_64 rng(59);
    CoveringModel m = s3_model(&rng);
    DualSpace dual = dual_s3();
    const double t = 0.5;
    KernelTable periodic = periodic_kernel(m, KernelKind::Propagator, Complex(t, 0.0));
    Vector phi1 = random_complex_vector(m.dim(), rng);
    Vector phi2 = random_complex_vector(m.dim(), rng);
    GroupFunction f = periodic_kernel_pairing(m, periodic, phi1, phi2);
    DualField fh = fourier(dual, f);
    for (int l = 0; l < dual.size(); ++l) {
        KernelTable rec = reconstruct_propagator(m, dual, l, t);
        Matrix paired = kernel_pairing(m, dual, rec, phi1, phi2);
        CHECK(max_abs(paired - fh.components[l][0]) < 1e-9);
    }
}
