#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "twogrid/blocksys.hpp"
#include "twogrid/matgen.hpp"
#include "twogrid/rng.hpp"
#include "twogrid/smoother.hpp"
#include "twogrid/twogrid.hpp"

using namespace twogrid;
using Catch::Matchers::WithinAbs;

namespace {

struct PencilSetup {
    DenseMatrix op;
    Smoother smoother;
    Spectrum spectrum;
};

PencilSetup spd_setup(int grid) {
    PencilSetup s;
    s.op = to_dense(poisson_2d(grid));
    s.smoother = build_kaczmarz(s.op);
    s.spectrum = generalized_eig(s.op, s.smoother.m_sym, 1e-8);
    return s;
}

PencilSetup block_setup(int grid) {
    PencilSetup s;
    s.op = to_dense(build_block(advdiff_2d(grid, 0.1, ProblemSpec::default_advection())).block);
    s.smoother = build_kaczmarz(s.op);
    s.spectrum = generalized_eig(s.op, s.smoother.m_sym, 1e-8);
    return s;
}

} // namespace

TEST_CASE("optimal interpolation with a full coarse space solves exactly", "[twogrid]") {
    const PencilSetup s = spd_setup(3);
    const Index n = s.op.rows();
    const Interpolation p = optimal_interpolation(s.spectrum, n);
    const DenseMatrix e = two_grid_error(s.op, s.smoother.m_sym, p);
    CHECK(e.cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("optimal interpolation range checks", "[twogrid]") {
    const PencilSetup s = spd_setup(2);
    CHECK_THROWS_AS(optimal_interpolation(s.spectrum, 0), std::invalid_argument);
    CHECK_THROWS_AS(optimal_interpolation(s.spectrum, 5), std::invalid_argument);
    CHECK(optimal_interpolation(s.spectrum, 2).kind == InterpKind::optimal);
}

TEST_CASE("rank-deficient interpolation is rejected", "[twogrid]") {
    DenseMatrix p(3, 2);
    p << 1.0, 2.0, 1.0, 2.0, 1.0, 2.0;   // second column is a multiple of the first
    CHECK_THROWS_AS(make_interpolation(p, InterpKind::custom), numerical_error);
}

TEST_CASE("ideal interpolation 2x2 hand computation", "[twogrid]") {
    DenseMatrix a(2, 2);
    a << 2.0, -1.0, -1.0, 2.0;
    const CfSplit split{{0}, {1}};
    const Interpolation p = ideal_interpolation(a, split);
    REQUIRE(p.n_c == 1);
    CHECK_THAT(p.p(0, 0), WithinAbs(0.5, 1e-15));
    CHECK_THAT(p.p(1, 0), WithinAbs(1.0, 1e-15));
}

TEST_CASE("ideal interpolation of a diagonal operator picks coordinate columns", "[twogrid]") {
    DenseMatrix a = DenseMatrix::Zero(4, 4);
    for (Index i = 0; i < 4; ++i) a(i, i) = double(i + 1);
    const CfSplit split = cf_split_every_other(4, 2);
    const Interpolation p = ideal_interpolation(a, split);
    for (std::size_t j = 0; j < split.c_indices.size(); ++j) {
        for (Index i = 0; i < 4; ++i)
            CHECK(p.p(i, static_cast<Index>(j)) == (i == split.c_indices[j] ? 1.0 : 0.0));
    }
}

TEST_CASE("Galerkin product with ideal interpolation stays SPD", "[twogrid]") {
    const DenseMatrix a = to_dense(poisson_2d(2));
    const Interpolation p = ideal_interpolation(a, cf_split_every_other(4, 2));
    const DenseMatrix ac = coarse_operator(a, p);
    CHECK(oracles::sym_eigenvalues(ac)[0] > 0.0);
}

TEST_CASE("cf_split_every_other reference splits", "[twogrid]") {
    const CfSplit s1 = cf_split_every_other(4, 2);
    CHECK(s1.c_indices == std::vector<Index>{1, 3});
    CHECK(s1.f_indices == std::vector<Index>{0, 2});

    const CfSplit s2 = cf_split_every_other(5, 2);
    CHECK(s2.c_indices == std::vector<Index>{1, 3});
    CHECK(s2.f_indices == std::vector<Index>{0, 2, 4});

    const CfSplit s3 = cf_split_every_other(6, 3);
    CHECK(s3.c_indices == std::vector<Index>{2, 5});
    CHECK(s3.f_indices == std::vector<Index>{0, 1, 3, 4});

    CHECK_THROWS_AS(cf_split_every_other(2, 3), std::invalid_argument);   // empty C
    CHECK_THROWS_AS(cf_split_every_other(1, 2), std::invalid_argument);
}

TEST_CASE("coarse operator of a coordinate vector is the matching diagonal entry", "[twogrid]") {
    const DenseMatrix a = to_dense(poisson_2d(2));
    DenseMatrix e2 = DenseMatrix::Zero(4, 1);
    e2(2, 0) = 1.0;
    const DenseMatrix ac = coarse_operator(a, make_interpolation(e2, InterpKind::custom));
    REQUIRE(ac.rows() == 1);
    CHECK(ac(0, 0) == a(2, 2));
}

TEST_CASE("coarse operator in the spectral basis is the eigenvalue diagonal", "[twogrid]") {
    const PencilSetup s = block_setup(4);
    const Index n = s.op.rows();

    SECTION("leading columns") {
        const Index nc = n / 4;
        const Interpolation p = optimal_interpolation(s.spectrum, nc);
        const DenseMatrix ac = coarse_operator(s.op, p);
        for (Index i = 0; i < nc; ++i)
            for (Index j = 0; j < nc; ++j) {
                const double expected =
                    i == j ? s.spectrum.norm_signs[static_cast<std::size_t>(i)] *
                                 s.spectrum.values[static_cast<std::size_t>(i)]
                           : 0.0;
                CHECK_THAT(ac(i, j), WithinAbs(expected, 1e-8));
            }
    }
    SECTION("full basis") {
        const Interpolation p = optimal_interpolation(s.spectrum, n);
        const DenseMatrix ac = coarse_operator(s.op, p);
        for (Index i = 0; i < n; ++i)
            CHECK_THAT(ac(i, i),
                       WithinAbs(s.spectrum.norm_signs[static_cast<std::size_t>(i)] *
                                     s.spectrum.values[static_cast<std::size_t>(i)],
                                 1e-8));
    }
}

TEST_CASE("inadmissible coarse space is a hard error", "[twogrid]") {
    // Coordinate coarse vector on the block pairing hits a zero diagonal.
    const DenseMatrix a =
        to_dense(build_block(advdiff_2d(2, 0.1, ProblemSpec::default_advection())).block);
    DenseMatrix e1 = DenseMatrix::Zero(a.rows(), 1);
    e1(0, 0) = 1.0;
    CHECK_THROWS_AS(coarse_operator(a, make_interpolation(e1, InterpKind::custom)),
                    numerical_error);
}

TEST_CASE("two-grid propagator annihilates the coarse eigenvectors", "[twogrid]") {
    const PencilSetup s = block_setup(6);
    const Index n = s.op.rows();
    for (Index nc : {n / 8, n / 4, n / 2}) {
        const Interpolation p = optimal_interpolation(s.spectrum, nc);
        const DenseMatrix e = two_grid_error(s.op, s.smoother.m_sym, p);
        const double ann = (e * s.spectrum.vectors.leftCols(nc)).norm() / s.spectrum.vectors.norm();
        INFO("nc = " << nc);
        CHECK(ann <= 1e-8);
    }
}

TEST_CASE("two-grid propagator acts diagonally on the remaining eigenvectors", "[twogrid]") {
    const PencilSetup s = block_setup(4);
    const Index n = s.op.rows();
    const Index nc = n / 4;
    const Interpolation p = optimal_interpolation(s.spectrum, nc);
    const DenseMatrix e = two_grid_error(s.op, s.smoother.m_sym, p);

    // E V = [0 | S](I - Lambda): column i >= nc maps to (1 - lambda_i) v_i.
    const DenseMatrix ev = e * s.spectrum.vectors;
    for (Index i = nc; i < n; ++i) {
        const double factor = 1.0 - s.spectrum.values[static_cast<std::size_t>(i)];
        CHECK((ev.col(i) - factor * s.spectrum.vectors.col(i)).norm() <=
              1e-8 * s.spectrum.vectors.norm());
    }
}

TEST_CASE("range invariance of the two-grid propagator", "[twogrid]") {
    const PencilSetup s = spd_setup(3);
    const Index nc = 4;
    const Interpolation p = optimal_interpolation(s.spectrum, nc);
    const DenseMatrix e_ref = two_grid_error(s.op, s.smoother.m_sym, p);

    Rng rng(33);
    DenseMatrix g(nc, nc);
    for (Index i = 0; i < nc; ++i)
        for (Index j = 0; j < nc; ++j) g(i, j) = rng.uniform_pm1();
    g += 3.0 * DenseMatrix::Identity(nc, nc);   // keep it well conditioned

    const Interpolation pg = make_interpolation(p.p * g, InterpKind::custom);
    const DenseMatrix e_alt = two_grid_error(s.op, s.smoother.m_sym, pg);
    CHECK((e_ref - e_alt).norm() <= 1e-8 * std::max(1.0, e_ref.norm()));
}

TEST_CASE("Galerkin coarse operator inherits symmetry", "[twogrid]") {
    const PencilSetup s = block_setup(3);
    const Interpolation p = optimal_interpolation(s.spectrum, s.op.rows() / 2);
    const DenseMatrix ac = coarse_operator(s.op, p);
    CHECK((ac - ac.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * ac.cwiseAbs().maxCoeff());
}

TEST_CASE("pre/post-smoothed propagator reference cases", "[twogrid]") {
    const PencilSetup s = spd_setup(3);
    const Index n = s.op.rows();
    const Index nc = 3;
    const Interpolation p = optimal_interpolation(s.spectrum, nc);

    SECTION("exact solve as smoother gives E = 0") {
        const DenseMatrix e = two_grid_error_prepost(s.op, s.op, p, p.p.transpose());
        CHECK(e.cwiseAbs().maxCoeff() <= 1e-10);
    }
    SECTION("full coarse space gives E = 0") {
        const Interpolation pf = optimal_interpolation(s.spectrum, n);
        const DenseMatrix e = two_grid_error_prepost(s.op, s.smoother.m, pf, pf.p.transpose());
        CHECK(e.cwiseAbs().maxCoeff() <= 1e-9);
    }
    SECTION("spectral radius tracks the one-sided form") {
        const DenseMatrix e_pp = two_grid_error_prepost(s.op, s.smoother.m, p, p.p.transpose());
        const DenseMatrix e_one = two_grid_error(s.op, s.smoother.m_sym, p);
        const double rho_pp =
            Eigen::EigenSolver<DenseMatrix>(e_pp).eigenvalues().cwiseAbs().maxCoeff();
        const double rho_one =
            Eigen::EigenSolver<DenseMatrix>(e_one).eigenvalues().cwiseAbs().maxCoeff();
        CHECK(std::abs(rho_pp - rho_one) <= 0.05);
    }
}

TEST_CASE("projection in the smoother form", "[twogrid]") {
    const PencilSetup s = spd_setup(3);
    const Interpolation p = optimal_interpolation(s.spectrum, 4);
    const DenseMatrix proj = m_projection(p, s.smoother.m_sym);

    CHECK((proj * proj - proj).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((proj * p.p - p.p).cwiseAbs().maxCoeff() <= 1e-10);

    DenseMatrix e1 = DenseMatrix::Zero(3, 1);
    e1(0, 0) = 1.0;
    const DenseMatrix tiny =
        m_projection(make_interpolation(e1, InterpKind::custom), DenseMatrix::Identity(3, 3));
    DenseMatrix expected = DenseMatrix::Zero(3, 3);
    expected(0, 0) = 1.0;
    CHECK((tiny - expected).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("kappa reference values", "[twogrid]") {
    SECTION("vector in range(P) gives zero") {
        const PencilSetup s = spd_setup(3);
        const Interpolation p = optimal_interpolation(s.spectrum, 4);
        const Vector v = p.p.col(1);
        CHECK(kappa(p, v, s.op, s.smoother.m_sym) <= 1e-12);
    }
    SECTION("identity forms with a coordinate interpolation") {
        DenseMatrix e1 = DenseMatrix::Zero(2, 1);
        e1(0, 0) = 1.0;
        const Interpolation p = make_interpolation(e1, InterpKind::custom);
        Vector e2 = Vector::Zero(2);
        e2(1) = 1.0;
        CHECK_THAT(kappa(p, e2, DenseMatrix::Identity(2, 2), DenseMatrix::Identity(2, 2)),
                   WithinAbs(1.0, 1e-14));
    }
    SECTION("extremal eigenvector attains 1/lambda_{nc+1}") {
        const PencilSetup s = spd_setup(4);
        const Index nc = 5;
        const Interpolation p = optimal_interpolation(s.spectrum, nc);
        const Vector v = s.spectrum.vectors.col(nc);
        const double k = kappa(p, v, s.op, s.smoother.m_sym);
        CHECK_THAT(k, WithinAbs(1.0 / s.spectrum.values[static_cast<std::size_t>(nc)], 1e-8));
    }
    SECTION("preconditions") {
        const PencilSetup s = spd_setup(2);
        const Interpolation p = optimal_interpolation(s.spectrum, 2);
        CHECK_THROWS_AS(kappa(p, Vector::Zero(4), s.op, s.smoother.m_sym), std::invalid_argument);
        DenseMatrix indef = DenseMatrix::Identity(4, 4);
        indef(0, 0) = -1.0;
        CHECK_THROWS_AS(kappa(p, Vector::Ones(4), indef, s.smoother.m_sym), numerical_error);
    }
}

TEST_CASE("anorm reference values", "[twogrid]") {
    const DenseMatrix a = to_dense(poisson_2d(2));
    CHECK(anorm_of_operator(DenseMatrix::Zero(4, 4), a) == 0.0);
    CHECK_THAT(anorm_of_operator(DenseMatrix::Identity(4, 4), a), WithinAbs(1.0, 1e-12));
    DenseMatrix indef = DenseMatrix::Identity(4, 4);
    indef(1, 1) = -2.0;
    CHECK_THROWS_AS(anorm_of_operator(DenseMatrix::Identity(4, 4), indef), numerical_error);
}

TEST_CASE("energy-norm identity for the minimal-rate interpolation", "[twogrid]") {
    // || E ||_A^2 with one plain smoothing sweep equals 1 - lambda_{nc+1};
    // the symmetrized-smoother propagator realizes the same number as its
    // plain A-norm.
    for (int grid : {4, 8}) {
        const PencilSetup s = spd_setup(grid);
        const Index n = s.op.rows();
        const std::vector<Index> nc_values =
            grid == 4 ? std::vector<Index>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}
                      : std::vector<Index>{1, 8, 16, 32, 48, 63};
        for (const Index nc : nc_values) {
            if (nc >= n) continue;
            const Interpolation p = optimal_interpolation(s.spectrum, nc);
            const double lambda_next = s.spectrum.values[static_cast<std::size_t>(nc)];

            const DenseMatrix e_single = two_grid_error_presmooth(s.op, s.smoother.m, p);
            const double norm_single = anorm_of_operator(e_single, s.op);
            INFO("grid=" << grid << " nc=" << nc);
            CHECK_THAT(norm_single * norm_single, WithinAbs(1.0 - lambda_next, 1e-8));

            const DenseMatrix e_sym = two_grid_error(s.op, s.smoother.m_sym, p);
            CHECK_THAT(anorm_of_operator(e_sym, s.op), WithinAbs(1.0 - lambda_next, 1e-8));
        }
    }
}
