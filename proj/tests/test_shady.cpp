#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jsr/errors.hpp"
#include "jsr/linalg.hpp"
#include "jsr/matset.hpp"
#include "jsr/rng.hpp"
#include "jsr/shady.hpp"

using namespace jsr;

namespace {

int numerical_rank(const Matrix& a, double rel_tol = 1e-6) {
    const SymmetricEigen e = symmetric_eigen(a.transposed() * a);
    const double top = std::max(e.values.back(), 0.0);
    int r = 0;
    for (double v : e.values)
        if (v > rel_tol * rel_tol * top) ++r;
    return r;
}

Matrix random_conditioned(Rng& rng, int d, double max_cond = 1e3) {
    while (true) {
        Matrix t(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) t(i, j) = rng.uniform(-1.0, 1.0);
        const double c = condition_estimate(t);
        if (std::isfinite(c) && c <= max_cond) return t;
    }
}

}  // namespace

TEST_CASE("icosahedron catalog is exact") {
    const IcosahedronCatalog& cat = icosahedron_catalog();
    CHECK(cat.orbit_sizes == std::vector<int>{6, 6, 2, 6});
    CHECK(cat.vertices.size() == 6);

    int facet_count = 0;
    int incident_total = 0;
    for (const auto& orbit : cat.orbits)
        for (const auto& w : orbit) {
            ++facet_count;
            for (const auto& v : cat.vertices) {
                const Rat plus = w[0] * v[0] + w[1] * v[1] + w[2] * v[2];
                // zero-tolerance checks in exact arithmetic
                CHECK(plus <= Rat(1));
                CHECK(Rat(-1) <= plus);
                if (plus == Rat(1) || plus == Rat(-1)) ++incident_total;
            }
        }
    CHECK(facet_count == 20);
    CHECK(incident_total == 60);  // 20 triangles, 3 signed vertices each

    // the diagonal seed flips sign under the symmetry: orbit of size 2
    CHECK(cat.orbit_sizes[2] == 2);

    // <(10/9,10/9,10/9), (c,1,a)> = 5/9, not incident
    const Rat probe = Rat(10, 9) * (Rat(1, 10) + Rat(1) + Rat(-3, 5));
    CHECK(probe == Rat(5, 9));
    CHECK(probe != Rat(1));
}

TEST_CASE("icosahedron ball counts") {
    const PolytopalNorm ico = icosahedron_norm();
    CHECK(ico.ball().vertex_count() == 12);
    CHECK(ico.ball().facet_count() == 20);
    // the signed cyclic symmetry has operator norm one: it maps K to K
    const Matrix sym{{0, 0, -1}, {-1, 0, 0}, {0, -1, 0}};
    CHECK(operator_norm(sym, ico) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("face-to-vertex maps") {
    const PolytopalNorm cube = make_cube(3);
    const RankOneMap m = face_to_vertex_map(cube, 0, 0);  // facet e1, vertex (1,1,1)
    CHECK(approx_equal(m.matrix, outer({1, 1, 1}, {1, 0, 0}), 0.0));
    CHECK(operator_norm(m.matrix, cube) == doctest::Approx(1.0));
    // the vertex lies on the facet, so it is a fixed point
    CHECK(approx_equal(m.matrix * Vec{1, 1, 1}, {1, 1, 1}, 1e-12));

    const PolytopalNorm ico = icosahedron_norm();
    const auto& facets = ico.ball().facet_reps();
    int diag_facet = -1;
    for (size_t f = 0; f < facets.size(); ++f)
        if (approx_equal(facets[f], {10.0 / 9, 10.0 / 9, 10.0 / 9}, 1e-12))
            diag_facet = static_cast<int>(f);
    REQUIRE(diag_facet >= 0);
    const RankOneMap mi = face_to_vertex_map(ico, diag_facet, 0);
    CHECK(operator_norm(mi.matrix, ico) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(numerical_rank(mi.matrix) == 1);

    CHECK_THROWS_AS(face_to_vertex_map(cube, 9, 0), InvalidInputError);
}

TEST_CASE("tailored set of the cube") {
    const PolytopalNorm cube = make_cube(3);
    const MatrixSet set = tailored_matrix_set(cube);
    for (const Matrix& a : set.members()) {
        CHECK(operator_norm(a, cube) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(numerical_rank(a) == 1);
    }
    JsrOptions opt;
    opt.depth = 2;
    opt.norm = &cube;
    const JsrBounds b = jsr_bounds(set, opt);
    CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("icosahedron tailored set") {
    const PolytopalNorm ico = icosahedron_norm();
    const MatrixSet paper = icosahedron_tailored_set();
    const MatrixSet generic = tailored_matrix_set(ico);

    // the deduplicated count is pinned as a regression value
    CHECK(paper.size() == 120);
    CHECK(generic.size() == 120);
    for (const Matrix& a : paper.members()) {
        bool found = false;
        for (const Matrix& b : generic.members())
            if (approx_equal(a, b, 1e-10)) found = true;
        CHECK(found);
    }

    for (const Matrix& a : paper.members())
        CHECK(operator_norm(a, ico) == doctest::Approx(1.0).epsilon(1e-9));

    // norm-1 certificate plus an exact eigenvalue-1 witness close the JSR
    JsrOptions opt;
    opt.depth = 2;
    opt.norm = &ico;
    const JsrBounds b = jsr_bounds(paper, opt);
    CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-9));

    // the rank-one maps generate the full matrix algebra
    CHECK(check_irreducibility(paper).status == Reducibility::irreducible);
}

TEST_CASE("shadiness of the unshady catalogs") {
    CHECK(shadiness_estimate(make_cube(3), 2, 2, 0).value ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(shadiness_estimate(make_cross_polytope(3), 2, 2, 0).value ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(shadiness_estimate(make_cube(3), 1, 2, 0), UnsupportedDimensionError);
}

TEST_CASE("shadiness estimate of the icosahedron") {
    const PolytopalNorm ico = icosahedron_norm();
    const ShadinessEstimate est = shadiness_estimate(ico, 2, 3, 3);
    CHECK(est.value >= 1.01);
    CHECK(est.refined);

    // the argmin really is a rank-2 projection with that norm
    CHECK(approx_equal(est.argmin * est.argmin, est.argmin, 1e-8));
    CHECK(numerical_rank(est.argmin) == 2);
    CHECK(operator_norm(est.argmin, ico) == doctest::Approx(est.value).epsilon(1e-8));
}

TEST_CASE("finer grids never worsen the estimate") {
    const PolytopalNorm ico = icosahedron_norm();
    double prev = std::numeric_limits<double>::infinity();
    for (int g = 0; g <= 2; ++g) {
        const double v = shadiness_estimate(ico, 2, g, 0).value;
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
    // refinement only improves
    CHECK(shadiness_estimate(ico, 2, 2, 2).value <=
          shadiness_estimate(ico, 2, 2, 0).value + 1e-12);
}

TEST_CASE("shadiness is invariant under the ball's signed symmetry") {
    const PolytopalNorm ico = icosahedron_norm();
    const Matrix sym{{0, 0, -1}, {-1, 0, 0}, {0, -1, 0}};
    std::vector<Vec> rotated;
    for (const Vec& v : ico.ball().vertex_reps()) rotated.push_back(sym * v);
    const PolytopalNorm turned(hull_from_points(rotated, 3));
    CHECK(shadiness_estimate(turned, 2, 2, 0).value ==
          doctest::Approx(shadiness_estimate(ico, 2, 2, 0).value).epsilon(1e-9));
}

TEST_CASE("submatrix witness at the identity") {
    const PolytopalNorm ico = icosahedron_norm();
    const MatrixSet set = icosahedron_tailored_set();
    const Witness w = submatrix_witness(set, ico, Matrix::identity(3), {0, 1});
    CHECK(w.alpha >= 1.01);
    CHECK(w.residual <= 1e-8 * w.alpha);

    // cube: coordinate projections have norm exactly one
    const PolytopalNorm cube = make_cube(3);
    const MatrixSet cube_set = tailored_matrix_set(cube);
    const Witness wc = submatrix_witness(cube_set, cube, Matrix::identity(3), {0, 1});
    CHECK(wc.alpha == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(wc.residual <= 1e-10);
}

TEST_CASE("submatrix witness under random similarities") {
    const PolytopalNorm ico = icosahedron_norm();
    const MatrixSet set = icosahedron_tailored_set();
    Rng rng(2024);
    for (int rep = 0; rep < 10; ++rep) {
        const Matrix t = random_conditioned(rng, 3);
        const std::vector<int> patterns[] = {{0, 1}, {0, 2}, {1, 2}};
        for (const std::vector<int>& J : patterns) {
            const Witness w = submatrix_witness(set, ico, t, J);
            CHECK(w.alpha >= 1.01);
            CHECK(w.residual <= 1e-8 * w.alpha * std::max(1.0, norm_inf(w.z)));
        }
    }
}

TEST_CASE("submatrix witness input validation") {
    const PolytopalNorm ico = icosahedron_norm();
    const MatrixSet set = icosahedron_tailored_set();
    CHECK_THROWS_AS(submatrix_witness(set, ico, Matrix(3), {0, 1}), InvalidInputError);
    CHECK_THROWS_AS(submatrix_witness(set, ico, Matrix::identity(3), {0}), InvalidInputError);
    CHECK_THROWS_AS(submatrix_witness(set, ico, Matrix::identity(3), {0, 1, 2}),
                    InvalidInputError);
}
