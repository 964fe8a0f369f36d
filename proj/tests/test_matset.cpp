#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jsr/errors.hpp"
#include "jsr/extremal.hpp"
#include "jsr/linalg.hpp"
#include "jsr/matset.hpp"
#include "jsr/rng.hpp"

using namespace jsr;

namespace {

const double kRho5 = 48.0 + 16.0 * std::sqrt(5.0);  // rho(M)^5 of the worked pair
const double kRho = std::pow(kRho5, 0.2);

Matrix random_matrix(Rng& rng, int d, double scale = 1.0) {
    Matrix m(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = rng.uniform(-scale, scale);
    return m;
}

Matrix nan2x2() {
    Matrix m(2);
    m(1, 1) = std::nan("");
    return m;
}

}  // namespace

TEST_CASE("matrix set validation and deduplication") {
    CHECK_THROWS_AS(MatrixSet(2, {}), InvalidInputError);
    CHECK_THROWS_AS(MatrixSet(2, {Matrix::identity(3)}), DimensionMismatchError);
    Matrix nan2(2);
    nan2(0, 0) = std::nan("");
    CHECK_THROWS_AS(MatrixSet(2, {nan2}), InvalidInputError);

    // exact duplicates merge, sign flips and scalings stay distinct
    const Matrix a{{1, 2}, {3, 4}};
    const MatrixSet m(2, {a, a, -1.0 * a, 2.0 * a});
    CHECK(m.size() == 3);
}

TEST_CASE("spectral radius worked examples") {
    CHECK(spectral_radius(Matrix::identity(2)) == doctest::Approx(1.0).epsilon(1e-12));
    // roots of t^2 - 2t + 4 have modulus sqrt(4) = 2
    CHECK(spectral_radius(Matrix{{6, -4}, {7, -4}}) == doctest::Approx(2.0).epsilon(1e-10));

    const MatrixSet pair = example_pair();
    const Matrix b = product_of(pair, ProductWord{{0, 1, 0, 0, 1}});
    CHECK(approx_equal(b, Matrix{{0, 64}, {-16, 96}}, 1e-12));
    CHECK(spectral_radius(b) == doctest::Approx(kRho5).epsilon(1e-12));

    CHECK_THROWS_AS(spectral_radius(nan2x2()), InvalidInputError);
}

TEST_CASE("enumerate_products counting, ordering, budget") {
    const MatrixSet pair = example_pair();
    int count = 0;
    ProductWord first;
    enumerate_products(pair, 3, [&](const ProductWord& w, const Matrix&) {
        if (count == 0) first = w;
        ++count;
    });
    CHECK(count == 8);
    CHECK(first.letters == std::vector<int>{0, 0, 0});

    const MatrixSet single(2, {Matrix::identity(2)});
    enumerate_products(single, 5, [&](const ProductWord&, const Matrix& p) {
        CHECK(approx_equal(p, Matrix::identity(2), 0.0));
    });

    // the word is read with the rightmost letter applied first
    const Matrix direct = pair[0] * pair[1] * pair[0] * pair[0] * pair[1];
    CHECK(approx_equal(product_of(pair, ProductWord{{0, 1, 0, 0, 1}}), direct, 0.0));

    CHECK_THROWS_AS(enumerate_products(pair, 30, [](const ProductWord&, const Matrix&) {}),
                    ResourceError);
}

TEST_CASE("operator norms on catalog balls") {
    Rng rng(3);
    const PolytopalNorm cube = make_cube(3);
    const PolytopalNorm cross = make_cross_polytope(3);
    for (int rep = 0; rep < 20; ++rep) {
        const Matrix a = random_matrix(rng, 3, 2.0);
        double row_sum = 0.0, col_sum = 0.0;
        for (int i = 0; i < 3; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < 3; ++j) {
                r += std::abs(a(i, j));
                c += std::abs(a(j, i));
            }
            row_sum = std::max(row_sum, r);
            col_sum = std::max(col_sum, c);
        }
        CHECK(operator_norm(a, cube) == doctest::Approx(row_sum).epsilon(1e-12));
        CHECK(operator_norm(a, cross) == doctest::Approx(col_sum).epsilon(1e-12));
    }
}

TEST_CASE("jsr_bounds basics") {
    const MatrixSet id(2, {Matrix::identity(2)});
    const JsrBounds bi = jsr_bounds(id, 3);
    CHECK(bi.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bi.upper == doctest::Approx(1.0).epsilon(1e-12));

    const MatrixSet zero(2, {Matrix(2)});
    const JsrBounds bz = jsr_bounds(zero, 2);
    CHECK(bz.lower == 0.0);
    CHECK(bz.upper == 0.0);

    const JsrBounds bp = jsr_bounds(example_pair(), 5);
    CHECK(bp.lower == doctest::Approx(kRho).epsilon(1e-10));
    CHECK(bp.upper >= bp.lower - 1e-12);
    CHECK(bp.complete);
}

TEST_CASE("jsr_bounds monotonicity in depth") {
    const MatrixSet pair = example_pair();
    double prev_lower = 0.0;
    double prev_upper = std::numeric_limits<double>::infinity();
    for (int depth = 1; depth <= 6; ++depth) {
        const JsrBounds b = jsr_bounds(pair, depth);
        CHECK(b.lower >= prev_lower - 1e-12);
        CHECK(b.upper <= prev_upper + 1e-12);
        CHECK(b.lower <= b.upper + 1e-12);
        prev_lower = b.lower;
        prev_upper = b.upper;
    }
}

TEST_CASE("jsr_bounds scaling covariance") {
    Rng rng(11);
    for (int rep = 0; rep < 5; ++rep) {
        const MatrixSet m(2, {random_matrix(rng, 2), random_matrix(rng, 2)});
        const double c = rng.uniform(0.2, 3.0) * (rep % 2 == 0 ? 1.0 : -1.0);
        const JsrBounds b1 = jsr_bounds(m, 4);
        const JsrBounds b2 = jsr_bounds(scaled(m, c), 4);
        CHECK(b2.lower == doctest::Approx(std::abs(c) * b1.lower).epsilon(1e-12));
        CHECK(b2.upper == doctest::Approx(std::abs(c) * b1.upper).epsilon(1e-12));
    }
}

TEST_CASE("similarity keeps the rho interval consistent") {
    Rng rng(23);
    const MatrixSet m = example_pair();
    const JsrBounds base = jsr_bounds(m, 5);
    for (int rep = 0; rep < 5; ++rep) {
        Matrix t = random_matrix(rng, 2) + 2.0 * Matrix::identity(2);
        if (condition_estimate(t) > 1e3) continue;
        const JsrBounds b = jsr_bounds(conjugated(m, t, inverse(t)), 5);
        // the true rho is in both intervals, so they must intersect
        CHECK(b.lower <= base.upper + 1e-6);
        CHECK(base.lower <= b.upper + 1e-6);
        // spectral radii of products are similarity invariants
        CHECK(b.lower == doctest::Approx(base.lower).epsilon(1e-9));
    }
}

TEST_CASE("pruned, unpruned and parallel runs return identical bounds") {
    Rng rng(37);
    for (int rep = 0; rep < 8; ++rep) {
        const int d = 2 + static_cast<int>(rng.below(2));
        const int k = 2 + static_cast<int>(rng.below(2));
        std::vector<Matrix> mats;
        for (int i = 0; i < k; ++i) mats.push_back(random_matrix(rng, d));
        const MatrixSet m(d, std::move(mats));

        JsrOptions a;
        a.depth = 5;
        a.prune = true;
        a.threads = 1;
        JsrOptions b = a;
        b.prune = false;
        JsrOptions c = a;
        c.threads = 3;
        const JsrBounds ra = jsr_bounds(m, a);
        const JsrBounds rb = jsr_bounds(m, b);
        const JsrBounds rc = jsr_bounds(m, c);
        CHECK(ra.lower == rb.lower);
        CHECK(ra.upper == rb.upper);
        CHECK(ra.lower == rc.lower);
        CHECK(ra.upper == rc.upper);
        CHECK(rb.pruned == 0);
        CHECK(ra.pruned == rc.pruned);
    }
}

TEST_CASE("budget truncation flags a partial result") {
    Rng rng(5);
    std::vector<Matrix> mats;
    for (int i = 0; i < 6; ++i) mats.push_back(random_matrix(rng, 2));
    const MatrixSet m(2, std::move(mats));
    JsrOptions opt;
    opt.depth = 12;
    opt.node_budget = 1000;  // 6^4 = 1296 > 1000
    const JsrBounds b = jsr_bounds(m, opt);
    CHECK_FALSE(b.complete);
    CHECK(b.depth == 3);
    CHECK(b.lower <= b.upper + 1e-12);
}

TEST_CASE("diagonal estimate examples") {
    const MatrixSet id(2, {Matrix::identity(2)});
    CHECK(diagonal_jsr_estimate(id, 3).value == doctest::Approx(1.0));

    const MatrixSet nil(2, {Matrix{{0, 1}, {0, 0}}});
    CHECK(diagonal_jsr_estimate(nil, 4).value == 0.0);

    // per-level domination: |S_ii|^{1/t} <= ||S||^{1/t} <= max member norm;
    // for the raw worked pair the depth-1 entry 6 dominates everything
    const MatrixSet pair = example_pair();
    const DiagonalEstimate de = diagonal_jsr_estimate(pair, 5);
    double c = 0.0;
    for (const Matrix& a : pair.members()) c = std::max(c, spectral_norm(a));
    CHECK(de.value <= c + 1e-12);
    CHECK(de.value == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("irreducibility checks") {
    const MatrixSet diag(2, {Matrix{{1, 0}, {0, 2}}});
    const IrreducibilityReport r1 = check_irreducibility(diag);
    REQUIRE(r1.status == Reducibility::reducible);
    REQUIRE(r1.witness.size() == 1);
    CHECK(std::abs(std::abs(r1.witness[0][0]) - 1.0) < 1e-9);
    CHECK(std::abs(r1.witness[0][1]) < 1e-9);

    CHECK(check_irreducibility(example_pair()).status == Reducibility::irreducible);

    // a common rotation-invariant line does not exist for a pure rotation
    const MatrixSet rot(2, {Matrix{{0, -1}, {1, 0}}});
    CHECK(check_irreducibility(rot).status == Reducibility::irreducible);

    const MatrixSet shear(3, {Matrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 2}}});
    const IrreducibilityReport r2 = check_irreducibility(shear);
    CHECK(r2.status == Reducibility::reducible);
}

TEST_CASE("principal submatrices") {
    const Matrix a{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
    const Matrix s = principal_submatrix(a, {0, 2});
    CHECK(approx_equal(s, Matrix{{1, 3}, {7, 9}}, 0.0));
    CHECK_THROWS_AS(principal_submatrices(MatrixSet(3, {a}), {0, 5}), InvalidInputError);
}
