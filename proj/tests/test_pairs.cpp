#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jsr/errors.hpp"
#include "jsr/extremal.hpp"
#include "jsr/linalg.hpp"
#include "jsr/pairs.hpp"
#include "jsr/rng.hpp"

using namespace jsr;

namespace {

double targeted_f(const Matrix& a, const Matrix& b, const Matrix& q) {
    auto adj = [](const Matrix& m) {
        Matrix out = m;
        const double s = m.trace() / m.dim();
        for (int i = 0; i < m.dim(); ++i) out(i, i) -= s;
        return out;
    };
    const Matrix ta = q.transposed() * adj(a) * q;
    const Matrix tb = q.transposed() * adj(b) * q;
    double f = 0.0;
    for (int i = 0; i < a.dim(); ++i) f += ta(i, i) * ta(i, i);
    for (int i = 0; i < a.dim() - 2; ++i) f += tb(i, i) * tb(i, i);
    return f;
}

bool is_orthogonal(const Matrix& q, double tol) {
    return approx_equal(q.transposed() * q, Matrix::identity(q.dim()), tol);
}

}  // namespace

TEST_CASE("hollowize_single closed cases") {
    // symmetric traceless 2x2: a quarter-turn mix kills the diagonal
    const HollowizationResult r1 = hollowize_single(Matrix{{1, 0}, {0, -1}});
    CHECK(r1.converged);
    CHECK(r1.residual_a <= 1e-12);

    // already hollow input stays put
    const Matrix hollow{{0, 2, -1}, {3, 0, 5}, {-2, 1, 0}};
    const HollowizationResult r2 = hollowize_single(hollow);
    CHECK(approx_equal(r2.q_orth, Matrix::identity(3), 1e-12));

    // the worked pair's first member, trace-adjusted by hand
    const Matrix adjusted{{5, -4}, {7, -5}};
    CHECK(adjusted.trace() == 0.0);
    const HollowizationResult r3 = hollowize_single(Matrix{{6, -4}, {7, -4}});
    CHECK(r3.residual_a <= 1e-10);
    const Matrix out = r3.q_orth.transposed() * adjusted * r3.q_orth;
    CHECK(std::abs(out(0, 0)) <= 1e-10);
    CHECK(std::abs(out(1, 1)) <= 1e-10);
}

TEST_CASE("hollowize_single 1000 seeded matrices") {
    Rng rng(1);
    for (int rep = 0; rep < 1000; ++rep) {
        const int d = 2 + static_cast<int>(rng.below(5));
        Matrix a(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) a(i, j) = rng.uniform(-2.0, 2.0);
        const HollowizationResult r = hollowize_single(a);
        CHECK(r.residual_a <= 1e-10);
        CHECK(is_orthogonal(r.q_orth, 1e-10));
    }
}

TEST_CASE("hollowize_pair trivial 2x2") {
    const HollowizationResult r =
        hollowize_pair(Matrix{{1, 0}, {0, -1}}, Matrix{{2, 0}, {0, -2}});
    CHECK(r.converged);
    CHECK(r.residual_a <= 1e-8);
    // d = 2: almost hollow imposes nothing beyond the zero trace
    CHECK(r.residual_b == 0.0);
}

TEST_CASE("hollowize_pair seeded 3x3") {
    Rng rng(42);
    Matrix a(3), b(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            a(i, j) = rng.uniform(-1.0, 1.0);
            b(i, j) = rng.uniform(-1.0, 1.0);
        }
    const HollowizationResult r = hollowize_pair(a, b);
    CHECK(r.converged);
    CHECK(r.residual_a <= 1e-8);
    CHECK(r.residual_b <= 1e-8);
    CHECK(is_orthogonal(r.q_orth, 1e-10));

    // descent: the final objective does not exceed the seeded start
    const double f_end = targeted_f(a, b, r.q_orth);
    const double f_seed = targeted_f(a, b, hollowize_single(a).q_orth);
    CHECK(f_end <= f_seed + 1e-15);
}

TEST_CASE("hollowize_pair budget exhaustion is flagged, not thrown") {
    const Matrix a{{1.2, -0.3, 0.4}, {0.7, -0.9, 0.1}, {0.2, 0.5, 0.3}};
    const Matrix b{{-0.4, 0.8, 0.2}, {0.3, 0.6, -0.7}, {0.9, 0.1, -0.2}};
    const HollowizationResult r = hollowize_pair(a, b, 1e-8, 1);
    CHECK_FALSE(r.converged);
    CHECK(r.residual_a + r.residual_b > 0.0);
    CHECK(is_orthogonal(r.q_orth, 1e-10));
}

TEST_CASE("normalize_pair on the worked example") {
    const MatrixSet pair = example_pair();
    const PairResult r = normalize_pair(pair[0], pair[1], 5);
    CHECK(r.report.trace_a == doctest::Approx(2.0));
    CHECK(r.report.trace_b == doctest::Approx(0.0));
    CHECK(r.report.traces_within_bound);
    CHECK(r.report.trace_bound == doctest::Approx(2.0 * r.report.rho_upper));
    CHECK(r.report.hollow.converged);

    // zero diagonal of the trace-adjusted transformed first member
    Matrix adjusted = r.a;
    adjusted(0, 0) -= 1.0;
    adjusted(1, 1) -= 1.0;
    CHECK(std::abs(adjusted(0, 0)) <= 1e-8);
    CHECK(std::abs(adjusted(1, 1)) <= 1e-8);

    // the entry bound held before the orthogonal step
    CHECK(r.report.max_entry_before_hollow <= r.report.rho_upper * (1.0 + 1e-9));

    // similarity invariance of the bounds
    const JsrBounds before = jsr_bounds(pair, 5);
    const JsrBounds after = jsr_bounds(MatrixSet(2, {r.a, r.b}), 5);
    CHECK(after.lower == doctest::Approx(before.lower).epsilon(1e-6));

    // the row/column observation is recorded either way
    CHECK(r.report.row_col_bound ==
          doctest::Approx(std::sqrt(2.0) * r.report.rho_upper).epsilon(1e-12));
    CHECK(r.report.max_row_col_norm > 0.0);
}

TEST_CASE("normalize_pair edge cases") {
    const PairResult id = normalize_pair(Matrix::identity(2), Matrix::identity(2), 3);
    CHECK(id.report.hollow.converged);
    CHECK(std::abs(id.a(0, 0) - 1.0) <= 1e-9);  // I is its own hollow form after adjustment

    CHECK_THROWS_AS(
        normalize_pair(Matrix{{0, 1}, {0, 0}}, Matrix{{0, 2}, {0, 0}}, 4),
        ZeroJsrError);
}

TEST_CASE("seeded 3x3 pairs all converge") {
    Rng rng(42);
    for (int rep = 0; rep < 20; ++rep) {
        Matrix a(3), b(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                a(i, j) = rng.uniform(-1.0, 1.0);
                b(i, j) = rng.uniform(-1.0, 1.0);
            }
        const HollowizationResult r = hollowize_pair(a, b);
        CHECK(r.converged);
        CHECK(r.iterations <= 10000);
    }
}
