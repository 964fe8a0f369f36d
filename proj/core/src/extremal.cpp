#include "jsr/extremal.hpp"

#include <cmath>

#include "jsr/errors.hpp"
#include "jsr/linalg.hpp"

namespace jsr {

namespace {

constexpr double kEscapeTol = 1e-9;

// leading eigenvector for a real simple leading eigenvalue, first nonzero
// coordinate normalized to 1
Vec leading_eigenvector(const Matrix& p) {
    const auto eig = eigenvalues(p);
    size_t lead = 0;
    for (size_t i = 1; i < eig.size(); ++i)
        if (std::abs(eig[i]) > std::abs(eig[lead])) lead = i;
    const double mag = std::abs(eig[lead]);
    if (mag <= 0.0) throw UnsupportedCandidateError("candidate product is nilpotent");
    if (std::abs(eig[lead].imag()) > 1e-9 * mag)
        throw UnsupportedCandidateError("leading eigenvalue of the candidate product is complex");
    for (size_t i = 0; i < eig.size(); ++i)
        if (i != lead && std::abs(std::abs(eig[i]) - mag) <= 1e-9 * mag &&
            std::abs(eig[i] - eig[lead]) > 1e-9 * mag)
            throw UnsupportedCandidateError("leading eigenvalue of the candidate product is not simple");

    Matrix shifted = p;
    for (int i = 0; i < p.dim(); ++i) shifted(i, i) -= eig[lead].real();
    Vec v = null_vector(shifted, 1e-7);
    const double scale = norm_inf(v);
    for (double& c : v)
        if (std::abs(c) > 1e-9 * scale) {
            v = scaled(v, 1.0 / c);
            break;
        }
    return v;
}

bool is_new_point(const Vec& w, const std::vector<Vec>& points, double tol) {
    for (const Vec& p : points)
        if (approx_equal(w, p, tol) || approx_equal(w, negated(p), tol)) return false;
    return true;
}

}  // namespace

SmpCandidate smp_from_word(const MatrixSet& m, const ProductWord& word) {
    if (word.letters.empty()) throw InvalidInputError("smp word must be nonempty");
    for (int l : word.letters)
        if (l < 0 || l >= m.size()) throw InvalidInputError("smp word letter out of range");
    SmpCandidate c;
    c.word = word;
    c.ratio = std::pow(spectral_radius(product_of(m, word)), 1.0 / word.length());
    return c;
}

MatrixSet example_pair() {
    return MatrixSet(2, {Matrix{{6, -4}, {7, -4}}, Matrix{{-4, 4}, {-5, 4}}});
}

InvariantPolytopeResult build_invariant_polytope(const MatrixSet& m, const SmpCandidate& smp,
                                                 int max_points) {
    if (smp.ratio <= 0.0) throw InvalidInputError("build_invariant_polytope: ratio must be > 0");
    const int d = m.dim();
    const MatrixSet scaled_set = scaled(m, 1.0 / smp.ratio);
    const Vec seed = leading_eigenvector(product_of(scaled_set, smp.word));

    std::vector<Vec> points = {seed};
    const double dup_tol = 1e-9 * std::max(1.0, norm_inf(seed));

    int iterations = 0;
    int added = 0;
    bool have_hull = false;
    SymmetricPolytope hull(1, {{1.0}}, {{1.0}}, {{1}});  // placeholder until spanning

    while (true) {
        ++iterations;
        std::vector<Vec> escapes;
        if (!have_hull) {
            for (const Vec& p : points)
                for (const Matrix& a : scaled_set.members()) {
                    Vec w = a * p;
                    if (is_new_point(w, points, dup_tol) && is_new_point(w, escapes, dup_tol))
                        escapes.push_back(std::move(w));
                }
            if (escapes.empty())
                throw ReducibilitySuspectedError(
                    "build_invariant_polytope: the orbit closed on a proper subspace",
                    orthonormal_span(points, d));
        } else {
            const PolytopalNorm norm(hull);
            for (const Vec& p : points)
                for (const Matrix& a : scaled_set.members()) {
                    Vec w = a * p;
                    // an image that coincides with a current vertex up to the
                    // duplicate tolerance cannot grow the hull, however its
                    // norm rounds against the escape threshold
                    if (norm.norm(w) > 1.0 + kEscapeTol && is_new_point(w, points, dup_tol) &&
                        is_new_point(w, escapes, dup_tol))
                        escapes.push_back(std::move(w));
                }
            if (escapes.empty()) {
                InvariantPolytopeResult r{hull, true, iterations, added};
                return r;
            }
            if (iterations > 4 * max_points + 50) {
                InvariantPolytopeResult r{hull, false, iterations, added};
                return r;
            }
        }

        for (Vec& w : escapes) {
            points.push_back(std::move(w));
            ++added;
        }
        if (!have_hull) {
            if (rank_of(points, d) == d) {
                hull = hull_from_points(points, d);
                have_hull = true;
                points = hull.vertex_reps();
            } else if (iterations > 2 * d) {
                // the span has stopped growing by now, so it is invariant
                throw ReducibilitySuspectedError(
                    "build_invariant_polytope: seed orbit is not full-dimensional",
                    orthonormal_span(points, d));
            }
        } else {
            hull = hull_from_points(points, d);
            points = hull.vertex_reps();
        }
        if (static_cast<int>(points.size()) > max_points) {
            if (!have_hull)
                throw ReducibilitySuspectedError(
                    "build_invariant_polytope: no full-dimensional hull within budget");
            InvariantPolytopeResult r{hull, false, iterations, added};
            return r;
        }
    }
}

bool verify_extremal(const MatrixSet& m, const PolytopalNorm& n, double rho) {
    if (rho <= 0.0) throw InvalidInputError("verify_extremal: rho must be > 0");
    double worst = 0.0;
    for (const Matrix& a : m.members()) worst = std::max(worst, operator_norm(a, n));
    return worst <= rho * (1.0 + 1e-9);
}

}  // namespace jsr
