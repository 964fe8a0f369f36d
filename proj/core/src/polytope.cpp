#include "jsr/polytope.hpp"

#include <algorithm>
#include <cmath>

#include "jsr/errors.hpp"
#include "jsr/linalg.hpp"
#include "jsr/simplex.hpp"

namespace jsr {

namespace {

constexpr double kIncidenceTol = 1e-9;

std::vector<std::vector<int>> compute_incidence(const std::vector<Vec>& vertex_reps,
                                                const std::vector<Vec>& facet_reps) {
    std::vector<std::vector<int>> inc(facet_reps.size());
    for (size_t f = 0; f < facet_reps.size(); ++f) {
        for (size_t v = 0; v < vertex_reps.size(); ++v) {
            const double s = dot(facet_reps[f], vertex_reps[v]);
            if (std::abs(s - 1.0) <= kIncidenceTol)
                inc[f].push_back(static_cast<int>(v) + 1);
            else if (std::abs(s + 1.0) <= kIncidenceTol)
                inc[f].push_back(-(static_cast<int>(v) + 1));
        }
    }
    return inc;
}

bool same_up_to_sign(const Vec& a, const Vec& b, double tol) {
    return approx_equal(a, b, tol) || approx_equal(a, negated(b), tol);
}

// is p inside conv(others)?  LP feasibility in the barycentric weights
bool in_convex_hull(const Vec& p, const std::vector<Vec>& others, int dim) {
    const int n = static_cast<int>(others.size());
    if (n == 0) return false;
    double scale = norm_inf(p);
    for (const Vec& q : others) scale = std::max(scale, norm_inf(q));
    if (scale <= 0.0) return true;
    std::vector<LpConstraint> cons;
    for (int i = 0; i < dim; ++i) {
        LpConstraint c;
        c.coeffs.resize(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) c.coeffs[j] = others[j][i] / scale;
        c.relation = '=';
        c.rhs = p[i] / scale;
        cons.push_back(std::move(c));
    }
    LpConstraint sum;
    sum.coeffs.assign(static_cast<size_t>(n), 1.0);
    sum.relation = '=';
    sum.rhs = 1.0;
    cons.push_back(std::move(sum));
    const LpResult r = solve_lp(Vec(static_cast<size_t>(n), 0.0), cons,
                                std::vector<bool>(static_cast<size_t>(n), true));
    return r.status == LpResult::Status::optimal;
}

}  // namespace

SymmetricPolytope::SymmetricPolytope(int dim, std::vector<Vec> vertex_reps,
                                     std::vector<Vec> facet_reps,
                                     std::vector<std::vector<int>> incidence)
    : dim_(dim),
      vertex_reps_(std::move(vertex_reps)),
      facet_reps_(std::move(facet_reps)),
      incidence_(std::move(incidence)) {
    if (dim_ < 1) throw InvalidInputError("polytope dimension must be positive");
    if (vertex_reps_.empty() || facet_reps_.empty())
        throw DegeneratePolytopeError("polytope needs at least one vertex and facet pair");
    for (const Vec& v : vertex_reps_)
        if (static_cast<int>(v.size()) != dim_ || !finite(v))
            throw InvalidInputError("bad vertex data");
    for (const Vec& n : facet_reps_)
        if (static_cast<int>(n.size()) != dim_ || !finite(n))
            throw InvalidInputError("bad facet data");
    if (incidence_.size() != facet_reps_.size())
        throw InvalidInputError("incidence size does not match facet count");

    if (rank_of(vertex_reps_, dim_) != dim_)
        throw DegeneratePolytopeError("vertex set does not span the space");
    if (rank_of(facet_reps_, dim_) != dim_)
        throw DegeneratePolytopeError("facet normals do not span the space (unbounded ball)");

    for (size_t f = 0; f < facet_reps_.size(); ++f) {
        for (size_t v = 0; v < vertex_reps_.size(); ++v) {
            const double s = dot(facet_reps_[f], vertex_reps_[v]);
            if (std::abs(s) > 1.0 + kIncidenceTol)
                throw DegeneratePolytopeError("vertex violates a facet constraint");
        }
        for (int id : incidence_[f]) {
            const size_t v = static_cast<size_t>(std::abs(id)) - 1;
            if (v >= vertex_reps_.size()) throw InvalidInputError("incidence index out of range");
            const double sign = id > 0 ? 1.0 : -1.0;
            if (std::abs(sign * dot(facet_reps_[f], vertex_reps_[v]) - 1.0) > kIncidenceTol)
                throw DegeneratePolytopeError("stored incidence is not active");
        }
    }
}

SymmetricPolytope SymmetricPolytope::from_reps(int dim, std::vector<Vec> vertex_reps,
                                               std::vector<Vec> facet_reps) {
    auto inc = compute_incidence(vertex_reps, facet_reps);
    return SymmetricPolytope(dim, std::move(vertex_reps), std::move(facet_reps), std::move(inc));
}

std::vector<Vec> SymmetricPolytope::all_vertices() const {
    std::vector<Vec> out = vertex_reps_;
    for (const Vec& v : vertex_reps_) out.push_back(negated(v));
    return out;
}

std::vector<Vec> SymmetricPolytope::all_facets() const {
    std::vector<Vec> out = facet_reps_;
    for (const Vec& n : facet_reps_) out.push_back(negated(n));
    return out;
}

std::vector<std::pair<int, int>> SymmetricPolytope::edges() const {
    const std::vector<Vec> verts = all_vertices();
    const std::vector<Vec> facets = all_facets();
    const int nv = static_cast<int>(verts.size());
    const int k = nv / 2;
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < nv; ++a) {
        for (int b = a + 1; b < nv; ++b) {
            if (b == a + k) continue;  // antipodal pair, never an edge
            int common = 0;
            for (const Vec& n : facets) {
                if (std::abs(dot(n, verts[a]) - 1.0) <= kIncidenceTol &&
                    std::abs(dot(n, verts[b]) - 1.0) <= kIncidenceTol)
                    ++common;
            }
            if (common >= dim_ - 1) out.emplace_back(a, b);
        }
    }
    return out;
}

double PolytopalNorm::norm(const Vec& x) const {
    if (static_cast<int>(x.size()) != dim())
        throw DimensionMismatchError("norm: dimension mismatch");
    double best = 0.0;
    for (const Vec& n : ball_.facet_reps()) best = std::max(best, std::abs(dot(n, x)));
    return best;
}

double PolytopalNorm::dual_norm(const Vec& y) const {
    if (static_cast<int>(y.size()) != dim())
        throw DimensionMismatchError("dual_norm: dimension mismatch");
    double best = 0.0;
    for (const Vec& v : ball_.vertex_reps()) best = std::max(best, std::abs(dot(v, y)));
    return best;
}

SymmetricPolytope hull_from_points(const std::vector<Vec>& points, int dim) {
    if (dim < 2 || dim > 4)
        throw UnsupportedDimensionError("hull_from_points supports d in {2,3,4}");
    if (points.empty()) throw InvalidInputError("hull_from_points: no points");
    double scale = 0.0;
    for (const Vec& p : points) {
        if (static_cast<int>(p.size()) != dim || !finite(p))
            throw InvalidInputError("hull_from_points: bad point data");
        scale = std::max(scale, norm_inf(p));
    }
    if (scale <= 0.0) throw DegeneratePolytopeError("hull_from_points: all points are zero");
    const double tol = 1e-9 * scale;

    // symmetrize and deduplicate; class representatives keep the first-seen
    // order and sign of the input
    std::vector<Vec> signed_pts;
    std::vector<Vec> class_rep;
    for (const Vec& p : points) {
        bool dup = false;
        for (const Vec& q : signed_pts)
            if (same_up_to_sign(p, q, tol)) {
                dup = true;
                break;
            }
        if (dup) continue;
        if (norm_inf(p) <= tol) continue;  // the origin is never a vertex
        signed_pts.push_back(p);
        class_rep.push_back(p);
    }
    const size_t classes = class_rep.size();
    for (size_t i = 0; i < classes; ++i) signed_pts.push_back(negated(class_rep[i]));

    if (rank_of(class_rep, dim) != dim)
        throw DegeneratePolytopeError("hull_from_points: points are not full-dimensional");

    // drop non-extreme classes
    std::vector<Vec> extreme_reps;
    for (size_t i = 0; i < classes; ++i) {
        std::vector<Vec> others;
        for (size_t j = 0; j < signed_pts.size(); ++j)
            if (j != i) others.push_back(signed_pts[j]);
        if (!in_convex_hull(class_rep[i], others, dim)) extreme_reps.push_back(class_rep[i]);
    }

    auto enumerate_facets = [&](const std::vector<Vec>& reps) {
        std::vector<Vec> all;
        for (const Vec& v : reps) all.push_back(v);
        for (const Vec& v : reps) all.push_back(negated(v));
        const int n = static_cast<int>(all.size());
        std::vector<Vec> facets;
        std::vector<int> pick(static_cast<size_t>(dim));
        auto try_subset = [&]() {
            Matrix m(dim);
            for (int r = 0; r < dim; ++r)
                for (int c = 0; c < dim; ++c) m(r, c) = all[pick[r]][c];
            const LuDecomposition f = lu_decompose(m);
            if (f.singular) return;
            Vec nrm = lu_solve(f, Vec(static_cast<size_t>(dim), 1.0));
            double worst = 0.0;
            for (const Vec& p : all) worst = std::max(worst, dot(nrm, p));
            if (worst > 1.0 + kIncidenceTol) return;
            for (const Vec& known : facets)
                if (same_up_to_sign(nrm, known, 1e-9 * std::max(1.0, norm_inf(nrm)))) return;
            facets.push_back(std::move(nrm));
        };
        // lexicographic d-subset walk
        for (int i = 0; i < dim; ++i) pick[i] = i;
        while (true) {
            try_subset();
            int pos = dim - 1;
            while (pos >= 0 && pick[pos] == n - dim + pos) --pos;
            if (pos < 0) break;
            ++pick[pos];
            for (int i = pos + 1; i < dim; ++i) pick[i] = pick[i - 1] + 1;
        }
        return facets;
    };

    // A vertex of a d-polytope lies on at least d facets. Points that are
    // marginally outside the hull of the rest (the LP sees them as extreme,
    // the facet walk does not) sit on fewer; dropping them moves the hull by
    // no more than the incidence tolerance. Repeat until stable.
    std::vector<Vec> facets;
    while (true) {
        if (rank_of(extreme_reps, dim) != dim)
            throw DegeneratePolytopeError(
                "hull_from_points: extreme points are not full-dimensional");
        facets = enumerate_facets(extreme_reps);
        std::vector<Vec> kept;
        for (const Vec& v : extreme_reps) {
            int on = 0;
            for (const Vec& nf : facets)
                if (std::abs(std::abs(dot(nf, v)) - 1.0) <= kIncidenceTol) ++on;
            if (on >= dim) kept.push_back(v);
        }
        if (kept.size() == extreme_reps.size()) break;
        if (kept.empty())
            throw DegeneratePolytopeError("hull_from_points: inconsistent facet structure");
        extreme_reps = std::move(kept);
    }

    return SymmetricPolytope::from_reps(dim, extreme_reps, facets);
}

SymmetricPolytope dual_ball(const SymmetricPolytope& p) {
    return SymmetricPolytope::from_reps(p.dim(), p.facet_reps(), p.vertex_reps());
}

PolytopalNorm norm_from_facets(const std::vector<Vec>& normals, int dim) {
    if (normals.empty()) throw InvalidInputError("norm_from_facets: no normals");
    if (dim == 1) {
        double s = 0.0;
        for (const Vec& n : normals) s = std::max(s, std::abs(n[0]));
        if (s <= 0.0) throw DegeneratePolytopeError("norm_from_facets: zero normals");
        return PolytopalNorm(SymmetricPolytope(1, {{1.0 / s}}, {{s}}, {{1}}));
    }
    const SymmetricPolytope polar = hull_from_points(normals, dim);
    return PolytopalNorm(dual_ball(polar));
}

FacetSupport facet_of_point(const PolytopalNorm& n, const Vec& x) {
    const double nx = n.norm(x);
    if (std::abs(nx - 1.0) > kIncidenceTol)
        throw InvalidInputError("facet_of_point: x is not on the unit sphere of the norm");
    const auto& reps = n.ball().facet_reps();
    FacetSupport best;
    for (size_t f = 0; f < reps.size(); ++f) {
        const double s = dot(reps[f], x);
        if (std::abs(std::abs(s) - nx) <= kIncidenceTol) {
            best.facet = static_cast<int>(f);
            best.sign = s >= 0.0 ? 1 : -1;
            best.functional = best.sign > 0 ? reps[f] : negated(reps[f]);
            return best;
        }
    }
    throw NumericalFailureError("facet_of_point: no active facet found");
}

PolytopalNorm make_cube(int dim) {
    std::vector<Vec> verts;
    const int half = 1 << (dim - 1);
    for (int mask = 0; mask < half; ++mask) {
        Vec v(static_cast<size_t>(dim), 1.0);
        for (int i = 1; i < dim; ++i)
            if (mask & (1 << (i - 1))) v[i] = -1.0;
        verts.push_back(std::move(v));
    }
    std::vector<Vec> facets;
    for (int i = 0; i < dim; ++i) {
        Vec n(static_cast<size_t>(dim), 0.0);
        n[i] = 1.0;
        facets.push_back(std::move(n));
    }
    return PolytopalNorm(SymmetricPolytope::from_reps(dim, verts, facets));
}

PolytopalNorm make_cross_polytope(int dim) {
    std::vector<Vec> verts;
    for (int i = 0; i < dim; ++i) {
        Vec v(static_cast<size_t>(dim), 0.0);
        v[i] = 1.0;
        verts.push_back(std::move(v));
    }
    std::vector<Vec> facets;
    const int half = 1 << (dim - 1);
    for (int mask = 0; mask < half; ++mask) {
        Vec n(static_cast<size_t>(dim), 1.0);
        for (int i = 1; i < dim; ++i)
            if (mask & (1 << (i - 1))) n[i] = -1.0;
        facets.push_back(std::move(n));
    }
    return PolytopalNorm(SymmetricPolytope::from_reps(dim, verts, facets));
}

}  // namespace jsr
