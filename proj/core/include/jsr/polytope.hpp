#pragma once

#include <string>
#include <vector>

#include "jsr/matrix.hpp"

namespace jsr {

/// Centrally symmetric polytope with nonempty interior, stored as one
/// representative per +/- pair of vertices and facets. A facet normal n is
/// scaled so its facet lies in { x : <n,x> = 1 }. Incidence lists per facet
/// rep hold signed vertex ids: +(i+1) for vertex rep i, -(i+1) for its
/// negative.
class SymmetricPolytope {
public:
    SymmetricPolytope(int dim, std::vector<Vec> vertex_reps, std::vector<Vec> facet_reps,
                      std::vector<std::vector<int>> incidence);

    /// Builds the polytope from rep lists and recomputes incidence
    /// numerically (|<n,v>| within 1e-9 of 1).
    static SymmetricPolytope from_reps(int dim, std::vector<Vec> vertex_reps,
                                       std::vector<Vec> facet_reps);

    int dim() const { return dim_; }
    const std::vector<Vec>& vertex_reps() const { return vertex_reps_; }
    const std::vector<Vec>& facet_reps() const { return facet_reps_; }
    const std::vector<std::vector<int>>& incidence() const { return incidence_; }
    int vertex_count() const { return 2 * static_cast<int>(vertex_reps_.size()); }
    int facet_count() const { return 2 * static_cast<int>(facet_reps_.size()); }

    /// All 2k vertices (reps followed by their negatives).
    std::vector<Vec> all_vertices() const;
    std::vector<Vec> all_facets() const;

    /// Vertex pairs forming edges (signed ids as in incidence lists,
    /// restricted to one representative per +/- edge pair).
    std::vector<std::pair<int, int>> edges() const;

private:
    int dim_;
    std::vector<Vec> vertex_reps_;
    std::vector<Vec> facet_reps_;
    std::vector<std::vector<int>> incidence_;
};

/// Norm whose unit ball is a SymmetricPolytope.
///   norm(x)      = max over facet reps  |<n, x>|
///   dual_norm(y) = max over vertex reps |<v, y>|
class PolytopalNorm {
public:
    explicit PolytopalNorm(SymmetricPolytope ball) : ball_(std::move(ball)) {}

    int dim() const { return ball_.dim(); }
    const SymmetricPolytope& ball() const { return ball_; }

    double norm(const Vec& x) const;
    double dual_norm(const Vec& y) const;

private:
    SymmetricPolytope ball_;
};

/// Convex hull of points together with their negatives, d in {2,3,4}.
/// Non-extreme points are removed (LP test); facets are enumerated by
/// checking every d-subset's affine hull as a supporting hyperplane, which
/// is exact at desk scale. Vertex reps keep the first-seen order and sign
/// of the input.
SymmetricPolytope hull_from_points(const std::vector<Vec>& points, int dim);

/// Polar polytope: vertices and facet normals swap roles.
SymmetricPolytope dual_ball(const SymmetricPolytope& p);

/// Unit ball of  z -> max_i |<normals[i], z>|  with redundant normals
/// dropped. dim 1 is handled directly, dim in {2,3,4} via hull + polar.
PolytopalNorm norm_from_facets(const std::vector<Vec>& normals, int dim);

struct FacetSupport {
    int facet = -1;      // facet rep index
    int sign = 1;        // +1: the rep's constraint is active, -1: its negative
    Vec functional;      // sign * facet rep, so functional(x) = 1
};

/// A facet whose constraint is active at x (requires norm(x) = 1 within
/// 1e-9). Ties are broken by smallest facet index.
FacetSupport facet_of_point(const PolytopalNorm& n, const Vec& x);

// Catalog balls.
PolytopalNorm make_cube(int dim);            // l-infinity ball
PolytopalNorm make_cross_polytope(int dim);  // l-1 ball

/// Rendering overlay: either a polytope outline or an arrow from 0.
struct SvgOverlay {
    enum class Kind { polytope, vector };
    Kind kind = Kind::polytope;
    std::vector<Vec> vertex_reps;  // for polytope overlays
    Vec arrow;                     // for vector overlays
    std::string label;
};

/// Deterministic SVG, d = 2 filled polygon, d = 3 orthographic wireframe.
std::string render_svg(const SymmetricPolytope& p, const std::vector<SvgOverlay>& overlays);

}  // namespace jsr
