#pragma once

#include "jsr/auerbach.hpp"
#include "jsr/matset.hpp"
#include "jsr/polytope.hpp"

namespace jsr {

/// { x : x^T Q^-1 x <= 1 } for symmetric positive definite Q.
struct Ellipsoid {
    Matrix q;
};

/// Maximal-volume inscribed ellipsoid of the unit ball: maximizes
/// log det Q subject to n^T Q n <= 1 over the facet normals. Interior-point
/// path following with a Newton inner loop, then an active-set polish to
/// machine precision when the KKT system is nondegenerate.
Ellipsoid john_ellipsoid(const PolytopalNorm& n);

struct ContainmentReport {
    double max_facet_norm = 0.0;   // max ||T n||_2, must be <= 1 + 1e-9
    double max_vertex_norm = 0.0;  // max ||T^-1 v||_2, must be <= sqrt(d) + 1e-9
    double sqrt_d = 0.0;
    bool inner_ok = false;
    bool outer_ok = false;
};

struct JohnTransform {
    SimilarityTransform transform;  // T = Q^{1/2}
    ContainmentReport containment;
};

/// T = Q^{1/2} with both containments B_2 <= T^-1 K <= sqrt(d) B_2
/// re-verified independently of the optimizer; rejection raises
/// JohnCertificationError.
JohnTransform john_transform(const PolytopalNorm& n);

struct SubmatrixBoundReport {
    std::vector<int> index_set;
    double rho_sub_upper = 0.0;
    double rho_sub_lower = 0.0;
    double bound = 0.0;
    bool satisfied = false;
    int depth = 0;
    bool complete = true;
    bool certified_norm = true;  // extremal norm behind the bound was certified
};

/// John-position route: builds an extremal ball for m, John-transforms it,
/// and checks rho((T^-1 m T)_{J,J}) <= sqrt(d) rho for every nonempty J.
std::vector<SubmatrixBoundReport> verify_all_submatrices_bound(const MatrixSet& m, int depth);

enum class Field { real, complex };

/// The Grünbaum–Deręgowska–Lewandowska bound on minimal projection norms
/// onto m-dimensional subspaces.
double delta(int m, Field field);

struct ProjectionResult {
    Matrix q;            // the projection
    double value = 0.0;  // its polytopal operator norm
};

/// Minimal-norm projection with image span{e_j : j in J}: kernel freedom is
/// a linear program over the complement block. The optimal value never
/// exceeds delta(|J|, real) for a valid norm.
ProjectionResult min_projection_fixed_image(const PolytopalNorm& n,
                                            const std::vector<int>& index_set);

struct OneSubmatrixResult {
    SimilarityTransform transform;
    SubmatrixBoundReport report;      // bound = delta(|J|) * rho
    double sqrt_bound = 0.0;          // the weaker sqrt(|J|) * rho bound
    double projection_norm = 0.0;
};

/// Single-pattern route: takes the minimal projection, replaces the
/// complement columns of the identity with a kernel basis, and checks
/// rho((T^-1 m T)_{J,J}) against delta(|J|) rho and sqrt(|J|) rho.
OneSubmatrixResult one_submatrix_transform(const MatrixSet& m, const PolytopalNorm& n,
                                           const std::vector<int>& index_set, int depth);

/// Norm on the index subspace whose unit ball is the slice of the image of
/// the ball under map^-1: z -> norm(map_cols * z). Used to evaluate
/// submatrix JSR bounds in the geometry the theorems use.
PolytopalNorm restricted_norm(const PolytopalNorm& n, const Matrix& map,
                              const std::vector<int>& index_set);

}  // namespace jsr
