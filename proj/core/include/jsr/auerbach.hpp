#pragma once

#include <optional>
#include <string>

#include "jsr/matset.hpp"
#include "jsr/polytope.hpp"

namespace jsr {

/// Biorthonormal system: <x_i, y_j> = delta_ij with norm(x_i) = 1 and
/// dual_norm(y_i) = 1.
struct AuerbachBasis {
    std::vector<Vec> x;
    std::vector<Vec> y;
};

struct SimilarityTransform {
    Matrix t;
    Matrix t_inv;
    double cond = 1.0;
};

SimilarityTransform make_transform(Matrix t);

/// Determinant-maximizing d-subset of the vertex representatives. For a
/// polytopal norm the maximum of |det| over the ball is attained at
/// vertices, which makes Auerbach's existence proof constructive here.
/// Ties break to the lexicographically smallest vertex-index subset.
AuerbachBasis auerbach_basis(const PolytopalNorm& n);

/// T with columns x_i; the pulled-back norm ||Tx|| has Auerbach basis
/// (e_i, e_i).
SimilarityTransform transform_from_basis(const AuerbachBasis& b);

/// Checks ||x||_inf <= ||Tx|| <= ||x||_1 on all +-e_i and `samples` seeded
/// random points, all within 1e-9.
bool verify_sandwich(const SimilarityTransform& tr, const PolytopalNorm& n, int samples,
                     unsigned seed);

struct NormalizeReport {
    std::string path;  // "irreducible" or "reducible"
    bool certified = false;
    double rho_lower = 0.0;
    double rho_upper = 0.0;
    double max_entry = 0.0;
    double entry_ratio = 0.0;  // max_entry / rho_upper
    double epsilon = 1.0;      // off-diagonal damping used on the reducible path
    ProductWord word;          // SMP word used on the irreducible path
};

struct NormalizeResult {
    SimilarityTransform transform;
    MatrixSet transformed;
    NormalizeReport report;
    /// The extremal ball behind the transform (irreducible path only). Its
    /// scale matches the transform, so sandwich checks pair these two.
    std::optional<PolytopalNorm> extremal_ball;
};

/// Entry normalization: finds T with max |(T^-1 A T)_ij| <= rho_upper for
/// all members. Irreducible sets go through an extremal polytopal norm and
/// its Auerbach transform; reducible sets are block-triangularized, each
/// block is normalized recursively, and off-diagonal blocks are damped by a
/// diagonal similarity. Throws ZeroJsrError when the depth-t lower bound
/// vanishes.
NormalizeResult normalize_entries(const MatrixSet& m, int depth);

}  // namespace jsr
