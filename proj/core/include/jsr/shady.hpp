#pragma once

#include <array>

#include "jsr/matset.hpp"
#include "jsr/polytope.hpp"
#include "jsr/rational.hpp"

namespace jsr {

/// Exact data behind the tailored icosahedron ball: vertex representatives,
/// the signed cyclic symmetry, and the scaled facet normals grouped by
/// symmetry orbit.
struct IcosahedronCatalog {
    std::vector<std::array<Rat, 3>> vertices;        // 6 representatives
    std::array<std::array<Rat, 3>, 3> symmetry;      // order-6 signed permutation
    std::vector<std::array<Rat, 3>> normal_seeds;    // 4 orbit seeds
    std::vector<std::vector<std::array<Rat, 3>>> orbits;  // the 20 facet normals
    std::vector<int> orbit_sizes;                    // {6, 6, 2, 6}
};

/// Builds the catalog and validates it exactly: orbit sizes, every stored
/// facet-vertex incidence satisfying <w, v> = 1 in rational arithmetic,
/// every facet carrying exactly three vertices, and |<w, v>| <= 1
/// throughout. Failures raise CorruptedCatalogError.
const IcosahedronCatalog& icosahedron_catalog();

/// The catalog ball as a polytopal norm (12 vertices, 20 facets).
PolytopalNorm icosahedron_norm();

/// Rank-one map sending a facet onto a vertex: matrix = v phi^T where phi is
/// the facet's scaled normal, so the induced operator norm is 1 and every
/// facet point maps to v.
struct RankOneMap {
    Vec target_vertex;
    Vec functional;
    Matrix matrix;
    int vertex_index = 0;  // rep index
    int vertex_sign = 1;
    int facet_index = 0;   // rep index
    int facet_sign = 1;
};

RankOneMap face_to_vertex_map(const PolytopalNorm& n, int facet, int vertex,
                              int facet_sign = 1, int vertex_sign = 1);

/// All vertex/facet rank-one maps of the ball, both signs, deduplicated
/// entrywise. Every member has operator norm 1 and the set contains maps
/// with eigenvalue exactly 1 (vertex incident to its facet).
MatrixSet tailored_matrix_set(const PolytopalNorm& n);

/// Symmetry generation A^k v w^T A^l over the catalog's vertex and normal
/// seeds; equals tailored_matrix_set(icosahedron_norm()) as a set.
MatrixSet icosahedron_tailored_set();

struct ShadinessEstimate {
    double value = 1.0;
    int rank = 2;
    Matrix argmin;      // the minimizing projection
    int grid_level = 0;
    bool refined = false;
    Vec plane_normal;   // phi: image = phi-orthogonal plane
    Vec kernel_dir;     // w with <phi, w> = 1
};

/// Heuristic upper estimate of the minimal rank-2 projection norm in d = 3:
/// the image plane normal runs over a hemisphere grid (subdivided
/// octahedron, plus local refinement rounds); for each plane the kernel is
/// optimized exactly by a linear program. Values at or below 1 + 1e-9 mean
/// the ball is not shady; this routine never proves shadiness rigorously.
ShadinessEstimate shadiness_estimate(const PolytopalNorm& n, int rank, int grid_level,
                                     int refine_rounds = 3);

/// Certified lower-bound witness for a principal submatrix JSR: alpha with
/// rho((T^-1 M T)_{J,J}) >= alpha, backed by an exact eigenvector.
struct Witness {
    Matrix transform;
    std::vector<int> index_set;
    double alpha = 0.0;
    RankOneMap map;
    Vec z;
    double residual = 0.0;
};

Witness submatrix_witness(const MatrixSet& tailored, const PolytopalNorm& n, const Matrix& t,
                          const std::vector<int>& index_set);

}  // namespace jsr
