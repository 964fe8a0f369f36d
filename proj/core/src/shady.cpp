#include "jsr/shady.hpp"

#include <algorithm>
#include <cmath>

#include "jsr/errors.hpp"
#include "jsr/linalg.hpp"
#include "jsr/simplex.hpp"

namespace jsr {

namespace {

Vec normalized(const Vec& v) { return scaled(v, 1.0 / norm_2(v)); }

// unique hemisphere representative: last nonzero coordinate positive
Vec canonical_direction(Vec v) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) {
        if (std::abs(v[i]) > 1e-12) {
            if (v[i] < 0.0) v = negated(v);
            break;
        }
    }
    return v;
}

// geodesic grid on the hemisphere: barycentric subdivision of the
// octahedron faces projected to the sphere. Levels are nested.
std::vector<Vec> hemisphere_grid(int level) {
    const int n = 1 << level;
    std::vector<Vec> dirs;
    auto push_unique = [&](Vec v) {
        v = canonical_direction(normalized(std::move(v)));
        for (const Vec& d : dirs)
            if (approx_equal(d, v, 1e-9)) return;
        dirs.push_back(std::move(v));
    };
    for (int sx : {1, -1})
        for (int sy : {1, -1})
            for (int sz : {1, -1}) {
                const Vec vx = {static_cast<double>(sx), 0.0, 0.0};
                const Vec vy = {0.0, static_cast<double>(sy), 0.0};
                const Vec vz = {0.0, 0.0, static_cast<double>(sz)};
                for (int i = 0; i <= n; ++i)
                    for (int j = 0; j <= n - i; ++j) {
                        const int k = n - i - j;
                        push_unique(add(add(scaled(vx, i), scaled(vy, j)), scaled(vz, k)));
                    }
            }
    return dirs;
}

// exact kernel optimization for a fixed image plane {x : <phi, x> = 0}:
// minimize ||I - w phi^T|| over w with <phi, w> = 1, a linear program
double best_kernel_for_plane(const PolytopalNorm& n, const Vec& phi, Vec* w_out) {
    const auto& verts = n.ball().vertex_reps();
    const auto& facets = n.ball().facet_reps();
    // variables (w0, w1, w2, s)
    std::vector<LpConstraint> cons;
    {
        LpConstraint c;
        c.coeffs = {phi[0], phi[1], phi[2], 0.0};
        c.relation = '=';
        c.rhs = 1.0;
        cons.push_back(std::move(c));
    }
    for (const Vec& u : verts) {
        for (const Vec& nf : facets) {
            const double proj = dot(phi, u);
            const double base = dot(nf, u);
            for (double sgn : {1.0, -1.0}) {
                LpConstraint c;
                c.coeffs = {-sgn * proj * nf[0], -sgn * proj * nf[1], -sgn * proj * nf[2], -1.0};
                c.relation = '<';
                c.rhs = -sgn * base;
                cons.push_back(std::move(c));
            }
        }
    }
    const LpResult r = solve_lp({0.0, 0.0, 0.0, 1.0}, cons);
    if (r.status != LpResult::Status::optimal)
        throw NumericalFailureError("shadiness_estimate: kernel LP failed");
    if (w_out) *w_out = {r.x[0], r.x[1], r.x[2]};
    return r.value;
}

}  // namespace

RankOneMap face_to_vertex_map(const PolytopalNorm& n, int facet, int vertex, int facet_sign,
                              int vertex_sign) {
    const auto& verts = n.ball().vertex_reps();
    const auto& facets = n.ball().facet_reps();
    if (facet < 0 || facet >= static_cast<int>(facets.size()) || vertex < 0 ||
        vertex >= static_cast<int>(verts.size()) || std::abs(facet_sign) != 1 ||
        std::abs(vertex_sign) != 1)
        throw InvalidInputError("face_to_vertex_map: invalid indices");
    RankOneMap map;
    map.vertex_index = vertex;
    map.vertex_sign = vertex_sign;
    map.facet_index = facet;
    map.facet_sign = facet_sign;
    map.target_vertex = scaled(verts[vertex], vertex_sign);
    map.functional = scaled(facets[facet], facet_sign);
    map.matrix = outer(map.target_vertex, map.functional);

    for (const Vec& u : verts)
        if (std::abs(dot(map.functional, u)) > 1.0 + 1e-9)
            throw NumericalFailureError("face_to_vertex_map: functional exceeds 1 on the ball");
    if (std::abs(operator_norm(map.matrix, n) - 1.0) > 1e-9)
        throw NumericalFailureError("face_to_vertex_map: operator norm is not 1");
    return map;
}

MatrixSet tailored_matrix_set(const PolytopalNorm& n) {
    const auto& verts = n.ball().vertex_reps();
    const auto& facets = n.ball().facet_reps();
    std::vector<Matrix> members;
    for (size_t v = 0; v < verts.size(); ++v)
        for (size_t f = 0; f < facets.size(); ++f)
            for (int sign : {1, -1}) members.push_back(outer(scaled(verts[v], sign), facets[f]));
    return MatrixSet(n.dim(), std::move(members));
}

ShadinessEstimate shadiness_estimate(const PolytopalNorm& n, int rank, int grid_level,
                                     int refine_rounds) {
    if (n.dim() != 3 || rank != 2)
        throw UnsupportedDimensionError(
            "shadiness_estimate: only d = 3, rank 2 is supported here");
    if (grid_level < 0 || grid_level > 7)
        throw InvalidInputError("shadiness_estimate: grid level out of range");

    ShadinessEstimate est;
    est.rank = rank;
    est.grid_level = grid_level;
    est.refined = refine_rounds > 0;

    double best = std::numeric_limits<double>::infinity();
    Vec best_phi, best_w;
    for (const Vec& phi : hemisphere_grid(grid_level)) {
        Vec w;
        const double value = best_kernel_for_plane(n, phi, &w);
        if (value < best) {
            best = value;
            best_phi = phi;
            best_w = w;
        }
    }

    double radius = 1.0 / (1 << grid_level);
    for (int round = 0; round < refine_rounds; ++round) {
        // tangent frame at the incumbent
        Vec t1 = std::abs(best_phi[0]) < 0.9 ? Vec{1.0, 0.0, 0.0} : Vec{0.0, 1.0, 0.0};
        t1 = sub(t1, scaled(best_phi, dot(best_phi, t1)));
        t1 = normalized(t1);
        const Vec t2 = {best_phi[1] * t1[2] - best_phi[2] * t1[1],
                        best_phi[2] * t1[0] - best_phi[0] * t1[2],
                        best_phi[0] * t1[1] - best_phi[1] * t1[0]};
        Vec center = best_phi;
        for (int i = -3; i <= 3; ++i)
            for (int j = -3; j <= 3; ++j) {
                if (i == 0 && j == 0) continue;
                const Vec phi = normalized(
                    add(center, add(scaled(t1, radius * i / 3.0), scaled(t2, radius * j / 3.0))));
                Vec w;
                const double value = best_kernel_for_plane(n, phi, &w);
                if (value < best) {
                    best = value;
                    best_phi = phi;
                    best_w = w;
                }
            }
        radius /= 10.0;
    }

    est.value = best;
    est.plane_normal = best_phi;
    est.kernel_dir = best_w;
    est.argmin = Matrix::identity(3) - outer(best_w, best_phi);
    return est;
}

Witness submatrix_witness(const MatrixSet& tailored, const PolytopalNorm& n, const Matrix& t,
                          const std::vector<int>& index_set) {
    const int d = n.dim();
    const int m = static_cast<int>(index_set.size());
    if (m < 2 || m > d - 1)
        throw InvalidInputError("submatrix_witness: |J| must be between 2 and d-1");
    for (int j : index_set)
        if (j < 0 || j >= d) throw InvalidInputError("submatrix_witness: index out of range");
    if (tailored.dim() != d || t.dim() != d)
        throw DimensionMismatchError("submatrix_witness: dimension mismatch");
    Matrix t_inv(d);
    try {
        t_inv = inverse(t);
    } catch (const NumericalFailureError&) {
        throw InvalidInputError("submatrix_witness: T is singular");
    }

    // Q projects onto span{T columns in J} along span{T columns not in J}
    Matrix pj(d);
    for (int j : index_set) pj(j, j) = 1.0;
    const Matrix q = t * pj * t_inv;

    const auto& verts = n.ball().vertex_reps();
    int best_vertex = -1;
    double alpha = -1.0;
    for (size_t v = 0; v < verts.size(); ++v) {
        const double a = n.norm(q * verts[v]);
        if (a > alpha + 1e-15) {
            alpha = a;
            best_vertex = static_cast<int>(v);
        }
    }
    if (alpha <= 0.0)
        throw NumericalFailureError("submatrix_witness: projection annihilates every vertex");

    const Vec qv = q * verts[best_vertex];
    const FacetSupport support = facet_of_point(n, scaled(qv, 1.0 / alpha));
    RankOneMap map = face_to_vertex_map(n, support.facet, best_vertex, support.sign, 1);

    // map.matrix should be one of the tailored members
    bool found = false;
    for (const Matrix& a : tailored.members())
        if (approx_equal(a, map.matrix, 1e-9 * std::max(1.0, map.matrix.max_abs()))) {
            found = true;
            break;
        }
    if (!found)
        throw InvalidInputError("submatrix_witness: the set is not tailored to this ball");

    Witness w;
    w.transform = t;
    w.index_set = index_set;
    w.alpha = alpha;
    w.map = std::move(map);

    const Vec t_inv_qv = t_inv * qv;
    w.z.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) w.z[i] = t_inv_qv[index_set[i]];

    const Matrix conj = t_inv * w.map.matrix * t;
    const Matrix sub_m = principal_submatrix(conj, index_set);
    const Vec lhs = sub_m * w.z;
    double resid = 0.0;
    for (int i = 0; i < m; ++i) resid = std::max(resid, std::abs(lhs[i] - alpha * w.z[i]));
    w.residual = resid;
    if (resid > 1e-8 * alpha * std::max(1.0, norm_inf(w.z)))
        throw NumericalFailureError("submatrix_witness: eigen-equation residual too large");
    return w;
}

}  // namespace jsr
