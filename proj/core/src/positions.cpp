#include "jsr/positions.hpp"

#include <algorithm>
#include <cmath>

#include "jsr/errors.hpp"
#include "jsr/extremal.hpp"
#include "jsr/linalg.hpp"
#include "jsr/simplex.hpp"

namespace jsr {

double delta(int m, Field field) {
    if (m < 1) throw InvalidInputError("delta: m must be >= 1");
    const double md = m;
    if (field == Field::real)
        return 2.0 / (md + 1.0) * (1.0 + (md - 1.0) / 2.0 * std::sqrt(md + 2.0));
    return 1.0 / md * (1.0 + (md - 1.0) * std::sqrt(md + 1.0));
}

namespace {

std::vector<int> complement_of(const std::vector<int>& index_set, int d) {
    std::vector<int> out;
    for (int i = 0; i < d; ++i)
        if (std::find(index_set.begin(), index_set.end(), i) == index_set.end())
            out.push_back(i);
    return out;
}

void validate_index_set(const std::vector<int>& index_set, int d, int min_size, int max_size) {
    if (static_cast<int>(index_set.size()) < min_size ||
        static_cast<int>(index_set.size()) > max_size)
        throw InvalidInputError("index set size out of range");
    for (size_t i = 0; i < index_set.size(); ++i) {
        if (index_set[i] < 0 || index_set[i] >= d)
            throw InvalidInputError("index set entry out of range");
        for (size_t j = i + 1; j < index_set.size(); ++j)
            if (index_set[i] == index_set[j])
                throw InvalidInputError("index set has repeated entries");
    }
}

}  // namespace

PolytopalNorm restricted_norm(const PolytopalNorm& n, const Matrix& map,
                              const std::vector<int>& index_set) {
    const int m = static_cast<int>(index_set.size());
    std::vector<Vec> normals;
    for (const Vec& nf : n.ball().facet_reps()) {
        const Vec pulled = map.transposed() * nf;
        Vec restricted(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) restricted[i] = pulled[index_set[i]];
        normals.push_back(std::move(restricted));
    }
    return norm_from_facets(normals, m);
}

ProjectionResult min_projection_fixed_image(const PolytopalNorm& n,
                                            const std::vector<int>& index_set) {
    const int d = n.dim();
    validate_index_set(index_set, d, 1, d - 1);
    const std::vector<int> comp = complement_of(index_set, d);
    const int m = static_cast<int>(index_set.size());
    const int k = static_cast<int>(comp.size());

    // variables: Z (k x m, row-major), then s; Q = I_J (I_J + I_Jc Z)^T
    const int nz = k * m;
    std::vector<LpConstraint> cons;
    for (const Vec& u : n.ball().vertex_reps()) {
        for (const Vec& nf : n.ball().facet_reps()) {
            double base = 0.0;
            for (int c = 0; c < m; ++c) base += nf[index_set[c]] * u[index_set[c]];
            for (double sgn : {1.0, -1.0}) {
                LpConstraint con;
                con.coeffs.assign(static_cast<size_t>(nz) + 1, 0.0);
                for (int r = 0; r < k; ++r)
                    for (int c = 0; c < m; ++c)
                        con.coeffs[static_cast<size_t>(r) * m + c] =
                            sgn * nf[index_set[c]] * u[comp[r]];
                con.coeffs[static_cast<size_t>(nz)] = -1.0;
                con.relation = '<';
                con.rhs = -sgn * base;
                cons.push_back(std::move(con));
            }
        }
    }
    Vec objective(static_cast<size_t>(nz) + 1, 0.0);
    objective[static_cast<size_t>(nz)] = 1.0;
    const LpResult lp = solve_lp(objective, cons);
    if (lp.status != LpResult::Status::optimal)
        throw NumericalFailureError("min_projection_fixed_image: LP solve failed");

    Matrix q(d);
    for (int c = 0; c < m; ++c) q(index_set[c], index_set[c]) = 1.0;
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < m; ++c)
            q(index_set[c], comp[r]) = lp.x[static_cast<size_t>(r) * m + c];

    ProjectionResult result{std::move(q), lp.value};
    const double check = operator_norm(result.q, n);
    if (std::abs(check - result.value) > 1e-8 * std::max(1.0, result.value))
        throw NumericalFailureError("min_projection_fixed_image: LP value mismatch");
    return result;
}

OneSubmatrixResult one_submatrix_transform(const MatrixSet& m, const PolytopalNorm& n,
                                           const std::vector<int>& index_set, int depth) {
    const int d = m.dim();
    if (n.dim() != d) throw DimensionMismatchError("one_submatrix_transform: dimension mismatch");
    validate_index_set(index_set, d, 1, d - 1);

    const ProjectionResult proj = min_projection_fixed_image(n, index_set);
    const std::vector<int> comp = complement_of(index_set, d);

    // T keeps the J columns of the identity and carries a kernel basis of Q
    // in the complement columns
    Matrix t = Matrix::identity(d);
    for (int i : comp) {
        Vec w(static_cast<size_t>(d), 0.0);
        w[i] = 1.0;
        const Vec qe = proj.q.col(i);
        for (int r = 0; r < d; ++r) w[r] -= qe[r];
        t.set_col(i, w);
    }

    // the construction promises T I_J = I_J and P_J = Q T
    const Matrix qt = proj.q * t;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const bool in_j = std::find(index_set.begin(), index_set.end(), j) != index_set.end();
            const double expect = (i == j && in_j) ? 1.0 : 0.0;
            if (std::abs(qt(i, j) - expect) > 1e-9)
                throw NumericalFailureError("one_submatrix_transform: P_J = Q T check failed");
        }

    SimilarityTransform tr = make_transform(std::move(t));
    const MatrixSet sub = principal_submatrices(conjugated(m, tr.t, tr.t_inv), index_set);

    double rho_upper = 0.0;
    for (const Matrix& a : m.members()) rho_upper = std::max(rho_upper, operator_norm(a, n));

    const PolytopalNorm slice = restricted_norm(n, Matrix::identity(d), index_set);
    JsrOptions opt;
    opt.depth = depth;
    opt.norm = &slice;
    const JsrBounds bounds = jsr_bounds(sub, opt);

    OneSubmatrixResult out{std::move(tr), {}, 0.0, proj.value};
    out.report.index_set = index_set;
    out.report.rho_sub_upper = bounds.upper;
    out.report.rho_sub_lower = bounds.lower;
    out.report.bound = delta(static_cast<int>(index_set.size()), Field::real) * rho_upper;
    out.report.satisfied = bounds.upper <= out.report.bound * (1.0 + 1e-9);
    out.report.depth = bounds.depth;
    out.report.complete = bounds.complete;
    out.sqrt_bound = std::sqrt(static_cast<double>(index_set.size())) * rho_upper;
    return out;
}

std::vector<SubmatrixBoundReport> verify_all_submatrices_bound(const MatrixSet& m, int depth) {
    const int d = m.dim();
    const JsrBounds base = jsr_bounds(m, std::min(depth, 5));
    if (base.lower <= 0.0)
        throw ZeroJsrError("verify_all_submatrices_bound: zero lower bound, no extremal norm");
    const InvariantPolytopeResult ball =
        build_invariant_polytope(m, SmpCandidate{base.best_word, base.lower});
    const PolytopalNorm norm(ball.ball);
    const bool certified = ball.certified && verify_extremal(m, norm, base.lower);

    double rho_upper = 0.0;
    for (const Matrix& a : m.members()) rho_upper = std::max(rho_upper, operator_norm(a, norm));

    const JohnTransform jt = john_transform(norm);
    const MatrixSet transformed = conjugated(m, jt.transform.t, jt.transform.t_inv);

    std::vector<SubmatrixBoundReport> reports;
    for (int mask = 1; mask < (1 << d); ++mask) {
        std::vector<int> index_set;
        for (int i = 0; i < d; ++i)
            if (mask & (1 << i)) index_set.push_back(i);
        const MatrixSet sub = principal_submatrices(transformed, index_set);
        const PolytopalNorm slice = restricted_norm(norm, jt.transform.t, index_set);
        JsrOptions opt;
        opt.depth = depth;
        opt.norm = &slice;
        const JsrBounds bounds = jsr_bounds(sub, opt);

        SubmatrixBoundReport rep;
        rep.index_set = index_set;
        rep.rho_sub_upper = bounds.upper;
        rep.rho_sub_lower = bounds.lower;
        rep.bound = std::sqrt(static_cast<double>(d)) * rho_upper;
        rep.satisfied = bounds.upper <= rep.bound * (1.0 + 1e-9);
        rep.depth = bounds.depth;
        rep.complete = bounds.complete;
        rep.certified_norm = certified;
        reports.push_back(std::move(rep));
    }
    std::sort(reports.begin(), reports.end(),
              [](const SubmatrixBoundReport& a, const SubmatrixBoundReport& b) {
                  if (a.index_set.size() != b.index_set.size())
                      return a.index_set.size() < b.index_set.size();
                  return a.index_set < b.index_set;
              });
    return reports;
}

}  // namespace jsr
