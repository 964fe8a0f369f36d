#include "jsr/pairs.hpp"

#include <cmath>

#include "jsr/errors.hpp"
#include "jsr/linalg.hpp"
#include "jsr/rng.hpp"

namespace jsr {

namespace {

Matrix trace_adjusted(const Matrix& a) {
    Matrix out = a;
    const double shift = a.trace() / a.dim();
    for (int i = 0; i < a.dim(); ++i) out(i, i) -= shift;
    return out;
}

double targeted_diag_max(const Matrix& m, int targeted) {
    double r = 0.0;
    for (int i = 0; i < targeted; ++i) r = std::max(r, std::abs(m(i, i)));
    return r;
}

// unit vector with x^T S x = 0 for a traceless symmetric S, mixing the
// extreme eigenvectors
Vec neutral_direction(const Matrix& s) {
    const SymmetricEigen e = symmetric_eigen(s);
    const double lo = e.values.front();
    const double hi = e.values.back();
    const double scale = std::max(std::abs(lo), std::abs(hi));
    if (scale <= 1e-15 * std::max(1.0, s.max_abs())) {
        Vec x(static_cast<size_t>(s.dim()), 0.0);
        x[0] = 1.0;
        return x;
    }
    const double theta = std::atan(std::sqrt(hi / -lo));
    const Vec v_hi = e.vectors.col(s.dim() - 1);
    const Vec v_lo = e.vectors.col(0);
    return add(scaled(v_hi, std::cos(theta)), scaled(v_lo, std::sin(theta)));
}

Matrix hollowize_recursive(const Matrix& adjusted) {
    const int d = adjusted.dim();
    if (d == 1) return Matrix::identity(1);
    const Matrix sym = 0.5 * (adjusted + adjusted.transposed());
    // keep the corner untouched when it is already zero, so hollow input
    // stays put
    const bool corner_done = std::abs(adjusted(0, 0)) <= 1e-14 * std::max(1.0, adjusted.max_abs());
    const Vec x = corner_done ? [&] {
        Vec e(static_cast<size_t>(d), 0.0);
        e[0] = 1.0;
        return e;
    }()
                              : neutral_direction(sym);
    const Matrix h = householder_basis(x);
    const Matrix rotated = h.transposed() * adjusted * h;

    Matrix trailing(d - 1);
    for (int i = 1; i < d; ++i)
        for (int j = 1; j < d; ++j) trailing(i - 1, j - 1) = rotated(i, j);
    const Matrix q_sub = hollowize_recursive(trailing);

    Matrix embed = Matrix::identity(d);
    for (int i = 1; i < d; ++i)
        for (int j = 1; j < d; ++j) embed(i, j) = q_sub(i - 1, j - 1);
    return h * embed;
}

struct PairObjective {
    const Matrix& a;
    const Matrix& b;
    int d;
    int b_targets;  // diagonal indices of b that must vanish

    double value(const Matrix& q) const {
        const Matrix ta = q.transposed() * a * q;
        const Matrix tb = q.transposed() * b * q;
        double f = 0.0;
        for (int i = 0; i < d; ++i) f += ta(i, i) * ta(i, i);
        for (int i = 0; i < b_targets; ++i) f += tb(i, i) * tb(i, i);
        return f;
    }

    // gradient over the Givens generators (p, q), p < q
    Vec gradient(const Matrix& q) const {
        const Matrix ta = q.transposed() * a * q;
        const Matrix tb = q.transposed() * b * q;
        Vec g;
        g.reserve(static_cast<size_t>(d * (d - 1) / 2));
        for (int p = 0; p < d; ++p)
            for (int r = p + 1; r < d; ++r) {
                double v = 2.0 * (ta(r, r) - ta(p, p)) * (ta(p, r) + ta(r, p));
                const double bq = r < b_targets ? tb(r, r) : 0.0;
                const double bp = p < b_targets ? tb(p, p) : 0.0;
                v += 2.0 * (bq - bp) * (tb(p, r) + tb(r, p));
                g.push_back(v);
            }
        return g;
    }

    // damped Gauss-Newton step on the residual vector (targeted diagonals);
    // empty when the normal equations are unusable
    Vec gauss_newton_step(const Matrix& q) const {
        const Matrix ta = q.transposed() * a * q;
        const Matrix tb = q.transposed() * b * q;
        const int ngen = d * (d - 1) / 2;
        const int nres = d + b_targets;
        std::vector<Vec> jac(static_cast<size_t>(nres), Vec(static_cast<size_t>(ngen), 0.0));
        Vec res(static_cast<size_t>(nres));
        for (int i = 0; i < d; ++i) res[i] = ta(i, i);
        for (int i = 0; i < b_targets; ++i) res[d + i] = tb(i, i);
        int at = 0;
        for (int p = 0; p < d; ++p)
            for (int r = p + 1; r < d; ++r) {
                const double sa = ta(p, r) + ta(r, p);
                jac[static_cast<size_t>(r)][at] += sa;
                jac[static_cast<size_t>(p)][at] -= sa;
                const double sb = tb(p, r) + tb(r, p);
                if (r < b_targets) jac[static_cast<size_t>(d + r)][at] += sb;
                if (p < b_targets) jac[static_cast<size_t>(d + p)][at] -= sb;
                ++at;
            }
        Matrix normal(ngen);
        Vec rhs(static_cast<size_t>(ngen), 0.0);
        double trace = 0.0;
        for (int i = 0; i < nres; ++i)
            for (int u = 0; u < ngen; ++u) {
                rhs[u] -= jac[static_cast<size_t>(i)][u] * res[i];
                for (int v = 0; v < ngen; ++v)
                    normal(u, v) += jac[static_cast<size_t>(i)][u] * jac[static_cast<size_t>(i)][v];
            }
        for (int u = 0; u < ngen; ++u) trace += normal(u, u);
        if (trace <= 0.0) return {};
        for (int u = 0; u < ngen; ++u) normal(u, u) += 1e-12 * trace;
        const LuDecomposition lu = lu_decompose(normal);
        if (lu.singular) return {};
        return lu_solve(lu, std::move(rhs));
    }

    Matrix retract(const Matrix& q, const Vec& theta) const {
        Matrix gen = Matrix::identity(d);
        int at = 0;
        for (int p = 0; p < d; ++p)
            for (int r = p + 1; r < d; ++r) {
                gen(p, r) += theta[at];
                gen(r, p) -= theta[at];
                ++at;
            }
        return orthonormalize(q * gen);
    }
};

}  // namespace

HollowizationResult hollowize_single(const Matrix& a) {
    if (!a.finite()) throw InvalidInputError("hollowize_single: non-finite entries");
    const Matrix adjusted = trace_adjusted(a);
    HollowizationResult r;
    r.q_orth = hollowize_recursive(adjusted);
    const Matrix out = r.q_orth.transposed() * adjusted * r.q_orth;
    r.residual_a = targeted_diag_max(out, a.dim());
    r.residual_b = 0.0;
    r.iterations = a.dim() - 1;
    r.converged = r.residual_a <= 1e-10;
    return r;
}

HollowizationResult hollowize_pair(const Matrix& a, const Matrix& b, double tol, int budget,
                                   unsigned seed) {
    if (a.dim() != b.dim()) throw DimensionMismatchError("hollowize_pair: dimension mismatch");
    if (!a.finite() || !b.finite()) throw InvalidInputError("hollowize_pair: non-finite entries");
    const int d = a.dim();
    const Matrix ta = trace_adjusted(a);
    const Matrix tb = trace_adjusted(b);
    const PairObjective obj{ta, tb, d, std::max(0, d - 2)};

    Matrix q = hollowize_single(a).q_orth;
    double f = obj.value(q);
    Matrix best_q = q;
    double best_f = f;

    Rng rng(seed);
    double step = 0.1;
    Vec prev_grad, prev_theta;
    int stalled = 0;
    int restarts = 0;
    int iter = 0;

    auto residuals_ok = [&](const Matrix& qq, double* ra, double* rb) {
        const Matrix oa = qq.transposed() * ta * qq;
        const Matrix ob = qq.transposed() * tb * qq;
        *ra = targeted_diag_max(oa, d);
        *rb = targeted_diag_max(ob, std::max(0, d - 2));
        return *ra <= tol && *rb <= tol;
    };

    double ra = 0.0, rb = 0.0;
    for (; iter < budget; ++iter) {
        if (residuals_ok(q, &ra, &rb)) {
            HollowizationResult r{q, ra, rb, iter, true};
            return r;
        }
        const Vec grad = obj.gradient(q);
        const double gnorm2 = dot(grad, grad);
        if (gnorm2 < 1e-30 || stalled > 2000) {
            // flat spot or long stall: restart from a fresh orthogonal seed
            if (restarts >= 5) break;
            ++restarts;
            Matrix g(d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) g(i, j) = rng.normal();
            q = orthonormalize(g);
            f = obj.value(q);
            step = 0.1;
            prev_grad.clear();
            stalled = 0;
            continue;
        }

        // a Gauss-Newton trial accelerates the tail where plain gradient
        // steps crawl; any rejection falls through to the gradient step
        const Vec gn = obj.gauss_newton_step(q);
        if (!gn.empty()) {
            const Matrix q_gn = obj.retract(q, gn);
            const double f_gn = obj.value(q_gn);
            if (f_gn < f * (1.0 - 1e-12)) {
                q = q_gn;
                f = f_gn;
                prev_grad.clear();
                stalled = 0;
                if (f < best_f) {
                    best_f = f;
                    best_q = q;
                }
                continue;
            }
        }

        // Barzilai-Borwein step seed, then Armijo backtracking
        if (!prev_grad.empty()) {
            const Vec dg = sub(grad, prev_grad);
            const double denom = dot(dg, dg);
            if (denom > 1e-30) {
                const double bb = std::abs(dot(prev_theta, dg)) / denom;
                step = std::clamp(bb, 1e-8, 10.0);
            }
        }
        bool accepted = false;
        double s = step;
        for (int back = 0; back < 40; ++back) {
            const Vec theta = scaled(grad, -s);
            const Matrix q_new = obj.retract(q, theta);
            const double f_new = obj.value(q_new);
            if (f_new <= f - 1e-4 * s * gnorm2) {
                prev_theta = theta;
                prev_grad = grad;
                q = q_new;
                if (f - f_new > 1e-16 * std::max(1.0, f))
                    stalled = 0;
                else
                    ++stalled;
                f = f_new;
                accepted = true;
                break;
            }
            s /= 2.0;
        }
        if (!accepted) {
            ++stalled;
            prev_grad.clear();
            step = std::max(step / 4.0, 1e-10);
        }
        if (f < best_f) {
            best_f = f;
            best_q = q;
        }
    }

    residuals_ok(best_q, &ra, &rb);
    HollowizationResult r{best_q, ra, rb, iter, ra <= tol && rb <= tol};
    return r;
}

PairResult normalize_pair(const Matrix& a, const Matrix& b, int depth, double tol) {
    if (a.dim() != b.dim()) throw DimensionMismatchError("normalize_pair: dimension mismatch");
    const MatrixSet pair(a.dim(), {a, b});
    NormalizeResult entries = normalize_entries(pair, depth);

    // the normalized set may have collapsed A == B; conjugate explicitly
    const Matrix a1 = entries.transform.t_inv * a * entries.transform.t;
    const Matrix b1 = entries.transform.t_inv * b * entries.transform.t;

    PairReport report;
    report.entry_report = entries.report;
    report.rho_upper = entries.report.rho_upper;
    report.max_entry_before_hollow = std::max(a1.max_abs(), b1.max_abs());

    report.hollow = hollowize_pair(a1, b1, tol);
    const Matrix t_total = entries.transform.t * report.hollow.q_orth;
    SimilarityTransform tr = make_transform(t_total);
    const Matrix a2 = tr.t_inv * a * tr.t;
    const Matrix b2 = tr.t_inv * b * tr.t;

    const int d = a.dim();
    double rc = 0.0;
    for (const Matrix* m : {&a2, &b2})
        for (int i = 0; i < d; ++i) {
            rc = std::max(rc, norm_2(m->row(i)));
            rc = std::max(rc, norm_2(m->col(i)));
        }
    report.max_row_col_norm = rc;
    report.row_col_bound = std::sqrt(static_cast<double>(d)) * report.rho_upper;
    report.row_col_within_bound = rc <= report.row_col_bound * (1.0 + 1e-9);
    report.trace_a = a.trace();
    report.trace_b = b.trace();
    report.trace_bound = d * report.rho_upper;
    report.traces_within_bound = std::abs(report.trace_a) <= report.trace_bound * (1.0 + 1e-9) &&
                                 std::abs(report.trace_b) <= report.trace_bound * (1.0 + 1e-9);

    return PairResult{std::move(tr), a2, b2, std::move(report)};
}

}  // namespace jsr
