#include <cmath>

#include "jsr/errors.hpp"
#include "jsr/linalg.hpp"
#include "jsr/positions.hpp"

namespace jsr {

namespace {

// symmetric-matrix vectorization with sqrt(2)-scaled off-diagonals, an
// isometry for <A,B> = tr(AB)
struct SymBasis {
    int d;
    int nv;
    std::vector<std::pair<int, int>> idx;

    explicit SymBasis(int dim) : d(dim), nv(dim * (dim + 1) / 2) {
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) idx.emplace_back(i, j);
    }

    Vec to_svec(const Matrix& m) const {
        Vec v(static_cast<size_t>(nv));
        for (int a = 0; a < nv; ++a) {
            const auto [i, j] = idx[a];
            v[a] = (i == j) ? m(i, i) : std::sqrt(2.0) * m(i, j);
        }
        return v;
    }

    Matrix from_svec(const Vec& v) const {
        Matrix m(d);
        for (int a = 0; a < nv; ++a) {
            const auto [i, j] = idx[a];
            if (i == j) {
                m(i, i) = v[a];
            } else {
                m(i, j) = m(j, i) = v[a] / std::sqrt(2.0);
            }
        }
        return m;
    }
};

bool cholesky_pd(const Matrix& a, double floor_value) {
    const int d = a.dim();
    Matrix l(d);
    for (int k = 0; k < d; ++k) {
        double pivot = a(k, k);
        for (int j = 0; j < k; ++j) pivot -= l(k, j) * l(k, j);
        if (pivot <= floor_value) return false;
        l(k, k) = std::sqrt(pivot);
        for (int i = k + 1; i < d; ++i) {
            double s = a(i, k);
            for (int j = 0; j < k; ++j) s -= l(i, j) * l(k, j);
            l(i, k) = s / l(k, k);
        }
    }
    return true;
}

double log_det_spd(const Matrix& a) {
    const SymmetricEigen e = symmetric_eigen(a);
    double s = 0.0;
    for (double v : e.values) {
        if (v <= 0.0) return -std::numeric_limits<double>::infinity();
        s += std::log(v);
    }
    return s;
}

// tr(Q^-1 E_a Q^-1 E_b) for all basis pairs
Matrix logdet_hessian(const SymBasis& basis, const Matrix& q_inv) {
    Matrix h(basis.nv);
    for (int a = 0; a < basis.nv; ++a) {
        const auto [i, j] = basis.idx[a];
        Matrix e(basis.d);
        if (i == j) {
            e(i, i) = 1.0;
        } else {
            e(i, j) = e(j, i) = 1.0 / std::sqrt(2.0);
        }
        const Matrix w = q_inv * e * q_inv;
        const Vec row = basis.to_svec(w);
        for (int b = 0; b < basis.nv; ++b) h(a, b) = row[b];
    }
    return h;
}

struct JohnProblem {
    SymBasis basis;
    std::vector<Vec> g;  // svec(n_i n_i^T)
    int nc;

    explicit JohnProblem(const PolytopalNorm& n) : basis(n.dim()), nc(0) {
        for (const Vec& nf : n.ball().facet_reps()) {
            g.push_back(basis.to_svec(outer(nf, nf)));
            ++nc;
        }
    }

    Vec constraints(const Vec& q) const {
        Vec c(static_cast<size_t>(nc));
        for (int i = 0; i < nc; ++i) c[i] = dot(g[i], q);
        return c;
    }
};

// machine-precision polish: solve the KKT system of the active constraints
bool polish(const JohnProblem& p, double t, Vec& q) {
    const int nv = p.basis.nv;
    Vec c = p.constraints(q);
    std::vector<int> active;
    for (int i = 0; i < p.nc; ++i)
        if (c[i] >= 1.0 - 1e-5) active.push_back(i);
    if (active.empty()) return false;
    const int na = static_cast<int>(active.size());

    Vec mu(static_cast<size_t>(na));
    for (int k = 0; k < na; ++k) mu[k] = 1.0 / (t * (1.0 - c[active[k]]));

    Vec q_try = q;
    for (int iter = 0; iter < 40; ++iter) {
        const Matrix Q = p.basis.from_svec(q_try);
        if (!cholesky_pd(Q, 1e-14)) return false;
        const Matrix q_inv = inverse(Q);
        const Vec f1_base = p.basis.to_svec(q_inv);
        Vec residual(static_cast<size_t>(nv + na), 0.0);
        for (int a = 0; a < nv; ++a) {
            residual[a] = f1_base[a];
            for (int k = 0; k < na; ++k) residual[a] -= mu[k] * p.g[active[k]][a];
        }
        for (int k = 0; k < na; ++k) residual[nv + k] = dot(p.g[active[k]], q_try) - 1.0;
        double rnorm = norm_inf(residual);
        if (rnorm < 1e-13) break;

        const Matrix h = logdet_hessian(p.basis, q_inv);
        Matrix jac(nv + na);
        for (int a = 0; a < nv; ++a)
            for (int b = 0; b < nv; ++b) jac(a, b) = -h(a, b);
        for (int k = 0; k < na; ++k)
            for (int a = 0; a < nv; ++a) {
                jac(a, nv + k) = -p.g[active[k]][a];
                jac(nv + k, a) = p.g[active[k]][a];
            }
        const LuDecomposition lu = lu_decompose(jac);
        if (lu.singular) return false;
        const Vec step = lu_solve(lu, negated(residual));
        for (int a = 0; a < nv; ++a) q_try[a] += step[a];
        for (int k = 0; k < na; ++k) mu[k] += step[nv + k];
    }

    const Matrix Q = p.basis.from_svec(q_try);
    if (!cholesky_pd(Q, 1e-14)) return false;
    const Vec c_new = p.constraints(q_try);
    for (int i = 0; i < p.nc; ++i)
        if (c_new[i] > 1.0 + 1e-12) return false;
    for (int k = 0; k < na; ++k)
        if (mu[k] < -1e-9) return false;
    if (log_det_spd(Q) < log_det_spd(p.basis.from_svec(q)) - 1e-9) return false;
    q = q_try;
    return true;
}

}  // namespace

Ellipsoid john_ellipsoid(const PolytopalNorm& n) {
    const JohnProblem p(n);
    const SymBasis& basis = p.basis;
    const int nv = basis.nv;

    double norm_max_sq = 0.0;
    for (const Vec& nf : n.ball().facet_reps())
        norm_max_sq = std::max(norm_max_sq, dot(nf, nf));
    Vec q = basis.to_svec((1.0 - 1e-3) / norm_max_sq * Matrix::identity(n.dim()));

    int newton_total = 0;
    double t = std::max(1.0, static_cast<double>(p.nc));
    Vec best_q = q;
    bool converged = false;
    double t_used = t;

    while (newton_total < 500) {
        // inner Newton loop for the current barrier weight
        for (int inner = 0; inner < 60 && newton_total < 500; ++inner) {
            ++newton_total;
            const Matrix Q = basis.from_svec(q);
            const Matrix q_inv = inverse(Q);
            const Vec c = p.constraints(q);
            Vec grad = scaled(basis.to_svec(q_inv), -t);
            Matrix hess = t * logdet_hessian(basis, q_inv);
            for (int i = 0; i < p.nc; ++i) {
                const double slack = 1.0 - c[i];
                grad = add(grad, scaled(p.g[i], 1.0 / slack));
                for (int a = 0; a < nv; ++a)
                    for (int b = 0; b < nv; ++b)
                        hess(a, b) += p.g[i][a] * p.g[i][b] / (slack * slack);
            }
            const LuDecomposition lu = lu_decompose(hess);
            if (lu.singular) break;
            const Vec step = lu_solve(lu, negated(grad));
            const double decrement = -dot(grad, step);
            if (decrement < 1e-12) break;

            auto phi = [&](const Vec& qq) {
                const Matrix m = basis.from_svec(qq);
                if (!cholesky_pd(m, 1e-12)) return std::numeric_limits<double>::infinity();
                double v = -t * log_det_spd(m);
                for (int i = 0; i < p.nc; ++i) {
                    const double slack = 1.0 - dot(p.g[i], qq);
                    if (slack <= 0.0) return std::numeric_limits<double>::infinity();
                    v -= std::log(slack);
                }
                return v;
            };
            const double phi0 = phi(q);
            double s = 1.0;
            while (s > 1e-14) {
                const Vec q_new = add(q, scaled(step, s));
                if (phi(q_new) <= phi0 - 1e-4 * s * decrement) {
                    q = q_new;
                    break;
                }
                s /= 2.0;
            }
            if (s <= 1e-14) break;
        }
        best_q = q;
        t_used = t;
        const double logdet = log_det_spd(basis.from_svec(q));
        if (p.nc / t < 1e-9 * std::max(1.0, std::abs(logdet))) {
            converged = true;
            break;
        }
        t *= 20.0;
    }

    if (!converged)
        throw NumericalFailureError(
            "john_ellipsoid: interior-point solve did not converge in 500 iterations; best "
            "log det " +
            std::to_string(log_det_spd(basis.from_svec(best_q))));

    polish(p, t_used, q);
    return Ellipsoid{basis.from_svec(q)};
}

JohnTransform john_transform(const PolytopalNorm& n) {
    const Ellipsoid e = john_ellipsoid(n);
    const Matrix t = symmetric_sqrt(e.q);
    const Matrix t_inv = inverse(t);

    ContainmentReport rep;
    rep.sqrt_d = std::sqrt(static_cast<double>(n.dim()));
    for (const Vec& nf : n.ball().facet_reps())
        rep.max_facet_norm = std::max(rep.max_facet_norm, norm_2(t * nf));
    for (const Vec& v : n.ball().vertex_reps())
        rep.max_vertex_norm = std::max(rep.max_vertex_norm, norm_2(t_inv * v));
    rep.inner_ok = rep.max_facet_norm <= 1.0 + 1e-9;
    rep.outer_ok = rep.max_vertex_norm <= rep.sqrt_d + 1e-9;
    if (!rep.inner_ok || !rep.outer_ok)
        throw JohnCertificationError("john_transform: containment re-check failed");

    JohnTransform jt{make_transform(t), rep};
    return jt;
}

}  // namespace jsr
