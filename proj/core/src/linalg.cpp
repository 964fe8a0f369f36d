#include "jsr/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "jsr/errors.hpp"

namespace jsr {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using Cplx = std::complex<double>;

void append_quadratic_roots(double b, double c, std::vector<Cplx>& out) {
    // roots of t^2 + b t + c, cancellation-safe
    const double disc = b * b - 4.0 * c;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        double r1 = (b >= 0.0) ? (-b - s) / 2.0 : (-b + s) / 2.0;
        double r2 = (r1 != 0.0) ? c / r1 : (-b - r1);
        out.emplace_back(r1, 0.0);
        out.emplace_back(r2, 0.0);
    } else {
        const double s = std::sqrt(-disc) / 2.0;
        out.emplace_back(-b / 2.0, s);
        out.emplace_back(-b / 2.0, -s);
    }
}

void append_cubic_roots(double a, double b, double c, std::vector<Cplx>& out) {
    // roots of t^3 + a t^2 + b t + c via the depressed form y^3 + p y + q
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double shift = -a / 3.0;
    const double scale = std::max({1.0, std::abs(p), std::abs(q)});

    if (std::abs(p) <= 1e-15 * scale && std::abs(q) <= 1e-15 * scale) {
        for (int k = 0; k < 3; ++k) out.emplace_back(shift, 0.0);
        return;
    }

    const double half_q = q / 2.0;
    const double delta = half_q * half_q + p * p * p / 27.0;
    if (delta <= 0.0) {
        // three real roots (trigonometric form needs p < 0 here)
        const double m = 2.0 * std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (p * m);
        arg = std::clamp(arg, -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            out.emplace_back(shift + m * std::cos(theta - 2.0 * kPi * k / 3.0), 0.0);
    } else {
        const double s = std::sqrt(delta);
        const double u3 = (q >= 0.0) ? (-half_q - s) : (-half_q + s);
        const double u = std::cbrt(u3);
        const double v = (u != 0.0) ? -p / (3.0 * u) : 0.0;
        const double y1 = u + v;
        out.emplace_back(shift + y1, 0.0);
        const double re = shift - y1 / 2.0;
        const double im = std::sqrt(3.0) / 2.0 * std::abs(u - v);
        out.emplace_back(re, im);
        out.emplace_back(re, -im);
    }
}

// Complex explicit shifted QR on an upper Hessenberg matrix. Used for
// quartic companion matrices and for d in {5..8}.
std::vector<Cplx> hessenberg_qr_eigenvalues(std::vector<Cplx> h, int n) {
    auto at = [&](int i, int j) -> Cplx& { return h[static_cast<size_t>(i) * n + j]; };
    std::vector<Cplx> eigs(static_cast<size_t>(n));
    int hi = n - 1;
    int iter_guard = 100 * n * n + 400;
    int since_deflate = 0;
    while (hi >= 0 && iter_guard-- > 0) {
        if (hi == 0) {
            eigs[0] = at(0, 0);
            --hi;
            continue;
        }
        // deflation scan
        int lo = hi;
        while (lo > 0) {
            const double off = std::abs(at(lo, lo - 1));
            const double diag = std::abs(at(lo - 1, lo - 1)) + std::abs(at(lo, lo));
            if (off <= 1e-15 * std::max(diag, 1e-300)) {
                at(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eigs[hi] = at(hi, hi);
            --hi;
            since_deflate = 0;
            continue;
        }
        // Wilkinson shift from the trailing 2x2, with an occasional
        // exceptional shift to break stalls on symmetric spectra
        Cplx mu;
        if (++since_deflate % 12 == 0) {
            mu = at(hi, hi) + Cplx(std::abs(at(hi, hi - 1)), std::abs(at(hi - 1, hi - 2 >= 0 ? hi - 2 : 0)));
        } else {
            const Cplx a = at(hi - 1, hi - 1), b = at(hi - 1, hi);
            const Cplx c = at(hi, hi - 1), d = at(hi, hi);
            const Cplx tr = a + d;
            const Cplx det = a * d - b * c;
            const Cplx disc = std::sqrt(tr * tr - 4.0 * det);
            const Cplx m1 = (tr + disc) / 2.0, m2 = (tr - disc) / 2.0;
            mu = (std::abs(m1 - d) < std::abs(m2 - d)) ? m1 : m2;
        }

        // H - mu I = Q R by Givens rotations, then H <- R Q^H + mu I
        for (int k = lo; k <= hi; ++k) at(k, k) -= mu;
        const int len = hi - lo + 1;
        std::vector<Cplx> cs(static_cast<size_t>(len)), sn(static_cast<size_t>(len));
        for (int k = lo; k < hi; ++k) {
            const Cplx x = at(k, k);
            const Cplx y = at(k + 1, k);
            double r = std::hypot(std::abs(x), std::abs(y));
            Cplx ck(1.0), sk(0.0);
            if (r > 1e-300) {
                ck = x / r;
                sk = y / r;
            }
            cs[k - lo] = ck;
            sn[k - lo] = sk;
            for (int j = k; j <= hi; ++j) {
                const Cplx t1 = at(k, j), t2 = at(k + 1, j);
                at(k, j) = std::conj(ck) * t1 + std::conj(sk) * t2;
                at(k + 1, j) = -sk * t1 + ck * t2;
            }
        }
        for (int k = lo; k < hi; ++k) {
            const Cplx ck = cs[k - lo], sk = sn[k - lo];
            for (int i = lo; i <= std::min(k + 1, hi); ++i) {
                const Cplx t1 = at(i, k), t2 = at(i, k + 1);
                at(i, k) = t1 * ck + t2 * sk;
                at(i, k + 1) = -t1 * std::conj(sk) + t2 * std::conj(ck);
            }
        }
        for (int k = lo; k <= hi; ++k) at(k, k) += mu;
    }
    if (hi >= 0) throw NumericalFailureError("QR eigenvalue iteration did not converge");
    return eigs;
}

std::vector<Cplx> companion_roots(const std::vector<double>& coeffs) {
    // monic polynomial t^n + coeffs[0] t^{n-1} + ... + coeffs[n-1]
    const int n = static_cast<int>(coeffs.size());
    std::vector<Cplx> h(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) h[static_cast<size_t>(i) * n + n - 1] = -coeffs[n - 1 - i];
    for (int i = 1; i < n; ++i) h[static_cast<size_t>(i) * n + i - 1] = 1.0;
    return hessenberg_qr_eigenvalues(std::move(h), n);
}

// Householder reduction to upper Hessenberg form, in complex arithmetic.
std::vector<Cplx> to_hessenberg(const Matrix& a) {
    const int n = a.dim();
    std::vector<Cplx> h(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h[static_cast<size_t>(i) * n + j] = a(i, j);
    auto at = [&](int i, int j) -> Cplx& { return h[static_cast<size_t>(i) * n + j]; };
    for (int k = 0; k < n - 2; ++k) {
        double scale = 0.0;
        for (int i = k + 1; i < n; ++i) scale += std::abs(at(i, k));
        if (scale < 1e-300) continue;
        std::vector<Cplx> u(static_cast<size_t>(n), 0.0);
        double norm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            u[i] = at(i, k);
            norm2 += std::norm(u[i]);
        }
        const double alpha = std::sqrt(norm2);
        if (alpha < 1e-300) continue;
        const Cplx pivot = u[k + 1];
        const Cplx phase = (std::abs(pivot) > 1e-300) ? pivot / std::abs(pivot) : Cplx(1.0);
        u[k + 1] += phase * alpha;
        double unorm = 0.0;
        for (int i = k + 1; i < n; ++i) unorm += std::norm(u[i]);
        if (unorm < 1e-300) continue;
        // H = I - 2 u u* / (u* u), applied from both sides
        for (int j = 0; j < n; ++j) {
            Cplx s = 0.0;
            for (int i = k + 1; i < n; ++i) s += std::conj(u[i]) * at(i, j);
            s *= 2.0 / unorm;
            for (int i = k + 1; i < n; ++i) at(i, j) -= u[i] * s;
        }
        for (int i = 0; i < n; ++i) {
            Cplx s = 0.0;
            for (int j = k + 1; j < n; ++j) s += at(i, j) * u[j];
            s *= 2.0 / unorm;
            for (int j = k + 1; j < n; ++j) at(i, j) -= s * std::conj(u[j]);
        }
    }
    return h;
}

}  // namespace

LuDecomposition lu_decompose(const Matrix& a, double pivot_tol) {
    const int n = a.dim();
    LuDecomposition f;
    f.lu = a;
    f.perm.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) f.perm[i] = i;
    const double scale = std::max(a.max_abs(), 1e-300);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(f.lu(i, k)) > std::abs(f.lu(piv, k))) piv = i;
        if (std::abs(f.lu(piv, k)) <= pivot_tol * scale) {
            f.singular = true;
            continue;
        }
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
            f.sign = -f.sign;
        }
        for (int i = k + 1; i < n; ++i) {
            f.lu(i, k) /= f.lu(k, k);
            const double lik = f.lu(i, k);
            if (lik == 0.0) continue;
            for (int j = k + 1; j < n; ++j) f.lu(i, j) -= lik * f.lu(k, j);
        }
    }
    return f;
}

Vec lu_solve(const LuDecomposition& f, Vec rhs) {
    const int n = f.lu.dim();
    Vec x(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) x[i] = rhs[f.perm[i]];
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
        x[i] /= f.lu(i, i);
    }
    return x;
}

Matrix inverse(const Matrix& a) {
    const LuDecomposition f = lu_decompose(a);
    if (f.singular) throw NumericalFailureError("matrix is singular to working precision");
    const int n = a.dim();
    Matrix inv(n);
    for (int j = 0; j < n; ++j) {
        Vec e(static_cast<size_t>(n), 0.0);
        e[j] = 1.0;
        inv.set_col(j, lu_solve(f, std::move(e)));
    }
    return inv;
}

double determinant(const Matrix& a) {
    const LuDecomposition f = lu_decompose(a);
    if (f.singular) return 0.0;
    double d = f.sign;
    for (int i = 0; i < a.dim(); ++i) d *= f.lu(i, i);
    return d;
}

double condition_estimate(const Matrix& a) {
    const LuDecomposition f = lu_decompose(a);
    if (f.singular) return std::numeric_limits<double>::infinity();
    auto inf_norm = [](const Matrix& m) {
        double best = 0.0;
        for (int i = 0; i < m.dim(); ++i) {
            double row = 0.0;
            for (int j = 0; j < m.dim(); ++j) row += std::abs(m(i, j));
            best = std::max(best, row);
        }
        return best;
    };
    return inf_norm(a) * inf_norm(inverse(a));
}

std::vector<double> characteristic_polynomial(const Matrix& a) {
    const int n = a.dim();
    std::vector<double> c(static_cast<size_t>(n));
    Matrix m = a;
    c[0] = -m.trace();
    for (int k = 2; k <= n; ++k) {
        Matrix shifted = m;
        for (int i = 0; i < n; ++i) shifted(i, i) += c[k - 2];
        m = a * shifted;
        c[k - 1] = -m.trace() / k;
    }
    return c;
}

std::vector<std::complex<double>> eigenvalues(const Matrix& a) {
    const int n = a.dim();
    if (n < 1 || n > 8) throw InvalidInputError("eigenvalues: dimension must be in 1..8");
    if (!a.finite()) throw InvalidInputError("eigenvalues: non-finite entries");
    std::vector<Cplx> out;
    out.reserve(static_cast<size_t>(n));
    if (n <= 4) {
        // Scale first so the characteristic polynomial is well conditioned.
        const double s = a.max_abs();
        const Matrix b = (s > 0.0) ? (1.0 / s) * a : a;
        if (s == 0.0) return std::vector<Cplx>(static_cast<size_t>(n), 0.0);
        const std::vector<double> c = characteristic_polynomial(b);
        switch (n) {
            case 1:
                out.emplace_back(-c[0], 0.0);
                break;
            case 2:
                append_quadratic_roots(c[0], c[1], out);
                break;
            case 3:
                append_cubic_roots(c[0], c[1], c[2], out);
                break;
            default:
                out = companion_roots(c);
                break;
        }
        for (auto& z : out) z *= s;
        return out;
    }
    return hessenberg_qr_eigenvalues(to_hessenberg(a), n);
}

SymmetricEigen symmetric_eigen(const Matrix& a) {
    const int n = a.dim();
    Matrix m = a;
    Matrix v = Matrix::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
        if (off <= 1e-30 * std::max(1.0, m.max_abs() * m.max_abs())) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    const double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) { return m(i, i) < m(j, j); });
    SymmetricEigen r;
    r.values.resize(static_cast<size_t>(n));
    r.vectors = Matrix(n);
    for (int k = 0; k < n; ++k) {
        r.values[k] = m(order[k], order[k]);
        for (int i = 0; i < n; ++i) r.vectors(i, k) = v(i, order[k]);
    }
    return r;
}

double spectral_norm(const Matrix& a) {
    const int n = a.dim();
    if (n == 1) return std::abs(a(0, 0));
    if (n == 2) {
        // closed form from the singular values of a 2x2 matrix
        const double f = a(0, 0) * a(0, 0) + a(0, 1) * a(0, 1) + a(1, 0) * a(1, 0) +
                         a(1, 1) * a(1, 1);
        const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
        const double disc = std::max(0.0, f * f - 4.0 * det * det);
        return std::sqrt((f + std::sqrt(disc)) / 2.0);
    }
    const Matrix ata = a.transposed() * a;
    const SymmetricEigen e = symmetric_eigen(ata);
    return std::sqrt(std::max(0.0, e.values.back()));
}

Matrix symmetric_sqrt(const Matrix& a) {
    const SymmetricEigen e = symmetric_eigen(a);
    const int n = a.dim();
    if (e.values.front() < -1e-12 * std::max(1.0, std::abs(e.values.back())))
        throw NumericalFailureError("symmetric_sqrt: matrix is not positive semidefinite");
    Matrix r(n);
    for (int k = 0; k < n; ++k) {
        const double s = std::sqrt(std::max(0.0, e.values[k]));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r(i, j) += s * e.vectors(i, k) * e.vectors(j, k);
    }
    return r;
}

Matrix orthonormalize(const Matrix& a) {
    const int n = a.dim();
    Matrix q(n);
    std::vector<Vec> cols;
    for (int j = 0; j < n; ++j) {
        Vec v = a.col(j);
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& u : cols) v = sub(v, scaled(u, dot(u, v)));
        const double nv = norm_2(v);
        if (nv < 1e-12) throw NumericalFailureError("orthonormalize: rank-deficient input");
        cols.push_back(scaled(v, 1.0 / nv));
        q.set_col(j, cols.back());
    }
    return q;
}

Matrix householder_basis(const Vec& x) {
    const int n = static_cast<int>(x.size());
    const double nx = norm_2(x);
    if (nx < 1e-300) throw InvalidInputError("householder_basis: zero vector");
    Vec u = scaled(x, 1.0 / nx);
    u[0] -= 1.0;
    const double un = norm_2(u);
    if (un < 1e-14) return Matrix::identity(n);
    u = scaled(u, 1.0 / un);
    Matrix h = Matrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) -= 2.0 * u[i] * u[j];
    return h;
}

Vec null_vector(const Matrix& a, double tol) {
    const int n = a.dim();
    Matrix m = a;
    std::vector<int> col_of_row(static_cast<size_t>(n), -1);
    std::vector<bool> used_col(static_cast<size_t>(n), false);
    const double scale = std::max(a.max_abs(), 1e-300);
    int rank = 0;
    for (int step = 0; step < n; ++step) {
        int bi = -1, bj = -1;
        double best = tol * scale;
        for (int i = rank; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!used_col[j] && std::abs(m(i, j)) > best) {
                    best = std::abs(m(i, j));
                    bi = i;
                    bj = j;
                }
        if (bi < 0) break;
        if (bi != rank)
            for (int j = 0; j < n; ++j) std::swap(m(rank, j), m(bi, j));
        used_col[bj] = true;
        col_of_row[rank] = bj;
        for (int i = 0; i < n; ++i) {
            if (i == rank) continue;
            const double f = m(i, bj) / m(rank, bj);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) m(i, j) -= f * m(rank, j);
        }
        ++rank;
    }
    if (rank == n) throw NumericalFailureError("null_vector: matrix has full numerical rank");
    int free_col = 0;
    while (used_col[free_col]) ++free_col;
    Vec x(static_cast<size_t>(n), 0.0);
    x[free_col] = 1.0;
    for (int r = 0; r < rank; ++r) x[col_of_row[r]] = -m(r, free_col) / m(r, col_of_row[r]);
    return scaled(x, 1.0 / norm_2(x));
}

int rank_of(const std::vector<Vec>& vectors, int dim, double tol) {
    return static_cast<int>(orthonormal_span(vectors, dim, tol).size());
}

std::vector<Vec> orthonormal_span(const std::vector<Vec>& vectors, int dim, double tol) {
    double scale = 0.0;
    for (const Vec& v : vectors) scale = std::max(scale, norm_inf(v));
    scale = std::max(scale, 1e-300);
    std::vector<Vec> basis;
    for (const Vec& v : vectors) {
        Vec w = v;
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& u : basis) w = sub(w, scaled(u, dot(u, w)));
        if (norm_2(w) > tol * scale) basis.push_back(scaled(w, 1.0 / norm_2(w)));
        if (static_cast<int>(basis.size()) == dim) break;
    }
    return basis;
}

std::vector<Vec> extend_to_basis(const std::vector<Vec>& vectors, int dim, double tol) {
    std::vector<Vec> basis = orthonormal_span(vectors, dim, tol);
    if (basis.size() != vectors.size())
        throw InvalidInputError("extend_to_basis: input vectors are dependent");
    for (int j = 0; j < dim && static_cast<int>(basis.size()) < dim; ++j) {
        Vec e(static_cast<size_t>(dim), 0.0);
        e[j] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& u : basis) e = sub(e, scaled(u, dot(u, e)));
        if (norm_2(e) > tol) basis.push_back(scaled(e, 1.0 / norm_2(e)));
    }
    if (static_cast<int>(basis.size()) != dim)
        throw NumericalFailureError("extend_to_basis: completion failed");
    return basis;
}

}  // namespace jsr
