#include "jsr/matrix.hpp"

#include <cmath>
#include <cstdio>

#include "jsr/errors.hpp"

namespace jsr {

Matrix::Matrix(int dim, std::vector<double> entries) : dim_(dim), e_(std::move(entries)) {
    if (dim < 1 || e_.size() != static_cast<size_t>(dim) * dim)
        throw InvalidInputError("matrix entry count does not match dimension");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    dim_ = static_cast<int>(rows.size());
    e_.reserve(static_cast<size_t>(dim_) * dim_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != dim_)
            throw InvalidInputError("matrix initializer is not square");
        e_.insert(e_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

bool Matrix::finite() const {
    for (double v : e_)
        if (!std::isfinite(v)) return false;
    return true;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : e_) m = std::max(m, std::abs(v));
    return m;
}

double Matrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

Matrix Matrix::transposed() const {
    Matrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Vec Matrix::col(int j) const {
    Vec v(static_cast<size_t>(dim_));
    for (int i = 0; i < dim_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec Matrix::row(int i) const {
    Vec v(static_cast<size_t>(dim_));
    for (int j = 0; j < dim_; ++j) v[j] = (*this)(i, j);
    return v;
}

void Matrix::set_col(int j, const Vec& v) {
    for (int i = 0; i < dim_; ++i) (*this)(i, j) = v[i];
}

Matrix& Matrix::operator*=(double s) {
    for (double& v : e_) v *= s;
    return *this;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    for (size_t k = 0; k < e_.size(); ++k) e_[k] += other.e_[k];
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    const int d = a.dim();
    if (d != b.dim()) throw DimensionMismatchError("matrix product dimension mismatch");
    Matrix r(d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < d; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

Matrix operator*(double s, Matrix a) {
    a *= s;
    return a;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix r = a;
    r += b;
    return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix r = a;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) r(i, j) -= b(i, j);
    return r;
}

Vec operator*(const Matrix& a, const Vec& x) {
    const int d = a.dim();
    if (static_cast<int>(x.size()) != d)
        throw DimensionMismatchError("matrix-vector dimension mismatch");
    Vec r(static_cast<size_t>(d), 0.0);
    for (int i = 0; i < d; ++i) {
        double s = 0.0;
        for (int j = 0; j < d; ++j) s += a(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
    if (a.dim() != b.dim()) return false;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (std::abs(a(i, j) - b(i, j)) > tol) return false;
    return true;
}

std::string to_string(const Matrix& a) {
    std::string s = "[";
    for (int i = 0; i < a.dim(); ++i) {
        s += (i ? "; " : "");
        for (int j = 0; j < a.dim(); ++j) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%s%.6g", j ? ", " : "", a(i, j));
            s += buf;
        }
    }
    return s + "]";
}

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec add(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scaled(const Vec& a, double s) {
    Vec r = a;
    for (double& v : r) v *= s;
    return r;
}

Vec negated(const Vec& a) { return scaled(a, -1.0); }

double norm_1(const Vec& a) {
    double s = 0.0;
    for (double v : a) s += std::abs(v);
    return s;
}

double norm_2(const Vec& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vec& a) {
    double s = 0.0;
    for (double v : a) s = std::max(s, std::abs(v));
    return s;
}

bool approx_equal(const Vec& a, const Vec& b, double tol) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

bool finite(const Vec& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

Matrix outer(const Vec& a, const Vec& b) {
    Matrix r(static_cast<int>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r(static_cast<int>(i), static_cast<int>(j)) = a[i] * b[j];
    return r;
}

std::string to_string(const Vec& a) {
    std::string s = "(";
    for (size_t i = 0; i < a.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%s%.6g", i ? ", " : "", a[i]);
        s += buf;
    }
    return s + ")";
}

}  // namespace jsr
