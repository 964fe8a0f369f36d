#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace jsr {

using Vec = std::vector<double>;

/// Dense square matrix, row-major. Everything in this library is desk scale
/// (d <= 8 for eigenvalue work), so a flat vector is all the storage needed.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(int dim) : dim_(dim), e_(static_cast<size_t>(dim) * dim, 0.0) {}
    Matrix(int dim, std::vector<double> entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(int dim);

    int dim() const { return dim_; }
    double& operator()(int i, int j) { return e_[static_cast<size_t>(i) * dim_ + j]; }
    double operator()(int i, int j) const { return e_[static_cast<size_t>(i) * dim_ + j]; }
    const std::vector<double>& entries() const { return e_; }

    bool finite() const;
    double max_abs() const;
    double trace() const;
    Matrix transposed() const;
    Vec col(int j) const;
    Vec row(int i) const;
    void set_col(int j, const Vec& v);

    Matrix& operator*=(double s);
    Matrix& operator+=(const Matrix& other);

private:
    int dim_ = 0;
    std::vector<double> e_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Vec operator*(const Matrix& a, const Vec& x);

bool approx_equal(const Matrix& a, const Matrix& b, double tol);
std::string to_string(const Matrix& a);

// Vector helpers. Vec is a plain std::vector<double>; these are the handful
// of operations the geometry code needs.
double dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, double s);
Vec negated(const Vec& a);
double norm_1(const Vec& a);
double norm_2(const Vec& a);
double norm_inf(const Vec& a);
bool approx_equal(const Vec& a, const Vec& b, double tol);
bool finite(const Vec& a);
Matrix outer(const Vec& a, const Vec& b);  // a b^T
std::string to_string(const Vec& a);

}  // namespace jsr
