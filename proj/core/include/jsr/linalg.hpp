#pragma once

#include <complex>
#include <vector>

#include "jsr/matrix.hpp"

namespace jsr {

struct LuDecomposition {
    Matrix lu;              // L below the diagonal (unit), U on and above
    std::vector<int> perm;  // row permutation
    int sign = 1;
    bool singular = false;
};

LuDecomposition lu_decompose(const Matrix& a, double pivot_tol = 1e-13);
Vec lu_solve(const LuDecomposition& f, Vec rhs);
Matrix inverse(const Matrix& a);  // throws NumericalFailureError when singular
double determinant(const Matrix& a);

/// ||A||_inf * ||A^-1||_inf; +inf when singular.
double condition_estimate(const Matrix& a);

/// All eigenvalues of a real square matrix, d <= 8. Characteristic
/// polynomial roots for d <= 4 (closed forms for degree <= 3, companion QR
/// for degree 4), complex shifted Hessenberg QR above.
std::vector<std::complex<double>> eigenvalues(const Matrix& a);

/// Characteristic polynomial coefficients c with
/// det(tI - A) = t^d + c[0] t^{d-1} + ... + c[d-1]  (Faddeev-LeVerrier).
std::vector<double> characteristic_polynomial(const Matrix& a);

struct SymmetricEigen {
    Vec values;      // ascending
    Matrix vectors;  // columns, a = vectors * diag(values) * vectors^T
};

/// Cyclic Jacobi; input must be symmetric.
SymmetricEigen symmetric_eigen(const Matrix& a);

double spectral_norm(const Matrix& a);  // ||A||_2
Matrix symmetric_sqrt(const Matrix& a);  // SPD square root

/// QR-based orthonormalization with positive diagonal of R; the input must
/// have full column rank.
Matrix orthonormalize(const Matrix& a);

/// Orthogonal matrix whose first column is x/||x||_2.
Matrix householder_basis(const Vec& x);

/// One unit vector from the (approximate) null space of a, via full-pivot
/// elimination; tol is relative to the largest pivot.
Vec null_vector(const Matrix& a, double tol = 1e-9);

/// Rank of a set of vectors (Gram-Schmidt with drop tolerance relative to
/// the input scale).
int rank_of(const std::vector<Vec>& vectors, int dim, double tol = 1e-9);

/// Orthonormal basis of the span, same drop rule as rank_of.
std::vector<Vec> orthonormal_span(const std::vector<Vec>& vectors, int dim, double tol = 1e-9);

/// Extends an independent set to an orthonormal basis of R^dim. The first
/// vectors span the same subspace as the input.
std::vector<Vec> extend_to_basis(const std::vector<Vec>& vectors, int dim, double tol = 1e-9);

}  // namespace jsr
