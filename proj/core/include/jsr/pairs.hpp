#pragma once

#include "jsr/auerbach.hpp"
#include "jsr/matset.hpp"

namespace jsr {

struct HollowizationResult {
    Matrix q_orth;          // orthogonal similarity
    double residual_a = 0.0;  // max |targeted diagonal entry| of the first matrix
    double residual_b = 0.0;  // same for the second (indices 1..d-2 only)
    int iterations = 0;
    bool converged = false;
};

/// Zeroes the diagonal of A - (tr A / d) I by the classical recursion: the
/// symmetric part is traceless, so a mix of its extreme eigenvectors has a
/// vanishing quadratic form; extend to a basis and recurse on the trailing
/// block. Residual is at machine level by construction.
HollowizationResult hollowize_single(const Matrix& a);

/// Joint form for a pair: diag of the adjusted A vanishes and all but the
/// last two diagonal entries of the adjusted B vanish. Riemannian descent
/// over Givens generators seeded from hollowize_single; budget exhaustion
/// reports converged = false with the best iterate, never an exception.
HollowizationResult hollowize_pair(const Matrix& a, const Matrix& b, double tol = 1e-8,
                                   int budget = 10'000, unsigned seed = 0);

struct PairReport {
    NormalizeReport entry_report;    // from the entry-normalization stage
    double rho_upper = 0.0;
    double max_entry_before_hollow = 0.0;
    double max_row_col_norm = 0.0;   // Euclidean, over rows and columns of both
    double row_col_bound = 0.0;      // sqrt(d) * rho_upper, recorded observationally
    bool row_col_within_bound = false;
    double trace_a = 0.0;
    double trace_b = 0.0;
    double trace_bound = 0.0;        // d * rho_upper
    bool traces_within_bound = false;
    HollowizationResult hollow;
};

struct PairResult {
    SimilarityTransform transform;
    Matrix a;
    Matrix b;
    PairReport report;
};

/// Entry normalization of {A, B} composed with the orthogonal
/// hollowization. Throws ZeroJsrError when the pair's depth-t lower bound
/// vanishes; hollowization non-convergence is flagged in the report.
PairResult normalize_pair(const Matrix& a, const Matrix& b, int depth, double tol = 1e-8);

}  // namespace jsr
