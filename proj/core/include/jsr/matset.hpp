#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "jsr/matrix.hpp"
#include "jsr/polytope.hpp"

namespace jsr {

/// Word over member indices. The product of (w_0, ..., w_{t-1}) is
/// M[w_0] M[w_1] ... M[w_{t-1}]: the rightmost letter acts first.
struct ProductWord {
    std::vector<int> letters;

    int length() const { return static_cast<int>(letters.size()); }
    std::string str() const;
};

/// Finite set of same-dimension square matrices. Members are validated
/// (finite entries) and deduplicated entrywise with tolerance 1e-12 relative
/// to the pair's magnitude.
class MatrixSet {
public:
    MatrixSet(int dim, std::vector<Matrix> members);
    explicit MatrixSet(std::vector<Matrix> members);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(members_.size()); }
    const std::vector<Matrix>& members() const { return members_; }
    const Matrix& operator[](int i) const { return members_[static_cast<size_t>(i)]; }

private:
    int dim_;
    std::vector<Matrix> members_;
};

Matrix product_of(const MatrixSet& m, const ProductWord& w);
MatrixSet conjugated(const MatrixSet& m, const Matrix& t, const Matrix& t_inv);
MatrixSet scaled(const MatrixSet& m, double s);
Matrix principal_submatrix(const Matrix& a, const std::vector<int>& index_set);
MatrixSet principal_submatrices(const MatrixSet& m, const std::vector<int>& index_set);

/// Max eigenvalue modulus, d <= 8 (characteristic polynomial roots for
/// d <= 4, shifted QR above).
double spectral_radius(const Matrix& a);

/// Visits all |M|^t words of the given length in lexicographic order with
/// their products. Throws ResourceError when |M|^t exceeds the budget.
void enumerate_products(const MatrixSet& m, int length,
                        const std::function<void(const ProductWord&, const Matrix&)>& visit,
                        long long budget = 10'000'000);

/// max over vertex reps v of norm(A v): the exact polytopal operator norm.
double operator_norm(const Matrix& a, const PolytopalNorm& n);

struct JsrBounds {
    double lower = 0.0;
    double upper = 0.0;
    int depth = 0;
    long long pruned = 0;    // discarded branches
    bool complete = true;    // false when the node budget truncated a level
    ProductWord best_word;   // smallest word attaining the lower bound
    double best_ratio = 0.0;
};

struct JsrOptions {
    int depth = 4;
    const PolytopalNorm* norm = nullptr;  // nullptr: Euclidean operator norm
    long long node_budget = 10'000'000;
    bool prune = true;
    int threads = 0;  // 0: JSR_THREADS env or hardware_concurrency
};

/// Two-sided JSR estimate by exhaustive product search with Gripenberg-style
/// pruning:
///   lower = max over t <= depth, S in S_t of spectral_radius(S)^{1/t}
///   upper = min over t <= depth of (max over S_t of ||S||)^{1/t}
/// Pruning never changes either value: a prefix is discarded only when every
/// completion provably stays below the current lower bound minus slack.
JsrBounds jsr_bounds(const MatrixSet& m, const JsrOptions& options);
JsrBounds jsr_bounds(const MatrixSet& m, int depth);

struct DiagonalEstimate {
    double value = 0.0;
    bool complete = true;
};

/// max over t <= depth, S in S_t, i of |S_ii|^{1/t}.
DiagonalEstimate diagonal_jsr_estimate(const MatrixSet& m, int depth,
                                       long long budget = 10'000'000);

enum class Reducibility { irreducible, reducible, unknown };

struct IrreducibilityReport {
    Reducibility status = Reducibility::unknown;
    /// Basis of a common invariant subspace when status == reducible.
    std::vector<Vec> witness;
};

/// Searches for a common invariant subspace (d <= 4). Irreducibility is
/// certified either by the generated algebra having full dimension or, for
/// the subspace dimensions where eigenvector candidates are exhaustive, by
/// candidate elimination. Inconclusive searches report unknown.
IrreducibilityReport check_irreducibility(const MatrixSet& m, unsigned seed = 0);

}  // namespace jsr
