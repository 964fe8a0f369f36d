#pragma once

#include "jsr/matset.hpp"
#include "jsr/polytope.hpp"

namespace jsr {

/// Spectrum-maximizing-product guess: a word and the t-th root of its
/// spectral radius.
struct SmpCandidate {
    ProductWord word;
    double ratio = 0.0;
};

SmpCandidate smp_from_word(const MatrixSet& m, const ProductWord& word);

struct InvariantPolytopeResult {
    SymmetricPolytope ball;
    bool certified = false;
    int iterations = 0;
    int added_points = 0;
};

/// The worked 2x2 pair: A1 = [[6,-4],[7,-4]], A2 = [[-4,4],[-5,4]].
MatrixSet example_pair();

/// Scales the members by 1/ratio, seeds with the leading eigenvector of the
/// scaled candidate product, and grows a symmetric hull until no scaled
/// member maps a vertex outside (certified) or the point budget is hit.
/// Requires a real simple leading eigenvalue; collapsing onto a subspace
/// raises ReducibilitySuspectedError.
InvariantPolytopeResult build_invariant_polytope(const MatrixSet& m, const SmpCandidate& smp,
                                                 int max_points = 200);

/// true iff max over members of the induced operator norm is at most
/// rho * (1 + 1e-9).
bool verify_extremal(const MatrixSet& m, const PolytopalNorm& n, double rho);

}  // namespace jsr
