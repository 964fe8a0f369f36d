#pragma once

#include <vector>

#include "jsr/matrix.hpp"

namespace jsr {

/// One linear constraint  coeffs . x  (relation)  rhs,
/// relation is one of '<' (<=), '=' or '>' (>=).
struct LpConstraint {
    Vec coeffs;
    char relation = '<';
    double rhs = 0.0;
};

struct LpResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::optimal;
    Vec x;
    double value = 0.0;
    int iterations = 0;
};

/// Minimizes objective . x subject to the constraints. nonneg[i] marks
/// x_i >= 0; other variables are free (split internally). Dense two-phase
/// tableau simplex with Bland's rule, fully deterministic.
LpResult solve_lp(const Vec& objective, const std::vector<LpConstraint>& constraints,
                  const std::vector<bool>& nonneg);

/// All-variables-free convenience overload.
LpResult solve_lp(const Vec& objective, const std::vector<LpConstraint>& constraints);

}  // namespace jsr
