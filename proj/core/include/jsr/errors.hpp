#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace jsr {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or out-of-contract input (bad dimensions, non-finite entries,
/// invalid index sets, schema violations).
class InvalidInputError : public Error {
public:
    using Error::Error;
};

class DimensionMismatchError : public InvalidInputError {
public:
    using InvalidInputError::InvalidInputError;
};

/// A configured budget (product count, node count) would be exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Input points do not span, or a polytope fails its invariants.
class DegeneratePolytopeError : public Error {
public:
    using Error::Error;
};

/// Iterative solver failed to converge or produced an unusable result.
class NumericalFailureError : public Error {
public:
    using Error::Error;
};

/// Entry normalization requested for a set with joint spectral radius zero.
class ZeroJsrError : public InvalidInputError {
public:
    using InvalidInputError::InvalidInputError;
};

/// Invariant-polytope seeding collapsed onto a proper subspace. When the
/// collapse exhibits an invariant subspace, its orthonormal basis rides
/// along so callers can switch to the block-triangular path.
class ReducibilitySuspectedError : public Error {
public:
    using Error::Error;
    ReducibilitySuspectedError(const std::string& what,
                               std::vector<std::vector<double>> witness)
        : Error(what), witness_(std::move(witness)) {}
    const std::vector<std::vector<double>>& witness() const { return witness_; }

private:
    std::vector<std::vector<double>> witness_;
};

/// The candidate product has a complex or non-simple leading eigenvalue.
class UnsupportedCandidateError : public InvalidInputError {
public:
    using InvalidInputError::InvalidInputError;
};

class UnsupportedDimensionError : public InvalidInputError {
public:
    using InvalidInputError::InvalidInputError;
};

/// The built-in exact icosahedron data failed self-validation.
class CorruptedCatalogError : public Error {
public:
    using Error::Error;
};

/// John containment re-check rejected the optimizer output.
class JohnCertificationError : public NumericalFailureError {
public:
    using NumericalFailureError::NumericalFailureError;
};

/// JSON input violates the documented schema; `pointer` names the field.
class SchemaError : public InvalidInputError {
public:
    SchemaError(const std::string& pointer, const std::string& what)
        : InvalidInputError(what + " at " + pointer), pointer_(pointer) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

}  // namespace jsr
