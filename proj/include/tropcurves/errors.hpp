#pragma once

#include <stdexcept>
#include <string>

namespace tropcurves {

// Base class for all domain errors raised by this library.  `kind()` is a
// stable machine-readable identifier used by the CLI to build error objects
// and select exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// A truncated series does not carry enough terms to certify the requested
// quantity (e.g. the valuation of a truncated-empty series).
class PrecisionLoss : public Error {
public:
    explicit PrecisionLoss(const std::string& message)
        : Error("PrecisionLoss", message) {}
};

// Attempt to invert the zero series.
class ZeroInverse : public Error {
public:
    explicit ZeroInverse(const std::string& message)
        : Error("ZeroInverse", message) {}
};

// Two evaluation parameters coincide where distinctness is required.
class DuplicatePoint : public Error {
public:
    explicit DuplicatePoint(const std::string& message)
        : Error("DuplicatePoint", message) {}
};

// A label was referenced that the object does not carry.
class UnknownLabel : public Error {
public:
    explicit UnknownLabel(const std::string& message)
        : Error("UnknownLabel", message) {}
};

// Vector/matrix dimensions, or constraint codimensions, do not match the
// ambient problem.
class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& message)
        : Error("DimensionMismatch", message) {}
};

// A degree datum violates its invariants (non-primitive ray, weight < 1,
// unbalanced ray multiset, bad label map).
class InvalidDegree : public Error {
public:
    explicit InvalidDegree(const std::string& message)
        : Error("InvalidDegree", message) {}
};

// Evaluation parameter collides with a labeled point (the image would lie on
// the toric boundary rather than in the dense torus).
class OnBoundary : public Error {
public:
    explicit OnBoundary(const std::string& message)
        : Error("OnBoundary", message) {}
};

// An edge position difference is not an integer multiple of the edge length.
class NonIntegralDirection : public Error {
public:
    explicit NonIntegralDirection(const std::string& message)
        : Error("NonIntegralDirection", message) {}
};

// An incidence problem is non-generic: some combinatorial type produced a
// consistent-but-singular system or a zero-length solution, so the count is
// not well defined for these constraints.
class Degenerate : public Error {
public:
    explicit Degenerate(const std::string& message)
        : Error("Degenerate", message) {}
};

// Division by a zero entry where a nonzero value is required.
class ZeroDivisor : public Error {
public:
    explicit ZeroDivisor(const std::string& message)
        : Error("ZeroDivisor", message) {}
};

// Raw input fails a structural precondition (asymmetric matrix, malformed
// JSON value, inconsistent label sets, ...).
class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& message)
        : Error("InvalidInput", message) {}
};

}  // namespace tropcurves
