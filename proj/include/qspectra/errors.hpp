#pragma once

#include <stdexcept>
#include <string>

namespace qspectra {

/// Base class of all qspectra exceptions.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input violates an operation precondition (bad operand, wrong shape, ...).
struct PreconditionError : Error {
    using Error::Error;
};

/// A numerical routine failed to deliver the guaranteed accuracy.
struct NumericalError : Error {
    using Error::Error;
};

struct DivisionByZero : PreconditionError {
    DivisionByZero() : PreconditionError("division by zero quaternion") {}
};

struct DimensionMismatch : PreconditionError {
    explicit DimensionMismatch(const std::string& what)
        : PreconditionError("dimension mismatch: " + what) {}
};

struct NotInRepresentationImage : NumericalError {
    explicit NotInRepresentationImage(double residual)
        : NumericalError("complex matrix violates the adjoint-representation block symmetry (residual " +
                         std::to_string(residual) + ")") {}
};

struct Singular : NumericalError {
    Singular() : NumericalError("matrix is singular to working precision") {}
};

struct NotPositive : PreconditionError {
    NotPositive() : PreconditionError("operator is not positive self-adjoint") {}
};

struct NotOrthonormal : PreconditionError {
    NotOrthonormal() : PreconditionError("vector system is not orthonormal") {}
};

struct NotLeftScalarMultiplication : PreconditionError {
    NotLeftScalarMultiplication()
        : PreconditionError("operator pair does not define a left scalar multiplication") {}
};

struct NotNormal : PreconditionError {
    NotNormal() : PreconditionError("operator is not normal") {}
};

struct NotAntiUnitary : PreconditionError {
    NotAntiUnitary() : PreconditionError("operator is not anti self-adjoint unitary") {}
};

struct DoesNotCommuteWithJ : PreconditionError {
    DoesNotCommuteWithJ() : PreconditionError("operator does not commute with J") {}
};

struct BadAuxiliaryUnit : PreconditionError {
    BadAuxiliaryUnit() : PreconditionError("auxiliary unit must be imaginary and anticommute with the slice unit") {}
};

struct ClusterAmbiguity : NumericalError {
    explicit ClusterAmbiguity(double gap, double tol)
        : NumericalError("eigenvalue cluster split is unstable (gap " + std::to_string(gap) +
                         " within 10x of tolerance " + std::to_string(tol) + ")") {}
};

struct MissingSupportPoint : PreconditionError {
    MissingSupportPoint() : PreconditionError("integrand is not defined on every support point") {}
};

struct NotInjective : PreconditionError {
    NotInjective() : PreconditionError("integrand vanishes on a support point with nonzero projector") {}
};

struct NotAssociatedPair : PreconditionError {
    NotAssociatedPair() : PreconditionError("left scalar multiplication is not associated with the operator") {}
};

struct NotEigenvalue : PreconditionError {
    NotEigenvalue() : PreconditionError("point is not in the left point spectrum") {}
};

struct NotContractive : PreconditionError {
    NotContractive() : PreconditionError("operator norm is not strictly below one") {}
};

struct SupportOnBoundary : NumericalError {
    SupportOnBoundary() : NumericalError("transform support touches the unit circle") {}
};

struct NotUnimodular : PreconditionError {
    NotUnimodular() : PreconditionError("twist values must be unimodular") {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error("config error: " + what) {}
};

struct VerificationFailure : Error {
    explicit VerificationFailure(const std::string& what) : Error("verification failure: " + what) {}
};

struct NumericalFailure : NumericalError {
    explicit NumericalFailure(const std::string& what) : NumericalError(what) {}
};

}  // namespace qspectra
