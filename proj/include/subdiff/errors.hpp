#pragma once

#include <stdexcept>
#include <string>

namespace subdiff {

// Argument outside the mathematical domain of a formula (e.g. the NTS
// Laplace transform evaluated where the fractional power turns complex).
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Adaptive quadrature could not reach the requested tolerance.
struct QuadratureError : std::runtime_error {
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

// Series / asymptotic evaluation failed to converge.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Degenerate input to a least-squares fit.
struct FitError : std::runtime_error {
    explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

// No feasible point found by any optimizer start.
struct OptimizationError : std::runtime_error {
    explicit OptimizationError(const std::string& what) : std::runtime_error(what) {}
};

// Time series has too few constant runs for the subdiffusive decomposition.
struct NoConstantPeriods : std::runtime_error {
    explicit NoConstantPeriods(const std::string& what) : std::runtime_error(what) {}
};

// Empirical Laplace transform would overflow at the requested argument.
struct OverflowGuard : std::runtime_error {
    explicit OverflowGuard(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct GridError : std::runtime_error {
    explicit GridError(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subdiff
