#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shadowlp {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SyntaxError : Error {
  long line;
  SyntaxError(long line_, const std::string& what_)
      : Error("MPS syntax error at line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
};

struct UnsupportedEquality : Error {
  std::string name;
  explicit UnsupportedEquality(const std::string& name_)
      : Error("equality constraints are not supported: " + name_), name(name_) {}
};

struct EmptyProblem : Error {
  EmptyProblem() : Error("problem has no columns") {}
};

struct ZeroRow : Error {
  std::size_t row;
  explicit ZeroRow(std::size_t row_)
      : Error("row " + std::to_string(row_) + " has zero norm"), row(row_) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct CrossedBounds : Error {
  std::size_t column;
  explicit CrossedBounds(std::size_t column_)
      : Error("lower bound is not below upper bound for column " +
              std::to_string(column_)),
        column(column_) {}
};

struct SingularBasis : Error {
  std::size_t step;
  explicit SingularBasis(std::size_t step_)
      : Error("matrix is singular at elimination step " + std::to_string(step_)),
        step(step_) {}
};

struct RejectionBudgetExceeded : Error {
  int attempts;
  explicit RejectionBudgetExceeded(int attempts_)
      : Error("perturbation rejected " + std::to_string(attempts_) +
              " times; bands appear unsatisfiable"),
        attempts(attempts_) {}
};

struct DegenerateDraw : Error {
  DegenerateDraw() : Error("gaussian direction vector degenerated to zero") {}
};

struct ZeroComponent : Error {
  std::size_t index;
  explicit ZeroComponent(std::size_t index_)
      : Error("direction component " + std::to_string(index_) +
              " is numerically zero"),
        index(index_) {}
};

struct NumericalBreakdown : Error {
  using Error::Error;
};

struct UnboundedDirection : Error {
  UnboundedDirection() : Error("no constraint blocks the pivot direction") {}
};

struct InfeasibleStart : Error {
  using Error::Error;
};

struct EnumerationTooLarge : Error {
  std::size_t subsets;
  explicit EnumerationTooLarge(std::size_t subsets_)
      : Error("basis enumeration needs " + std::to_string(subsets_) +
              " subsets, over budget"),
        subsets(subsets_) {}
};

struct AmbiguousCone : Error {
  using Error::Error;
};

struct AllTrialsFailed : Error {
  AllTrialsFailed() : Error("every estimator trial failed") {}
};

struct DomainError : Error {
  using Error::Error;
};

struct StationarityViolation : Error {
  double residual;
  explicit StationarityViolation(double residual_)
      : Error("dual stationarity residual " + std::to_string(residual_) +
              " exceeds 1e-6"),
        residual(residual_) {}
};

}  // namespace shadowlp
