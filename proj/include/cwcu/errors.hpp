#pragma once

#include <stdexcept>
#include <string>

namespace cwcu {

/// Base class for all estimation-related failures. Each subclass carries a
/// stable machine-readable code used by the CLI error reporting.
class EstimationError : public std::runtime_error {
public:
  EstimationError(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

class DimensionMismatch : public EstimationError {
public:
  explicit DimensionMismatch(const std::string& what)
      : EstimationError("DimensionMismatch", what) {}
};

class NotHermitian : public EstimationError {
public:
  explicit NotHermitian(const std::string& what)
      : EstimationError("NotHermitian", what) {}
};

class SingularCovariance : public EstimationError {
public:
  explicit SingularCovariance(const std::string& what)
      : EstimationError("SingularCovariance", what) {}
};

class RankDeficient : public EstimationError {
public:
  explicit RankDeficient(const std::string& what)
      : EstimationError("RankDeficient", what) {}
};

/// The measurement carries no information about component i; the CWCU
/// constraint for that component is infeasible.
class UninformativeComponent : public EstimationError {
public:
  UninformativeComponent(int component, const std::string& what)
      : EstimationError("UninformativeComponent", what), component_(component) {}
  int component() const { return component_; }

private:
  int component_;
};

class NotDiagonalPrior : public EstimationError {
public:
  NotDiagonalPrior(int row, int col, const std::string& what)
      : EstimationError("NotDiagonalPrior", what), row_(row), col_(col) {}
  int row() const { return row_; }
  int col() const { return col_; }

private:
  int row_;
  int col_;
};

class InconsistentPrior : public EstimationError {
public:
  explicit InconsistentPrior(const std::string& what)
      : EstimationError("InconsistentPrior", what) {}
};

class DegenerateRegressor : public EstimationError {
public:
  explicit DegenerateRegressor(const std::string& what)
      : EstimationError("DegenerateRegressor", what) {}
};

class FactorizationFailure : public EstimationError {
public:
  explicit FactorizationFailure(const std::string& what)
      : EstimationError("FactorizationFailure", what) {}
};

}  // namespace cwcu
