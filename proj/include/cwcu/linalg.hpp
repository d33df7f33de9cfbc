#pragma once

#include <complex>

#include <Eigen/Dense>

#include "cwcu/errors.hpp"

namespace cwcu {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Largest entry modulus; 0 for empty matrices.
inline double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/// max |A - A^H| over all entries.
inline double hermitian_deviation(const Matrix& a) {
  return max_abs(a - a.adjoint());
}

/// Relative max-entry deviation between a matrix and a reference.
inline double rel_deviation(const Matrix& a, const Matrix& ref) {
  double scale = max_abs(ref);
  double dev = max_abs(a - ref);
  return scale > 0.0 ? dev / scale : dev;
}

/// Verifies A is Hermitian within tol, then returns (A + A^H)/2. A deviation
/// beyond tol is treated as a caller bug, not round-off.
Matrix symmetrize_hermitian(const Matrix& a, double tol = 1e-10,
                            const char* name = "matrix");

double min_eigenvalue_hermitian(const Matrix& a);

/// Hermitian positive-definite solver backed by a Cholesky factorization.
/// All covariance "inverses" in the estimator formulas go through this;
/// explicit inverses appear nowhere in the construction paths.
class HpdSolver {
public:
  explicit HpdSolver(const Matrix& a, const char* name = "covariance");

  Matrix solve(const Matrix& b) const { return llt_.solve(b); }
  Vector solve(const Vector& b) const { return llt_.solve(b); }
  Eigen::Index dim() const { return llt_.matrixL().rows(); }

private:
  Eigen::LLT<Matrix> llt_;
};

}  // namespace cwcu
