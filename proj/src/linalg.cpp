#include "cwcu/linalg.hpp"

#include <string>

namespace cwcu {

Matrix symmetrize_hermitian(const Matrix& a, double tol, const char* name) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch(std::string(name) + " must be square, got " +
                            std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()));
  }
  double dev = hermitian_deviation(a);
  if (dev > tol) {
    throw NotHermitian(std::string(name) + " deviates from Hermitian by " +
                       std::to_string(dev));
  }
  return 0.5 * (a + a.adjoint());
}

double min_eigenvalue_hermitian(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

HpdSolver::HpdSolver(const Matrix& a, const char* name) : llt_(a) {
  if (llt_.info() != Eigen::Success) {
    throw SingularCovariance(std::string(name) +
                             " is not positive definite (Cholesky failed)");
  }
}

}  // namespace cwcu
