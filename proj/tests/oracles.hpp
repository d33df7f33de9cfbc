// Test-only independent oracles. These deliberately avoid the library's
// Cholesky-based construction paths: everything here goes through generic
// LU solves on explicitly assembled systems.
#pragma once

#include <Eigen/Dense>

#include "cwcu/linalg.hpp"

namespace cwcu::oracle {

/// Solves the equality-constrained QP  min e^H C_yy e  s.t.  e^H c_yx = sigma2
/// through the assembled KKT system with a full-pivot LU factorization.
inline Vector kkt_cwcu_row(const Matrix& c_yy, const Vector& c_yx,
                           double sigma2) {
  const auto m = c_yy.rows();
  Matrix kkt(m + 1, m + 1);
  kkt.topLeftCorner(m, m) = c_yy;
  kkt.topRightCorner(m, 1) = c_yx;
  kkt.bottomLeftCorner(1, m) = c_yx.adjoint();
  kkt(m, m) = 0.0;
  Vector rhs = Vector::Zero(m + 1);
  rhs(m) = sigma2;
  Vector sol = Eigen::FullPivLU<Matrix>(kkt).solve(rhs);
  return sol.head(m);
}

/// LMMSE matrix from the normal equations C_yy E^H = C_yx via generic LU.
inline Matrix lu_lmmse_matrix(const Matrix& c_xy, const Matrix& c_yy) {
  return Eigen::FullPivLU<Matrix>(c_yy).solve(Matrix(c_xy.adjoint())).adjoint();
}

/// Circular convolution of two length-N sequences (direct O(N^2) form).
inline Vector circular_convolve(const Vector& a, const Vector& b) {
  const auto n = a.size();
  Vector out = Vector::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      out(k) += a(l) * b(((k - l) % n + n) % n);
    }
  }
  return out;
}

}  // namespace cwcu::oracle
