#pragma once

#include "cwcu/linalg.hpp"

namespace cwcu {

/// Second-order description of jointly distributed parameters x (n-dim) and
/// measurements y (m-dim). C_yy must be positive definite; C_xx only PSD.
struct JointGaussianModel {
  Vector mean_x;
  Vector mean_y;
  Matrix C_xx;
  Matrix C_xy;
  Matrix C_yy;

  JointGaussianModel(Vector mean_x_in, Vector mean_y_in, Matrix c_xx,
                     Matrix c_xy, Matrix c_yy);

  Eigen::Index n() const { return mean_x.size(); }
  Eigen::Index m() const { return mean_y.size(); }

  /// PSD check of the full block covariance [[C_xx, C_xy],[C_xy^H, C_yy]].
  /// Expensive; intended for validation paths, not construction.
  void validate_block_psd(double tol = 1e-8) const;
};

/// y = H x + n with known H, prior mean/covariance of x, and noise
/// covariance C_nn (noise zero mean, independent of x).
struct LinearModel {
  Matrix H;        // m x n
  Vector mean_x;   // n
  Matrix C_xx;     // n x n, Hermitian PSD, strictly positive diagonal
  Matrix C_nn;     // m x m, Hermitian PD

  LinearModel(Matrix h, Vector mean_x_in, Matrix c_xx, Matrix c_nn);

  Eigen::Index n() const { return H.cols(); }
  Eigen::Index m() const { return H.rows(); }

  Vector mean_y() const { return H * mean_x; }
  Matrix induced_C_xy() const { return C_xx * H.adjoint(); }
  Matrix induced_C_yy() const { return H * C_xx * H.adjoint() + C_nn; }

  /// Second-order moments induced by the linear model.
  JointGaussianModel to_moments() const;
};

/// Known subspace x = V z, V full column rank with p < n columns.
struct SubspaceConstraint {
  Matrix V;  // n x p

  explicit SubspaceConstraint(Matrix v);

  Eigen::Index p() const { return V.cols(); }
};

}  // namespace cwcu
