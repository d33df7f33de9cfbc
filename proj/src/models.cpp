#include "cwcu/models.hpp"

#include <string>

namespace cwcu {

JointGaussianModel::JointGaussianModel(Vector mean_x_in, Vector mean_y_in,
                                       Matrix c_xx, Matrix c_xy, Matrix c_yy)
    : mean_x(std::move(mean_x_in)),
      mean_y(std::move(mean_y_in)),
      C_xx(symmetrize_hermitian(c_xx, 1e-10, "C_xx")),
      C_xy(std::move(c_xy)),
      C_yy(symmetrize_hermitian(c_yy, 1e-10, "C_yy")) {
  const auto n = mean_x.size();
  const auto m = mean_y.size();
  if (n < 1 || m < 1) throw DimensionMismatch("n and m must be >= 1");
  if (C_xx.rows() != n || C_xy.rows() != n || C_xy.cols() != m ||
      C_yy.rows() != m) {
    throw DimensionMismatch("moment dimensions inconsistent with means");
  }
  if (min_eigenvalue_hermitian(C_yy) <= 0.0) {
    throw SingularCovariance("C_yy must be positive definite");
  }
}

void JointGaussianModel::validate_block_psd(double tol) const {
  const auto nn = n();
  const auto mm = m();
  Matrix block(nn + mm, nn + mm);
  block.topLeftCorner(nn, nn) = C_xx;
  block.topRightCorner(nn, mm) = C_xy;
  block.bottomLeftCorner(mm, nn) = C_xy.adjoint();
  block.bottomRightCorner(mm, mm) = C_yy;
  double lam = min_eigenvalue_hermitian(block);
  if (lam < -tol) {
    throw NotHermitian("block covariance not PSD: min eigenvalue " +
                       std::to_string(lam));
  }
}

LinearModel::LinearModel(Matrix h, Vector mean_x_in, Matrix c_xx, Matrix c_nn)
    : H(std::move(h)),
      mean_x(std::move(mean_x_in)),
      C_xx(symmetrize_hermitian(c_xx, 1e-10, "C_xx")),
      C_nn(symmetrize_hermitian(c_nn, 1e-10, "C_nn")) {
  const auto nn = H.cols();
  const auto mm = H.rows();
  if (nn < 1 || mm < 1) throw DimensionMismatch("H must be at least 1x1");
  if (mean_x.size() != nn || C_xx.rows() != nn || C_nn.rows() != mm) {
    throw DimensionMismatch("model dimensions inconsistent with H");
  }
  // A zero column of H leaves the parameter unobservable unless the prior
  // correlates it with an observed component (rank-deficient priors such as
  // the frequency-domain channel covariance rely on exactly that).
  for (Eigen::Index j = 0; j < nn; ++j) {
    if (H.col(j).cwiseAbs().maxCoeff() > 0.0) continue;
    bool correlated = false;
    for (Eigen::Index k = 0; k < nn && !correlated; ++k) {
      correlated = (k != j) && std::abs(C_xx(j, k)) > 1e-15;
    }
    if (!correlated) {
      throw RankDeficient("H column " + std::to_string(j) +
                          " is all zero; parameter unobservable");
    }
  }
  if (min_eigenvalue_hermitian(C_nn) <= 0.0) {
    throw SingularCovariance("C_nn must be positive definite");
  }
  // C_xx may be singular (rank-deficient priors are allowed) but its
  // diagonal must be strictly positive, otherwise the CWCU constraint for
  // that component is undefined.
  if (min_eigenvalue_hermitian(C_xx) < -1e-10) {
    throw SingularCovariance("C_xx must be positive semidefinite");
  }
  for (Eigen::Index i = 0; i < nn; ++i) {
    if (C_xx(i, i).real() <= 0.0) {
      throw SingularCovariance("C_xx diagonal entry " + std::to_string(i) +
                               " must be strictly positive");
    }
  }
}

JointGaussianModel LinearModel::to_moments() const {
  return JointGaussianModel(mean_x, mean_y(), C_xx, induced_C_xy(),
                            induced_C_yy());
}

SubspaceConstraint::SubspaceConstraint(Matrix v) : V(std::move(v)) {
  if (V.rows() < 1 || V.cols() < 1 || V.cols() > V.rows()) {
    throw DimensionMismatch("V must be n x p with 1 <= p <= n");
  }
  Eigen::JacobiSVD<Matrix> svd(V);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-10 * sv(0)) {
    throw RankDeficient("V is not full column rank");
  }
}

}  // namespace cwcu
