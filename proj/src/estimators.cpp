#include "cwcu/estimators.hpp"

#include <cmath>
#include <string>

namespace cwcu {

namespace {

constexpr double kUninformativeRel = 1e-12;
constexpr double kImagTol = 1e-10;

/// Asserts a computed quadratic form is real up to round-off, then drops
/// the imaginary part.
double take_real(Complex z, const char* what) {
  if (std::abs(z.imag()) > kImagTol * std::max(1.0, std::abs(z.real()))) {
    throw NotHermitian(std::string(what) + " has non-negligible imaginary part " +
                       std::to_string(z.imag()));
  }
  return z.real();
}

Vector offset_for(const Vector& mean_x, const Matrix& e, const Vector& mean_y) {
  return mean_x - e * mean_y;
}

}  // namespace

std::string to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::Lmmse: return "lmmse";
    case EstimatorKind::CwcuMoments: return "cwcu_moments";
    case EstimatorKind::CwcuLinearGaussian: return "cwcu_linear_gaussian";
    case EstimatorKind::CwcuIndependent: return "cwcu_independent";
    case EstimatorKind::B1: return "b1";
    case EstimatorKind::B2: return "b2";
    case EstimatorKind::Trivial: return "trivial";
  }
  return "unknown";
}

Vector apply_estimator(const AffineEstimator& est, const Vector& y) {
  if (y.size() != est.m()) {
    throw DimensionMismatch("measurement length " + std::to_string(y.size()) +
                            " does not match estimator width " +
                            std::to_string(est.m()));
  }
  return est.E * y + est.c;
}

AffineEstimator lmmse_from_moments(const JointGaussianModel& model) {
  HpdSolver solver(model.C_yy, "C_yy");
  // E^H solves the normal equations C_yy E^H = C_yx.
  Matrix e = solver.solve(Matrix(model.C_xy.adjoint())).adjoint();
  return {e, offset_for(model.mean_x, e, model.mean_y), EstimatorKind::Lmmse};
}

std::pair<AffineEstimator, DiagonalGain> cwcu_from_moments(
    const JointGaussianModel& model) {
  AffineEstimator lmmse = lmmse_from_moments(model);
  HpdSolver solver(model.C_yy, "C_yy");

  const auto n = model.n();
  RealVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector c_yxi = model.C_xy.row(i).adjoint();
    // quadratic form C_xiy C_yy^-1 C_yxi
    double denom = take_real((c_yxi.adjoint() * solver.solve(c_yxi))(0),
                             "CWCU denominator");
    double sigma2 = model.C_xx(i, i).real();
    if (denom <= kUninformativeRel * sigma2) {
      throw UninformativeComponent(
          static_cast<int>(i),
          "measurement carries no information about component " +
              std::to_string(i));
    }
    d(i) = sigma2 / denom;
  }

  Matrix e = d.cast<Complex>().asDiagonal() * lmmse.E;
  AffineEstimator est{e, offset_for(model.mean_x, e, model.mean_y),
                      EstimatorKind::CwcuMoments};
  return {std::move(est), DiagonalGain{std::move(d)}};
}

DiagonalGain d_matrix_ratio_form(const JointGaussianModel& model) {
  HpdSolver solver(model.C_yy, "C_yy");
  Matrix a = model.C_xy * solver.solve(Matrix(model.C_xy.adjoint()));

  const auto n = model.n();
  RealVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double aii = take_real(a(i, i), "diag of A");
    double sigma2 = model.C_xx(i, i).real();
    if (aii <= kUninformativeRel * sigma2) {
      throw UninformativeComponent(
          static_cast<int>(i),
          "diag(A) entry " + std::to_string(i) + " not strictly positive");
    }
    d(i) = sigma2 / aii;
  }
  return {std::move(d)};
}

AffineEstimator lmmse_linear(const LinearModel& model) {
  return lmmse_from_moments(model.to_moments());
}

std::pair<AffineEstimator, DiagonalGain> cwcu_linear_gaussian(
    const LinearModel& model) {
  auto [est, gain] = cwcu_from_moments(model.to_moments());
  est.kind = EstimatorKind::CwcuLinearGaussian;
  return {std::move(est), std::move(gain)};
}

namespace {

void require_diagonal_prior(const Matrix& c_xx) {
  for (Eigen::Index i = 0; i < c_xx.rows(); ++i) {
    for (Eigen::Index j = 0; j < c_xx.cols(); ++j) {
      if (i != j && std::abs(c_xx(i, j)) > 1e-12) {
        throw NotDiagonalPrior(static_cast<int>(i), static_cast<int>(j),
                               "prior covariance entry (" + std::to_string(i) +
                                   "," + std::to_string(j) +
                                   ") is nonzero; parameters not independent");
      }
    }
  }
}

}  // namespace

std::pair<AffineEstimator, DiagonalGain> cwcu_linear_independent(
    const LinearModel& model) {
  require_diagonal_prior(model.C_xx);
  HpdSolver solver(model.induced_C_yy(), "C_yy");

  const auto n = model.n();
  RealVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector h_i = model.H.col(i);
    double quad = take_real((h_i.adjoint() * solver.solve(h_i))(0),
                            "h_i^H C_yy^-1 h_i");
    double sigma2 = model.C_xx(i, i).real();
    if (sigma2 * quad <= kUninformativeRel) {
      throw UninformativeComponent(
          static_cast<int>(i),
          "measurement carries no information about component " +
              std::to_string(i));
    }
    d(i) = 1.0 / (sigma2 * quad);
  }

  Matrix e_lmmse =
      solver.solve(Matrix((model.C_xx * model.H.adjoint()).adjoint()))
          .adjoint();
  Matrix e = d.cast<Complex>().asDiagonal() * e_lmmse;
  AffineEstimator est{e, offset_for(model.mean_x, e, model.mean_y()),
                      EstimatorKind::CwcuIndependent};
  return {std::move(est), DiagonalGain{std::move(d)}};
}

Vector cwcu_row_alternative(const LinearModel& model, Eigen::Index i) {
  require_diagonal_prior(model.C_xx);
  const auto n = model.n();
  if (i < 0 || i >= n) throw DimensionMismatch("component index out of range");

  // Nuisance covariance C_i = Hbar_i C_xbar_xbar Hbar_i^H + C_nn.
  Matrix c_i = model.C_nn;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j == i) continue;
    c_i += model.C_xx(j, j).real() *
           (model.H.col(j) * model.H.col(j).adjoint());
  }
  HpdSolver solver(symmetrize_hermitian(c_i, 1e-9, "C_i"), "C_i");
  Vector w = solver.solve(Vector(model.H.col(i)));
  double denom = take_real((model.H.col(i).adjoint() * w)(0), "h^H C_i^-1 h");
  if (denom <= kUninformativeRel) {
    throw UninformativeComponent(static_cast<int>(i),
                                 "h_i^H C_i^-1 h_i not strictly positive");
  }
  return w / denom;
}

AffineEstimator blue_b1(const LinearModel& model) {
  if (model.m() < model.n()) {
    throw RankDeficient("B1 requires m >= n");
  }
  HpdSolver noise(model.C_nn, "C_nn");
  Matrix w = noise.solve(model.H);               // C_nn^-1 H
  Matrix gram = symmetrize_hermitian(model.H.adjoint() * w, 1e-9, "Gram");

  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff();
  double hi = es.eigenvalues().maxCoeff();
  if (lo <= 0.0 || hi / lo >= 1e12) {
    throw RankDeficient("H^H C_nn^-1 H numerically singular (cond >= 1e12)");
  }

  HpdSolver gram_solver(gram, "Gram");
  Matrix e = gram_solver.solve(Matrix(w.adjoint()));
  return {e, Vector::Zero(model.n()), EstimatorKind::B1};
}

AffineEstimator blue_b2(const LinearModel& model,
                        const SubspaceConstraint& sub) {
  if (sub.V.rows() != model.n()) {
    throw DimensionMismatch("V row count does not match parameter dimension");
  }
  HpdSolver noise(model.C_nn, "C_nn");
  Matrix hv = model.H * sub.V;                   // m x p
  Matrix w = noise.solve(hv);                    // C_nn^-1 H V
  Matrix gram = symmetrize_hermitian(hv.adjoint() * w, 1e-9, "Gram");
  if (min_eigenvalue_hermitian(gram) <= 0.0) {
    throw RankDeficient("V^H H^H C_nn^-1 H V numerically singular");
  }
  HpdSolver gram_solver(gram, "Gram");
  Matrix e = sub.V * gram_solver.solve(Matrix(w.adjoint()));
  return {e, Vector::Zero(model.n()), EstimatorKind::B2};
}

EstimatorPerformance cwcu_error_covariance(const JointGaussianModel& model,
                                           const DiagonalGain& gain) {
  if (gain.d.size() != model.n()) {
    throw DimensionMismatch("gain dimension does not match model");
  }
  HpdSolver solver(model.C_yy, "C_yy");
  Matrix a = model.C_xy * solver.solve(Matrix(model.C_xy.adjoint()));
  Eigen::DiagonalMatrix<Complex, Eigen::Dynamic> d(gain.d.cast<Complex>());
  Matrix c_ee = model.C_xx - a * d - d * a + d * Matrix(a * d);
  c_ee = 0.5 * (c_ee + c_ee.adjoint());

  EstimatorPerformance perf;
  perf.error_cov = c_ee;
  perf.bmse = c_ee.diagonal().real();
  perf.error_mean = Vector::Zero(model.n());
  return perf;
}

EstimatorPerformance generic_error_covariance(const LinearModel& model,
                                              const AffineEstimator& est) {
  if (est.n() != model.n() || est.m() != model.m()) {
    throw DimensionMismatch("estimator dimensions do not match model");
  }
  Matrix residual_gain =
      Matrix::Identity(model.n(), model.n()) - est.E * model.H;

  EstimatorPerformance perf;
  perf.error_mean = residual_gain * model.mean_x - est.c;
  Matrix cov = residual_gain * model.C_xx * residual_gain.adjoint() +
               est.E * model.C_nn * est.E.adjoint();
  perf.error_cov = 0.5 * (cov + cov.adjoint());
  perf.bmse = perf.error_cov.diagonal().real() +
              perf.error_mean.cwiseAbs2();
  return perf;
}

}  // namespace cwcu
