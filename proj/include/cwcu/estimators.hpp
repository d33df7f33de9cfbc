#pragma once

#include <string>
#include <utility>

#include "cwcu/models.hpp"

namespace cwcu {

enum class EstimatorKind {
  Lmmse,
  CwcuMoments,
  CwcuLinearGaussian,
  CwcuIndependent,
  B1,
  B2,
  Trivial,
};

std::string to_string(EstimatorKind kind);

/// Affine estimator x_hat = E y + c.
struct AffineEstimator {
  Matrix E;  // n x m
  Vector c;  // n
  EstimatorKind kind = EstimatorKind::Trivial;

  Eigen::Index n() const { return E.rows(); }
  Eigen::Index m() const { return E.cols(); }
};

/// Diagonal of the real diagonal gain D relating the CWCU and LMMSE
/// estimator matrices, E_CL = D * E_L.
struct DiagonalGain {
  RealVector d;
};

struct EstimatorPerformance {
  Matrix error_cov;   // n x n Hermitian, covariance of the centered error
  RealVector bmse;    // per-component Bayesian MSE, includes |error_mean|^2
  Vector error_mean;  // Bayesian mean of x - x_hat
};

Vector apply_estimator(const AffineEstimator& est, const Vector& y);

// --- constructions from second-order moments ---

AffineEstimator lmmse_from_moments(const JointGaussianModel& model);

std::pair<AffineEstimator, DiagonalGain> cwcu_from_moments(
    const JointGaussianModel& model);

/// Ratio form of D: diag(C_xx) ./ diag(C_xy C_yy^-1 C_yx). Verification
/// route; construction uses the per-component quadratic forms.
DiagonalGain d_matrix_ratio_form(const JointGaussianModel& model);

// --- constructions under the linear model ---

AffineEstimator lmmse_linear(const LinearModel& model);

/// CWCU estimator for a Gaussian prior (possibly correlated, possibly
/// singular C_xx as long as the induced C_yy is PD).
std::pair<AffineEstimator, DiagonalGain> cwcu_linear_gaussian(
    const LinearModel& model);

/// CWCU estimator for mutually independent parameters (diagonal C_xx).
std::pair<AffineEstimator, DiagonalGain> cwcu_linear_independent(
    const LinearModel& model);

/// Row i of the independent-parameter CWCU estimator via the nuisance
/// covariance form; independent of sigma^2_xi. Returns e_i such that
/// x_hat_i = e_i^H y.
Vector cwcu_row_alternative(const LinearModel& model, Eigen::Index i);

AffineEstimator blue_b1(const LinearModel& model);

AffineEstimator blue_b2(const LinearModel& model,
                        const SubspaceConstraint& sub);

// --- performance evaluation ---

/// Closed-form CWCU error covariance C_xx - A D - D A + D A D,
/// A = C_xy C_yy^-1 C_yx.
EstimatorPerformance cwcu_error_covariance(const JointGaussianModel& model,
                                           const DiagonalGain& gain);

/// Error covariance of an arbitrary affine estimator under a linear model.
EstimatorPerformance generic_error_covariance(const LinearModel& model,
                                              const AffineEstimator& est);

}  // namespace cwcu
