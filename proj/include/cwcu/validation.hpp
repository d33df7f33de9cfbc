#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cwcu/models.hpp"

namespace cwcu {

/// Seeded random linear model with complex Gaussian H, a well-conditioned
/// PD noise covariance and (optionally diagonal) PD prior covariance.
LinearModel random_linear_model(std::uint64_t seed, Eigen::Index n,
                                Eigen::Index m, bool diagonal_prior);

/// Random joint second-order moments obtained from a random linear model,
/// so the block covariance is PSD by construction.
JointGaussianModel random_joint_model(std::uint64_t seed, Eigen::Index n,
                                      Eigen::Index m);

struct CheckResult {
  std::string name;
  double max_dev = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Algebraic identity suite over seeded random models: the CWCU/LMMSE
/// factorization, the constraint equations, the alternative D and row
/// formulas, unit diagonal for diagonal priors, B2(V=I)=B1 and the two
/// error-covariance routes. perturb != 0 injects a fault into the
/// factorization check (negative-control hook).
std::vector<CheckResult> run_identity_suite(int n_seeds, double perturb = 0.0);

}  // namespace cwcu
