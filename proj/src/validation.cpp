#include "cwcu/validation.hpp"

#include <random>

#include "cwcu/estimators.hpp"
#include "cwcu/montecarlo.hpp"

namespace cwcu {

namespace {

Matrix random_complex_matrix(Eigen::Index rows, Eigen::Index cols,
                             std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = Complex(normal(rng), normal(rng));
    }
  }
  return m;
}

}  // namespace

LinearModel random_linear_model(std::uint64_t seed, Eigen::Index n,
                                Eigen::Index m, bool diagonal_prior) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL);
  Matrix h = random_complex_matrix(m, n, rng);
  Vector mean = random_complex_matrix(n, 1, rng);

  Matrix c_xx;
  if (diagonal_prior) {
    std::uniform_real_distribution<double> var(0.2, 2.0);
    RealVector d(n);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = var(rng);
    c_xx = d.cast<Complex>().asDiagonal();
  } else {
    Matrix q = random_complex_matrix(n, n, rng);
    c_xx = 0.3 * Matrix::Identity(n, n) + (q * q.adjoint()) / static_cast<double>(n);
    c_xx = 0.5 * (c_xx + c_xx.adjoint());
  }

  Matrix g = random_complex_matrix(m, m, rng);
  Matrix c_nn =
      0.5 * Matrix::Identity(m, m) + (g * g.adjoint()) / static_cast<double>(m);
  c_nn = 0.5 * (c_nn + c_nn.adjoint());
  return LinearModel(std::move(h), std::move(mean), std::move(c_xx),
                     std::move(c_nn));
}

JointGaussianModel random_joint_model(std::uint64_t seed, Eigen::Index n,
                                      Eigen::Index m) {
  return random_linear_model(seed, n, m, false).to_moments();
}

namespace {

void update(CheckResult& check, double dev) {
  check.max_dev = std::max(check.max_dev, dev);
}

}  // namespace

std::vector<CheckResult> run_identity_suite(int n_seeds, double perturb) {
  std::vector<CheckResult> checks = {
      {"cwcu_factorization", 0.0, 1e-9, false},
      {"cwcu_constraint", 0.0, 1e-9, false},
      {"d_ratio_form", 0.0, 1e-9, false},
      {"independent_d_lmmse_row", 0.0, 1e-9, false},
      {"independent_row_form", 0.0, 1e-8, false},
      {"unit_diagonal", 0.0, 1e-9, false},
      {"b2_identity_is_b1", 0.0, 1e-10, false},
      {"cwcu_error_cov_routes", 0.0, 1e-9, false},
  };
  auto& factorization = checks[0];
  auto& constraint = checks[1];
  auto& ratio = checks[2];
  auto& d_row = checks[3];
  auto& row_form = checks[4];
  auto& unit_diag = checks[5];
  auto& b2_b1 = checks[6];
  auto& cov_routes = checks[7];

  for (int s = 0; s < n_seeds; ++s) {
    std::mt19937_64 dims(static_cast<std::uint64_t>(s) + 1);
    std::uniform_int_distribution<Eigen::Index> pick_n(1, 6);
    Eigen::Index n = pick_n(dims);
    std::uniform_int_distribution<Eigen::Index> pick_m(n, 10);
    Eigen::Index m = pick_m(dims);

    // general Gaussian prior route
    LinearModel gen = random_linear_model(static_cast<std::uint64_t>(s), n, m, false);
    JointGaussianModel joint = gen.to_moments();
    AffineEstimator lmmse = lmmse_from_moments(joint);
    auto [cwcu, gain] = cwcu_from_moments(joint);

    Matrix factored = gain.d.cast<Complex>().asDiagonal() * lmmse.E;
    Matrix cwcu_e = cwcu.E;
    if (perturb != 0.0) cwcu_e(0, 0) += perturb;
    update(factorization, rel_deviation(cwcu_e, factored));

    Matrix c_yx = joint.C_xy.adjoint();
    for (Eigen::Index i = 0; i < n; ++i) {
      Complex lhs = (cwcu.E.row(i) * c_yx.col(i))(0);
      double sigma2 = joint.C_xx(i, i).real();
      update(constraint, std::abs(lhs - sigma2) / sigma2);
    }

    DiagonalGain ratio_gain = d_matrix_ratio_form(joint);
    update(ratio, (ratio_gain.d - gain.d).cwiseAbs().maxCoeff() /
                      gain.d.cwiseAbs().maxCoeff());

    EstimatorPerformance closed = cwcu_error_covariance(joint, gain);
    EstimatorPerformance generic = generic_error_covariance(gen, cwcu);
    update(cov_routes, rel_deviation(closed.error_cov, generic.error_cov));

    AffineEstimator b1 = blue_b1(gen);
    AffineEstimator b2 = blue_b2(gen, SubspaceConstraint(Matrix::Identity(n, n)));
    update(b2_b1, rel_deviation(b2.E, b1.E));

    // diagonal-prior route
    LinearModel diag =
        random_linear_model(static_cast<std::uint64_t>(s) + 7919, n, m, true);
    auto [ind, ind_gain] = cwcu_linear_independent(diag);
    AffineEstimator diag_lmmse = lmmse_linear(diag);

    Matrix eh = ind.E * diag.H;
    update(unit_diag, (eh.diagonal() - Vector::Ones(n)).cwiseAbs().maxCoeff());

    for (Eigen::Index i = 0; i < n; ++i) {
      Complex gi = (diag_lmmse.E.row(i) * diag.H.col(i))(0);
      update(d_row, std::abs(1.0 / gi - ind_gain.d(i)) / ind_gain.d(i));
      Vector row = cwcu_row_alternative(diag, i);
      update(row_form,
             (ind.E.row(i).adjoint() - row).cwiseAbs().maxCoeff() /
                 row.cwiseAbs().maxCoeff());
    }
  }

  for (auto& check : checks) check.pass = check.max_dev <= check.tol;
  return checks;
}

}  // namespace cwcu
