#include "cwcu/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cwcu {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent per-block stream derived from (seed, block index).
std::mt19937_64 make_block_rng(std::uint64_t seed, std::int64_t block) {
  std::uint64_t s = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(block)));
  return std::mt19937_64(s);
}

/// Factor F with cov = F F^H; Cholesky when PD, eigendecomposition for
/// singular PSD covariances.
Matrix psd_factor(const Matrix& cov) {
  Eigen::LLT<Matrix> llt(cov);
  if (llt.info() == Eigen::Success) return Matrix(llt.matrixL());
  Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
  if (es.info() != Eigen::Success) {
    throw FactorizationFailure("eigendecomposition of covariance failed");
  }
  RealVector lam = es.eigenvalues();
  double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -1e-8 * scale) {
      throw FactorizationFailure("covariance not PSD: eigenvalue " +
                                 std::to_string(lam(i)));
    }
    lam(i) = std::sqrt(std::max(lam(i), 0.0));
  }
  return es.eigenvectors() * lam.cast<Complex>().asDiagonal();
}

}  // namespace

PriorSpec PriorSpec::gaussian(Vector mean, Matrix c_xx) {
  PriorSpec spec;
  spec.is_gaussian_ = true;
  spec.cov_ = symmetrize_hermitian(c_xx, 1e-10, "C_xx");
  if (spec.cov_.rows() != mean.size()) {
    throw DimensionMismatch("prior mean/covariance dimension mismatch");
  }
  spec.mean_ = std::move(mean);
  spec.factor_ = psd_factor(spec.cov_);
  return spec;
}

PriorSpec PriorSpec::independent(std::vector<ComponentPrior> components) {
  PriorSpec spec;
  spec.is_gaussian_ = false;
  const auto n = static_cast<Eigen::Index>(components.size());
  if (n < 1) throw DimensionMismatch("independent prior needs >= 1 component");
  spec.mean_ = Vector(n);
  spec.cov_ = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& c = components[i];
    if (!(c.var > 0.0)) {
      throw FactorizationFailure("component variance must be strictly positive");
    }
    spec.mean_(i) = c.mean;
    spec.cov_(i, i) = c.var;
  }
  spec.components_ = std::move(components);
  return spec;
}

Vector sample_standard_complex_normal(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Vector z(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double re = normal(rng);
    double im = normal(rng);
    z(i) = Complex(re, im);
  }
  return z;
}

Vector PriorSpec::sample(std::mt19937_64& rng) const {
  if (is_gaussian_) {
    return mean_ + factor_ * sample_standard_complex_normal(n(), rng);
  }
  Vector x(n());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  for (Eigen::Index i = 0; i < n(); ++i) {
    const auto& c = components_[static_cast<std::size_t>(i)];
    switch (c.dist) {
      case ComponentDist::ComplexGaussian: {
        double re = normal(rng);
        double im = normal(rng);
        x(i) = c.mean + std::sqrt(c.var) * Complex(re, im);
        break;
      }
      case ComponentDist::Qpsk: {
        // symbols {+-a +- ja} with a = sqrt(var/2), so E|x|^2 - |mean|^2 = var
        double a = std::sqrt(c.var / 2.0);
        std::uniform_int_distribution<int> pick(0, 3);
        int s = pick(rng);
        x(i) = c.mean + Complex((s & 1) ? a : -a, (s & 2) ? a : -a);
        break;
      }
      case ComponentDist::UniformDisk: {
        // uniform on a disk of radius sqrt(2 var) has variance var
        double radius = std::sqrt(2.0 * c.var) * std::sqrt(unit(rng));
        double angle = 2.0 * M_PI * unit(rng);
        x(i) = c.mean + radius * Complex(std::cos(angle), std::sin(angle));
        break;
      }
    }
  }
  return x;
}

Vector sample_noise(const Matrix& c_nn, std::mt19937_64& rng) {
  Matrix sym = symmetrize_hermitian(c_nn, 1e-10, "C_nn");
  if (min_eigenvalue_hermitian(sym) <= 0.0) {
    throw FactorizationFailure("C_nn must be positive definite");
  }
  Eigen::LLT<Matrix> llt(sym);
  return Matrix(llt.matrixL()) * sample_standard_complex_normal(sym.rows(), rng);
}

void PairAccumulator::add(Complex x, Complex xhat) {
  ++count;
  sum_x += x;
  sum_xhat += xhat;
  sum_abs2_x += std::norm(x);
  sum_abs2_xhat += std::norm(xhat);
  sum_xconj_xhat += std::conj(x) * xhat;
}

void PairAccumulator::merge(const PairAccumulator& other) {
  count += other.count;
  sum_x += other.sum_x;
  sum_xhat += other.sum_xhat;
  sum_abs2_x += other.sum_abs2_x;
  sum_abs2_xhat += other.sum_abs2_xhat;
  sum_xconj_xhat += other.sum_xconj_xhat;
}

ConditionalBiasReport conditional_bias_regression(const PairAccumulator& acc) {
  const double n = static_cast<double>(acc.count);
  if (acc.count < 3) {
    throw DegenerateRegressor("need at least 3 pairs for the affine fit");
  }
  double var_x = (acc.sum_abs2_x - std::norm(acc.sum_x) / n) / n;
  if (var_x < 1e-12) {
    throw DegenerateRegressor("sample variance of the regressor below 1e-12");
  }

  // normal equations for xhat ~ alpha x + beta with Gram
  // G = [[sum|x|^2, sum conj(x)^H...], [sum x, N]]
  double det = acc.sum_abs2_x * n - std::norm(acc.sum_x);
  Complex rhs0 = acc.sum_xconj_xhat;
  Complex rhs1 = acc.sum_xhat;
  Complex slope = (n * rhs0 - std::conj(acc.sum_x) * rhs1) / det;
  Complex intercept = (acc.sum_abs2_x * rhs1 - acc.sum_x * rhs0) / det;

  double rss = acc.sum_abs2_xhat -
               (std::conj(slope) * rhs0 + std::conj(intercept) * rhs1).real();
  rss = std::max(rss, 0.0);
  double sigma2 = rss / (n - 2.0);

  ConditionalBiasReport report;
  report.slope = slope;
  report.intercept = intercept;
  report.residual_variance = sigma2;
  report.slope_stderr = std::sqrt(sigma2 * n / det);
  report.intercept_stderr = std::sqrt(sigma2 * acc.sum_abs2_x / det);
  report.n_trials = acc.count;
  return report;
}

namespace {

struct BlockAccum {
  std::vector<Vector> sum_err;
  std::vector<Matrix> sum_outer;     // sum e e^H
  std::vector<RealMatrix> sum_sq;    // sum |e_i conj(e_j)|^2
  std::vector<std::vector<PairAccumulator>> pairs;
  std::vector<std::vector<RawPair>> raw;

  BlockAccum() = default;
  BlockAccum(std::size_t n_est, Eigen::Index n) {
    sum_err.assign(n_est, Vector::Zero(n));
    sum_outer.assign(n_est, Matrix::Zero(n, n));
    sum_sq.assign(n_est, RealMatrix::Zero(n, n));
    pairs.assign(n_est, std::vector<PairAccumulator>(static_cast<std::size_t>(n)));
    raw.resize(n_est);
  }

  void merge(const BlockAccum& other) {
    for (std::size_t k = 0; k < sum_err.size(); ++k) {
      sum_err[k] += other.sum_err[k];
      sum_outer[k] += other.sum_outer[k];
      sum_sq[k] += other.sum_sq[k];
      for (std::size_t i = 0; i < pairs[k].size(); ++i) {
        pairs[k][i].merge(other.pairs[k][i]);
      }
      raw[k].insert(raw[k].end(), other.raw[k].begin(), other.raw[k].end());
    }
  }
};

BlockAccum process_block(const LinearModel& model, const PriorSpec& prior,
                         const std::vector<AffineEstimator>& estimators,
                         const Matrix& noise_factor, const TrialConfig& cfg,
                         std::int64_t block) {
  const auto n = model.n();
  BlockAccum acc(estimators.size(), n);
  std::mt19937_64 rng = make_block_rng(cfg.seed, block);

  std::int64_t first = block * cfg.block_size;
  std::int64_t last = std::min(first + cfg.block_size, cfg.n_trials);
  for (std::int64_t t = first; t < last; ++t) {
    Vector x = prior.sample(rng);
    Vector noise = noise_factor * sample_standard_complex_normal(model.m(), rng);
    Vector y = model.H * x + noise;
    for (std::size_t k = 0; k < estimators.size(); ++k) {
      Vector xhat = estimators[k].E * y + estimators[k].c;
      Vector err = x - xhat;
      acc.sum_err[k] += err;
      Matrix outer = err * err.adjoint();
      acc.sum_outer[k] += outer;
      acc.sum_sq[k] += outer.cwiseAbs2();
      for (Eigen::Index i = 0; i < n; ++i) {
        acc.pairs[k][static_cast<std::size_t>(i)].add(x(i), xhat(i));
        if (cfg.keep_pairs) {
          acc.raw[k].push_back({static_cast<int>(i), x(i), xhat(i)});
        }
      }
    }
  }
  return acc;
}

TrialResult finalize(BlockAccum&& total, std::int64_t n_trials,
                     std::size_t n_est, Eigen::Index n) {
  TrialResult result;
  const double nd = static_cast<double>(n_trials);
  result.performance.resize(n_est);
  for (std::size_t k = 0; k < n_est; ++k) {
    EmpiricalPerformance& perf = result.performance[k];
    perf.n_trials = n_trials;
    perf.error_mean = total.sum_err[k] / nd;
    perf.error_cov = total.sum_outer[k] / nd;
    perf.bmse = perf.error_cov.diagonal().real();
    perf.bmse_stderr = RealVector(n);
    perf.error_cov_stderr = RealMatrix(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        double second = total.sum_sq[k](i, j) / nd;
        double var = std::max(second - std::norm(perf.error_cov(i, j)), 0.0);
        perf.error_cov_stderr(i, j) = std::sqrt(var / nd);
      }
      perf.bmse_stderr(i) = perf.error_cov_stderr(i, i);
    }
  }
  result.pairs = std::move(total.pairs);
  result.raw_pairs = std::move(total.raw);
  return result;
}

void check_prior_consistency(const LinearModel& model, const PriorSpec& prior) {
  if (prior.n() != model.n()) {
    throw InconsistentPrior("prior dimension does not match model");
  }
  double mean_dev = (prior.mean() - model.mean_x).cwiseAbs().maxCoeff();
  double cov_dev = max_abs(prior.covariance() - model.C_xx);
  if (mean_dev > 1e-9 || cov_dev > 1e-9) {
    throw InconsistentPrior("prior moments disagree with model (mean dev " +
                            std::to_string(mean_dev) + ", cov dev " +
                            std::to_string(cov_dev) + ")");
  }
}

void check_config(const TrialConfig& cfg) {
  if (cfg.n_trials < 1 || cfg.n_workers < 1 || cfg.block_size < 1) {
    throw DimensionMismatch("n_trials, n_workers and block_size must be >= 1");
  }
}

}  // namespace

TrialResult run_trials(const LinearModel& model, const PriorSpec& prior,
                       const std::vector<AffineEstimator>& estimators,
                       const TrialConfig& cfg) {
  check_config(cfg);
  check_prior_consistency(model, prior);
  Matrix noise_factor = psd_factor(model.C_nn);

  const std::int64_t n_blocks =
      (cfg.n_trials + cfg.block_size - 1) / cfg.block_size;
  std::vector<BlockAccum> blocks(static_cast<std::size_t>(n_blocks));

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(cfg.n_workers)
#endif
  for (std::int64_t b = 0; b < n_blocks; ++b) {
    blocks[static_cast<std::size_t>(b)] =
        process_block(model, prior, estimators, noise_factor, cfg, b);
  }

  // merge in block order so the result is independent of scheduling
  BlockAccum total(estimators.size(), model.n());
  for (const auto& block : blocks) total.merge(block);
  return finalize(std::move(total), cfg.n_trials, estimators.size(), model.n());
}

TrialResult run_trials_serial(const LinearModel& model, const PriorSpec& prior,
                              const std::vector<AffineEstimator>& estimators,
                              const TrialConfig& cfg) {
  check_config(cfg);
  check_prior_consistency(model, prior);
  Matrix noise_factor = psd_factor(model.C_nn);

  const std::int64_t n_blocks =
      (cfg.n_trials + cfg.block_size - 1) / cfg.block_size;
  BlockAccum total(estimators.size(), model.n());
  for (std::int64_t b = 0; b < n_blocks; ++b) {
    total.merge(process_block(model, prior, estimators, noise_factor, cfg, b));
  }
  return finalize(std::move(total), cfg.n_trials, estimators.size(), model.n());
}

}  // namespace cwcu
