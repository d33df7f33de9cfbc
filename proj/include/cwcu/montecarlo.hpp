#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cwcu/estimators.hpp"
#include "cwcu/models.hpp"

namespace cwcu {

enum class ComponentDist { ComplexGaussian, Qpsk, UniformDisk };

struct ComponentPrior {
  ComponentDist dist = ComponentDist::ComplexGaussian;
  Complex mean{0.0, 0.0};
  double var = 1.0;
};

/// Sampling distribution of the parameter vector. Either a full complex
/// Gaussian with arbitrary PSD covariance, or mutually independent
/// per-component distributions.
class PriorSpec {
public:
  static PriorSpec gaussian(Vector mean, Matrix c_xx);
  static PriorSpec independent(std::vector<ComponentPrior> components);

  bool is_gaussian() const { return is_gaussian_; }
  Eigen::Index n() const { return mean_.size(); }
  const Vector& mean() const { return mean_; }
  const Matrix& covariance() const { return cov_; }
  const std::vector<ComponentPrior>& components() const { return components_; }

  Vector sample(std::mt19937_64& rng) const;

private:
  PriorSpec() = default;
  bool is_gaussian_ = true;
  Vector mean_;
  Matrix cov_;
  Matrix factor_;  // cov = factor factor^H, used for Gaussian sampling
  std::vector<ComponentPrior> components_;
};

Vector sample_noise(const Matrix& c_nn, std::mt19937_64& rng);

/// Circularly-symmetric standard complex normal vector (unit variance per
/// component).
Vector sample_standard_complex_normal(Eigen::Index n, std::mt19937_64& rng);

struct TrialConfig {
  std::int64_t n_trials = 100000;
  std::uint64_t seed = 1;
  int n_workers = 1;
  bool keep_pairs = false;
  // Trials are processed in fixed-size blocks with per-block RNG streams;
  // results are merged in block order, so statistics do not depend on
  // n_workers.
  std::int64_t block_size = 2048;
};

/// Sufficient statistics of the (x_i, xhat_i) scatter for one estimator
/// component, enough for the affine conditional-bias regression.
struct PairAccumulator {
  std::int64_t count = 0;
  Complex sum_x{};
  Complex sum_xhat{};
  double sum_abs2_x = 0.0;
  double sum_abs2_xhat = 0.0;
  Complex sum_xconj_xhat{};

  void add(Complex x, Complex xhat);
  void merge(const PairAccumulator& other);
};

struct ConditionalBiasReport {
  Complex slope{};
  Complex intercept{};
  double residual_variance = 0.0;
  double slope_stderr = 0.0;
  double intercept_stderr = 0.0;
  std::int64_t n_trials = 0;
};

ConditionalBiasReport conditional_bias_regression(const PairAccumulator& acc);

struct EmpiricalPerformance {
  RealVector bmse;
  RealVector bmse_stderr;
  Matrix error_cov;          // raw second moment (1/N) sum e e^H
  RealMatrix error_cov_stderr;
  Vector error_mean;
  std::int64_t n_trials = 0;
};

struct RawPair {
  int component;
  Complex x;
  Complex xhat;
};

struct TrialResult {
  // indexed [estimator]
  std::vector<EmpiricalPerformance> performance;
  // indexed [estimator][component]
  std::vector<std::vector<PairAccumulator>> pairs;
  // indexed [estimator], populated only when cfg.keep_pairs
  std::vector<std::vector<RawPair>> raw_pairs;
};

/// OpenMP-parallel trial loop. Deterministic given (seed, n_trials):
/// identical results for any n_workers.
TrialResult run_trials(const LinearModel& model, const PriorSpec& prior,
                       const std::vector<AffineEstimator>& estimators,
                       const TrialConfig& cfg);

/// Serial reference of run_trials, kept for testing and benchmarking the
/// parallel path against.
TrialResult run_trials_serial(const LinearModel& model, const PriorSpec& prior,
                              const std::vector<AffineEstimator>& estimators,
                              const TrialConfig& cfg);

}  // namespace cwcu
