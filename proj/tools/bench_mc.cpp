// Throughput benchmark: OpenMP trial loop vs the serial reference.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "cwcu/montecarlo.hpp"
#include "cwcu/validation.hpp"

using namespace cwcu;

namespace {

double time_run(const LinearModel& model, const PriorSpec& prior,
                const std::vector<AffineEstimator>& ests,
                const TrialConfig& cfg, bool serial, TrialResult& out) {
  auto t0 = std::chrono::steady_clock::now();
  out = serial ? run_trials_serial(model, prior, ests, cfg)
               : run_trials(model, prior, ests, cfg);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  std::int64_t trials = argc > 1 ? std::atoll(argv[1]) : 200000;
  int max_workers = argc > 2 ? std::atoi(argv[2]) : 8;

  LinearModel model = random_linear_model(1, 4, 8, false);
  PriorSpec prior = PriorSpec::gaussian(model.mean_x, model.C_xx);
  std::vector<AffineEstimator> ests = {lmmse_linear(model),
                                       cwcu_linear_gaussian(model).first};
  TrialConfig cfg;
  cfg.n_trials = trials;
  cfg.seed = 42;

  std::printf("n=4 m=8, 2 estimators, %lld trials\n",
              static_cast<long long>(trials));

  TrialResult ref;
  double t_serial = time_run(model, prior, ests, cfg, true, ref);
  std::printf("%-16s %8.3f s  %10.0f trials/s\n", "serial", t_serial,
              trials / t_serial);

  for (int w = 1; w <= max_workers; w *= 2) {
    cfg.n_workers = w;
    TrialResult r;
    double t = time_run(model, prior, ests, cfg, false, r);
    bool identical =
        max_abs(r.performance[0].error_cov - ref.performance[0].error_cov) ==
        0.0;
    std::printf("%-13s %2d %8.3f s  %10.0f trials/s  speedup %5.2fx  %s\n",
                "openmp workers", w, t, trials / t, t_serial / t,
                identical ? "matches serial" : "MISMATCH vs serial");
    if (!identical) return 1;
  }
  return 0;
}
