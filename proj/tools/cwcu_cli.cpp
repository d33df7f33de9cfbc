// Command-line front end: algebraic validation, analytic estimator
// comparison, Monte Carlo conditional-unbiasedness runs, and the 802.11
// channel-estimation experiment.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cwcu/estimators.hpp"
#include "cwcu/json_io.hpp"
#include "cwcu/montecarlo.hpp"
#include "cwcu/validation.hpp"
#include "cwcu/wlan.hpp"

namespace {

using cwcu::Json;

struct CommonOpts {
  std::uint64_t seed = 1;
  std::int64_t trials = 100000;
  int workers = 1;
  std::string model_path;
  std::string prior = "gaussian";
  std::string out;
  std::string format = "csv";
  double sigma_n2 = 0.01;
  double perturb = 0.0;
  Eigen::Index n = 3;
  Eigen::Index m = 6;
};

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw cwcu::EstimationError("IoError", "cannot open " + out_path);
  f << text;
}

cwcu::LinearModel resolve_model(const CommonOpts& opts) {
  if (!opts.model_path.empty()) return cwcu::load_linear_model(opts.model_path);
  bool diagonal = opts.prior.rfind("independent", 0) == 0;
  cwcu::LinearModel model =
      cwcu::random_linear_model(opts.seed, opts.n, opts.m, diagonal);
  if (!diagonal) return model;
  // independent priors are zero-mean for the QPSK/uniform variants
  return cwcu::LinearModel(model.H, cwcu::Vector::Zero(model.n()), model.C_xx,
                           model.C_nn);
}

cwcu::PriorSpec resolve_prior(const std::string& prior,
                              const cwcu::LinearModel& model) {
  if (prior == "gaussian") {
    return cwcu::PriorSpec::gaussian(model.mean_x, model.C_xx);
  }
  cwcu::ComponentDist dist;
  if (prior == "independent:gaussian") {
    dist = cwcu::ComponentDist::ComplexGaussian;
  } else if (prior == "independent:qpsk") {
    dist = cwcu::ComponentDist::Qpsk;
  } else if (prior == "independent:uniform") {
    dist = cwcu::ComponentDist::UniformDisk;
  } else {
    throw cwcu::EstimationError("BadPrior", "unknown prior kind " + prior);
  }
  std::vector<cwcu::ComponentPrior> comps;
  for (Eigen::Index i = 0; i < model.n(); ++i) {
    comps.push_back({dist, model.mean_x(i), model.C_xx(i, i).real()});
  }
  return cwcu::PriorSpec::independent(std::move(comps));
}

int cmd_validate(const CommonOpts& opts) {
  auto checks = cwcu::run_identity_suite(100, opts.perturb);
  Json report;
  report["seeds"] = 100;
  Json list = Json::array();
  bool all_pass = true;
  for (const auto& c : checks) {
    list.push_back({{"name", c.name},
                    {"max_dev", c.max_dev},
                    {"tol", c.tol},
                    {"pass", c.pass}});
    all_pass = all_pass && c.pass;
  }
  report["checks"] = std::move(list);
  report["pass"] = all_pass;
  emit(opts.out, report.dump(2) + "\n");
  return all_pass ? 0 : 1;
}

struct NamedEstimator {
  std::string name;
  cwcu::AffineEstimator est;
};

/// LMMSE, the CWCU variant matching the prior, and B1 when it exists.
std::vector<NamedEstimator> applicable_estimators(
    const cwcu::LinearModel& model, const std::string& prior,
    cwcu::DiagonalGain* gain_out) {
  std::vector<NamedEstimator> list;
  list.push_back({"lmmse", cwcu::lmmse_linear(model)});
  if (prior.rfind("independent", 0) == 0) {
    auto [est, gain] = cwcu::cwcu_linear_independent(model);
    list.push_back({"cwcu", std::move(est)});
    if (gain_out) *gain_out = std::move(gain);
  } else {
    auto [est, gain] = cwcu::cwcu_linear_gaussian(model);
    list.push_back({"cwcu", std::move(est)});
    if (gain_out) *gain_out = std::move(gain);
  }
  if (model.m() >= model.n()) {
    try {
      list.push_back({"b1", cwcu::blue_b1(model)});
    } catch (const cwcu::RankDeficient&) {
      // B1 not applicable on this model
    }
  }
  return list;
}

int cmd_compare(const CommonOpts& opts) {
  cwcu::LinearModel model = resolve_model(opts);
  cwcu::DiagonalGain gain;
  auto estimators = applicable_estimators(model, opts.prior, &gain);

  std::vector<cwcu::RealVector> bmse;
  for (const auto& ne : estimators) {
    bmse.push_back(cwcu::generic_error_covariance(model, ne.est).bmse);
  }

  if (opts.format == "json") {
    Json j;
    j["n"] = model.n();
    j["m"] = model.m();
    Json cols;
    for (std::size_t k = 0; k < estimators.size(); ++k) {
      cols["bmse_" + estimators[k].name] =
          std::vector<double>(bmse[k].begin(), bmse[k].end());
    }
    cols["d_diag"] = std::vector<double>(gain.d.begin(), gain.d.end());
    j["columns"] = std::move(cols);
    emit(opts.out, j.dump(2) + "\n");
    return 0;
  }

  std::ostringstream csv;
  csv.precision(9);
  csv << "component";
  for (const auto& ne : estimators) csv << ",bmse_" << ne.name;
  csv << ",d_diag\n";
  for (Eigen::Index i = 0; i < model.n(); ++i) {
    csv << i;
    for (const auto& b : bmse) csv << "," << b(i);
    csv << "," << gain.d(i) << "\n";
  }
  emit(opts.out, csv.str());
  return 0;
}

int cmd_mc(const CommonOpts& opts, const std::string& pair_dump) {
  cwcu::LinearModel model = resolve_model(opts);
  cwcu::PriorSpec prior = resolve_prior(opts.prior, model);
  cwcu::DiagonalGain gain;
  auto named = applicable_estimators(model, opts.prior, &gain);

  std::vector<cwcu::AffineEstimator> estimators;
  for (const auto& ne : named) estimators.push_back(ne.est);

  cwcu::TrialConfig cfg;
  cfg.n_trials = opts.trials;
  cfg.seed = opts.seed;
  cfg.n_workers = opts.workers;
  cfg.keep_pairs = !pair_dump.empty();
  cwcu::TrialResult result = cwcu::run_trials(model, prior, estimators, cfg);

  bool all_pass = true;
  Json j;
  j["seed"] = opts.seed;
  j["n_trials"] = opts.trials;
  j["prior"] = opts.prior;
  Json per_est = Json::array();
  for (std::size_t k = 0; k < named.size(); ++k) {
    Json je;
    je["estimator"] = named[k].name;
    cwcu::RealVector analytic =
        cwcu::generic_error_covariance(model, named[k].est).bmse;
    Json comps = Json::array();
    for (Eigen::Index i = 0; i < model.n(); ++i) {
      auto report = cwcu::conditional_bias_regression(
          result.pairs[k][static_cast<std::size_t>(i)]);
      double slope_target =
          named[k].name == "lmmse" ? 1.0 / gain.d(i) : 1.0;
      bool slope_ok = std::abs(report.slope - slope_target) <=
                      3.0 * report.slope_stderr;
      cwcu::Complex intercept_target =
          named[k].name == "lmmse"
              ? (1.0 - 1.0 / gain.d(i)) * model.mean_x(i)
              : cwcu::Complex(0.0, 0.0);
      bool intercept_ok = std::abs(report.intercept - intercept_target) <=
                          3.0 * report.intercept_stderr;
      const auto& perf = result.performance[k];
      bool bmse_ok = std::abs(perf.bmse(i) - analytic(i)) <=
                     3.0 * perf.bmse_stderr(i);
      all_pass = all_pass && slope_ok && intercept_ok && bmse_ok;
      Json jc = cwcu::bias_report_to_json(report);
      jc["component"] = i;
      jc["slope_target"] = slope_target;
      jc["slope_ok"] = slope_ok;
      jc["intercept_ok"] = intercept_ok;
      jc["analytic_bmse"] = analytic(i);
      jc["empirical_bmse"] = perf.bmse(i);
      jc["bmse_ok"] = bmse_ok;
      comps.push_back(std::move(jc));
    }
    je["components"] = std::move(comps);
    je["performance"] = cwcu::empirical_performance_to_json(result.performance[k]);
    per_est.push_back(std::move(je));
  }
  j["estimators"] = std::move(per_est);
  j["pass"] = all_pass;
  emit(opts.out, j.dump(2) + "\n");

  if (!pair_dump.empty()) {
    std::ofstream f(pair_dump);
    if (!f) throw cwcu::EstimationError("IoError", "cannot open " + pair_dump);
    f.precision(9);
    f << "estimator,component,re_x,im_x,re_xhat,im_xhat\n";
    for (std::size_t k = 0; k < named.size(); ++k) {
      for (const auto& p : result.raw_pairs[k]) {
        f << named[k].name << "," << p.component << "," << p.x.real() << ","
          << p.x.imag() << "," << p.xhat.real() << "," << p.xhat.imag() << "\n";
      }
    }
  }
  return all_pass ? 0 : 1;
}

int cmd_chanest(const CommonOpts& opts) {
  namespace fs = std::filesystem;
  fs::path dir = opts.out.empty() ? fs::path(".") : fs::path(opts.out);
  fs::create_directories(dir);

  auto setup = cwcu::wlan::ChanestSetup::defaults(opts.sigma_n2);
  auto bundle = cwcu::wlan::assemble_model(setup);
  auto time_curves =
      cwcu::wlan::analytic_bmse_curves(bundle, cwcu::wlan::CurveDomain::Time);
  auto freq_curves = cwcu::wlan::analytic_bmse_curves(
      bundle, cwcu::wlan::CurveDomain::Frequency);
  cwcu::wlan::write_fig2_csv((dir / "fig2.csv").string(), time_curves);
  cwcu::wlan::write_fig3_csv((dir / "fig3.csv").string(), freq_curves);

  Json summary;
  summary["sigma_n2"] = opts.sigma_n2;
  for (const auto& curve : freq_curves) {
    if (curve.label != "blue") continue;
    Eigen::Index argmax = 0;
    double maxval = curve.bmse.maxCoeff(&argmax);
    summary["max_blue_freq_bmse"] = maxval;
    summary["argmax_subcarrier"] = argmax;
  }
  Json means;
  for (const auto& curve : time_curves) {
    means["time_" + curve.label] = curve.bmse.mean();
  }
  for (const auto& curve : freq_curves) {
    double sum = 0.0;
    int count = 0;
    for (Eigen::Index i = 0; i < curve.bmse.size(); ++i) {
      if (!std::isnan(curve.bmse(i))) {
        sum += curve.bmse(i);
        ++count;
      }
    }
    means["freq_" + curve.label] = sum / count;
  }
  summary["mean_bmse"] = std::move(means);

  std::ofstream f(dir / "summary.json");
  f << summary.dump(2) << "\n";
  std::cout << summary.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CWCU LMMSE estimation toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string pair_dump;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opts.seed, "RNG seed");
    cmd->add_option("--trials", opts.trials, "Monte Carlo trial count");
    cmd->add_option("--workers", opts.workers, "worker thread count");
    cmd->add_option("--model", opts.model_path, "model JSON file");
    cmd->add_option("--prior", opts.prior,
                    "gaussian | independent:gaussian | independent:qpsk | "
                    "independent:uniform");
    cmd->add_option("--out", opts.out, "output file or directory");
    cmd->add_option("--format", opts.format, "csv | json");
    cmd->add_option("--sigma-n2", opts.sigma_n2, "time-domain noise variance");
    cmd->add_option("--n", opts.n, "generated model parameter count");
    cmd->add_option("--m", opts.m, "generated model measurement count");
    cmd->add_option("--perturb", opts.perturb, "")->group("");  // test hook
  };

  auto* validate = app.add_subcommand("validate", "run the algebraic identity suite");
  auto* compare = app.add_subcommand("compare", "analytic per-component Bmse comparison");
  auto* mc = app.add_subcommand("mc", "Monte Carlo conditional-unbiasedness run");
  auto* chanest = app.add_subcommand("chanest", "802.11 channel-estimation experiment");
  for (auto* cmd : {validate, compare, mc, chanest}) add_common(cmd);
  mc->add_option("--dump-pairs", pair_dump, "CSV dump of raw (x, xhat) pairs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(opts);
    if (compare->parsed()) return cmd_compare(opts);
    if (mc->parsed()) return cmd_mc(opts, pair_dump);
    if (chanest->parsed()) return cmd_chanest(opts);
  } catch (const cwcu::EstimationError& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
