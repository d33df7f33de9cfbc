#include "cwcu/wlan.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

namespace cwcu {
namespace wlan {

ChanestSetup ChanestSetup::defaults(double sigma_n2) {
  ChanestSetup s;
  for (int k = 1; k <= 26; ++k) s.used_subcarriers.push_back(k);
  for (int k = 38; k <= 63; ++k) s.used_subcarriers.push_back(k);
  s.sigma_n2 = sigma_n2;
  s.preamble_signs = RealVector::Ones(static_cast<Eigen::Index>(s.used_subcarriers.size()));
  s.validate();
  return s;
}

void ChanestSetup::validate() const {
  if (dft_length < 1 || channel_length < 1 || channel_length > dft_length) {
    throw DimensionMismatch("need 1 <= l_h <= N");
  }
  if (!(sample_period_s > 0.0) || !(delay_spread_s > 0.0) || !(sigma_n2 > 0.0)) {
    throw DimensionMismatch("T_s, tau_rms and sigma_n2 must be positive");
  }
  if (used_subcarriers.empty()) throw DimensionMismatch("no used subcarriers");
  int prev = -1;
  for (int k : used_subcarriers) {
    if (k <= prev || k >= dft_length) {
      throw DimensionMismatch("used subcarriers must be strictly ascending and < N");
    }
    prev = k;
  }
  if (preamble_signs.size() != static_cast<Eigen::Index>(used_subcarriers.size())) {
    throw DimensionMismatch("preamble_signs length must match used subcarrier count");
  }
  for (Eigen::Index i = 0; i < preamble_signs.size(); ++i) {
    if (std::abs(preamble_signs(i)) != 1.0) {
      throw DimensionMismatch("preamble signs must be +-1");
    }
  }
}

Matrix build_dft_matrix(int n) {
  if (n < 1) throw DimensionMismatch("DFT length must be >= 1");
  Matrix f(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      double phase = -2.0 * M_PI * static_cast<double>(k) *
                     static_cast<double>(l) / static_cast<double>(n);
      f(k, l) = Complex(std::cos(phase), std::sin(phase));
    }
  }
  return f;
}

Matrix build_carrier_selection(const ChanestSetup& setup) {
  setup.validate();
  const auto used = static_cast<Eigen::Index>(setup.used_subcarriers.size());
  Matrix b = Matrix::Zero(setup.dft_length, used);
  for (Eigen::Index k = 0; k < used; ++k) {
    b(setup.used_subcarriers[static_cast<std::size_t>(k)], k) = 1.0;
  }
  return b;
}

ChannelPrior build_pdp(const ChanestSetup& setup) {
  setup.validate();
  const double ratio = setup.sample_period_s / setup.delay_spread_s;
  RealVector var(setup.channel_length);
  for (int i = 0; i < setup.channel_length; ++i) {
    var(i) = (1.0 - std::exp(-ratio)) * std::exp(-static_cast<double>(i) * ratio);
  }
  return {var};
}

ChanestModelBundle assemble_model(const ChanestSetup& setup) {
  setup.validate();
  Matrix f = build_dft_matrix(setup.dft_length);
  Matrix b = build_carrier_selection(setup);
  Matrix m1 = f.leftCols(setup.channel_length);
  Matrix d_p = setup.preamble_signs.cast<Complex>().asDiagonal();
  ChannelPrior prior = build_pdp(setup);

  const auto used = b.cols();
  Matrix h = d_p * b.transpose() * m1;  // 52 x l_h
  double noise_var = setup.dft_length * setup.sigma_n2 / 2.0;
  LinearModel time_model(h, Vector::Zero(setup.channel_length),
                         prior.tap_variance.cast<Complex>().asDiagonal(),
                         noise_var * Matrix::Identity(used, used));
  return {setup, std::move(f), std::move(b), std::move(m1), std::move(d_p),
          std::move(prior), std::move(time_model)};
}

Vector average_received_preambles(const Vector& y1, const Vector& y2,
                                  const ChanestModelBundle& bundle) {
  if (y1.size() != bundle.setup.dft_length ||
      y2.size() != bundle.setup.dft_length) {
    throw DimensionMismatch("preamble symbols must have length N");
  }
  return 0.5 * (bundle.B.transpose() * (bundle.F * (y1 + y2)));
}

TimeDomainEstimators time_domain_estimators(const ChanestModelBundle& bundle) {
  const auto l_h = bundle.setup.channel_length;
  const double noise_var = bundle.setup.dft_length * bundle.setup.sigma_n2 / 2.0;

  // specialized forms: the Gram M1^H B B^T M1 absorbs D_p^H D_p = I and
  // the white noise covariance
  Matrix bm1 = bundle.B.transpose() * bundle.M1;              // 52 x l_h
  Matrix gram = symmetrize_hermitian(bm1.adjoint() * bm1, 1e-9, "Gram");
  Matrix right = bm1.adjoint() * bundle.D_p.adjoint();        // M1^H B D_p^-1

  HpdSolver blue_solver(gram, "Gram");
  Matrix e_blue = blue_solver.solve(right);

  Matrix prior_inv =
      bundle.prior.tap_variance.cwiseInverse().cast<Complex>().asDiagonal();
  HpdSolver lmmse_solver(Matrix(gram + noise_var * prior_inv), "regularized Gram");
  Matrix e_lmmse = lmmse_solver.solve(right);

  DiagonalGain gain = cwcu_linear_independent(bundle.time_model).second;
  Matrix e_cwcu = gain.d.cast<Complex>().asDiagonal() * e_lmmse;

  Vector zero = Vector::Zero(l_h);
  TimeDomainEstimators out;
  out.blue = {std::move(e_blue), zero, EstimatorKind::B1};
  out.lmmse = {std::move(e_lmmse), zero, EstimatorKind::Lmmse};
  out.cwcu = {std::move(e_cwcu), zero, EstimatorKind::CwcuIndependent};
  out.gain = std::move(gain);
  return out;
}

FrequencyDomainEstimators frequency_domain_estimators(
    const ChanestModelBundle& bundle) {
  const auto n = bundle.setup.dft_length;
  const auto used = bundle.B.cols();
  const double noise_var = n * bundle.setup.sigma_n2 / 2.0;

  // x = M1 h: rank-l_h prior covariance in dimension N, constant diagonal
  Matrix c_freq = bundle.M1 *
                  bundle.prior.tap_variance.cast<Complex>().asDiagonal() *
                  bundle.M1.adjoint();
  c_freq = 0.5 * (c_freq + c_freq.adjoint());
  double total_power = bundle.prior.tap_variance.sum();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(c_freq(i, i).real() - total_power) > 1e-9) {
      throw FactorizationFailure(
          "frequency-domain prior diagonal is not the total tap power");
    }
  }

  LinearModel freq_model(bundle.D_p * bundle.B.transpose(), Vector::Zero(n),
                         c_freq, noise_var * Matrix::Identity(used, used));

  TimeDomainEstimators td = time_domain_estimators(bundle);

  FrequencyDomainEstimators out{
      {Matrix(bundle.D_p.adjoint()), Vector::Zero(used), EstimatorKind::Trivial},
      {bundle.M1 * td.blue.E, Vector::Zero(n), EstimatorKind::B2},
      {bundle.M1 * td.lmmse.E, Vector::Zero(n), EstimatorKind::Lmmse},
      {},
      {},
      std::move(freq_model)};
  auto [cwcu, gain] = cwcu_linear_gaussian(out.freq_model);
  out.cwcu = std::move(cwcu);
  out.gain = std::move(gain);
  return out;
}

std::vector<BmseCurve> analytic_bmse_curves(const ChanestModelBundle& bundle,
                                            CurveDomain domain) {
  std::vector<BmseCurve> curves;
  if (domain == CurveDomain::Time) {
    TimeDomainEstimators td = time_domain_estimators(bundle);
    std::vector<int> taps(static_cast<std::size_t>(bundle.setup.channel_length));
    std::iota(taps.begin(), taps.end(), 0);
    for (const auto& [label, est] :
         {std::pair<std::string, const AffineEstimator*>{"blue", &td.blue},
          {"lmmse", &td.lmmse},
          {"cwcu", &td.cwcu}}) {
      curves.push_back(
          {label, taps,
           generic_error_covariance(bundle.time_model, *est).bmse});
    }
    return curves;
  }

  FrequencyDomainEstimators fd = frequency_domain_estimators(bundle);
  std::vector<int> bins(static_cast<std::size_t>(bundle.setup.dft_length));
  std::iota(bins.begin(), bins.end(), 0);
  for (const auto& [label, est] :
       {std::pair<std::string, const AffineEstimator*>{"blue", &fd.blue},
        {"lmmse", &fd.lmmse},
        {"cwcu", &fd.cwcu}}) {
    curves.push_back(
        {label, bins, generic_error_covariance(fd.freq_model, *est).bmse});
  }

  // the trivial estimator lives on the 52 used bins only
  Matrix c_used = bundle.B.adjoint() * fd.freq_model.C_xx * bundle.B;
  LinearModel used_model(Matrix(bundle.D_p), Vector::Zero(bundle.B.cols()),
                         c_used, fd.freq_model.C_nn);
  RealVector used_bmse = generic_error_covariance(used_model, fd.trivial).bmse;
  RealVector trivial(bundle.setup.dft_length);
  trivial.setConstant(std::nan(""));
  for (std::size_t k = 0; k < bundle.setup.used_subcarriers.size(); ++k) {
    trivial(bundle.setup.used_subcarriers[k]) =
        used_bmse(static_cast<Eigen::Index>(k));
  }
  curves.push_back({"trivial", bins, std::move(trivial)});
  return curves;
}

namespace {

void write_csv(const std::string& path, const std::string& header,
               const std::vector<BmseCurve>& curves) {
  std::ofstream out(path);
  if (!out) throw EstimationError("IoError", "cannot open " + path);
  out.precision(9);
  out << header << "\n";
  const auto& index = curves.front().index;
  for (std::size_t row = 0; row < index.size(); ++row) {
    out << index[row];
    for (const auto& curve : curves) {
      double v = curve.bmse(static_cast<Eigen::Index>(row));
      out << ",";
      if (!std::isnan(v)) out << v;
    }
    out << "\n";
  }
}

const BmseCurve& find_curve(const std::vector<BmseCurve>& curves,
                            const std::string& label) {
  for (const auto& c : curves) {
    if (c.label == label) return c;
  }
  throw EstimationError("MissingCurve", "no curve labeled " + label);
}

}  // namespace

void write_fig2_csv(const std::string& path,
                    const std::vector<BmseCurve>& time_curves) {
  write_csv(path, "tap_index,bmse_blue,bmse_lmmse,bmse_cwcu",
            {find_curve(time_curves, "blue"), find_curve(time_curves, "lmmse"),
             find_curve(time_curves, "cwcu")});
}

void write_fig3_csv(const std::string& path,
                    const std::vector<BmseCurve>& freq_curves) {
  write_csv(path, "subcarrier,bmse_blue,bmse_lmmse,bmse_cwcu,bmse_trivial",
            {find_curve(freq_curves, "blue"), find_curve(freq_curves, "lmmse"),
             find_curve(freq_curves, "cwcu"),
             find_curve(freq_curves, "trivial")});
}

}  // namespace wlan
}  // namespace cwcu
