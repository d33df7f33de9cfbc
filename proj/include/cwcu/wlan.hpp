#pragma once

#include <string>
#include <vector>

#include "cwcu/estimators.hpp"

namespace cwcu {
namespace wlan {

/// Constants of the IEEE 802.11a/g/n long-training-symbol channel
/// estimation setup.
struct ChanestSetup {
  int dft_length = 64;
  std::vector<int> used_subcarriers;     // default {1..26, 38..63}
  int channel_length = 16;               // l_h
  double sample_period_s = 50e-9;        // T_s
  double delay_spread_s = 100e-9;        // tau_rms
  double sigma_n2 = 0.01;                // time-domain noise variance
  RealVector preamble_signs;             // +-1 at the used subcarriers

  static ChanestSetup defaults(double sigma_n2 = 0.01);
  void validate() const;
};

/// Exponentially decaying power delay profile (per-tap variances).
struct ChannelPrior {
  RealVector tap_variance;  // length l_h, strictly decreasing
};

struct ChanestModelBundle {
  ChanestSetup setup;
  Matrix F;            // N x N DFT matrix, entry exp(-j 2 pi k l / N)
  Matrix B;            // N x 52 carrier selection
  Matrix M1;           // N x l_h, first l_h DFT columns
  Matrix D_p;          // 52 x 52 diagonal of +-1
  ChannelPrior prior;
  LinearModel time_model;  // y = D_p B^T M1 h + n, 52 x 16
};

Matrix build_dft_matrix(int n);
Matrix build_carrier_selection(const ChanestSetup& setup);
ChannelPrior build_pdp(const ChanestSetup& setup);
ChanestModelBundle assemble_model(const ChanestSetup& setup);

/// Averaged used-bin frequency-domain observation from two received
/// time-domain preamble symbols.
Vector average_received_preambles(const Vector& y1, const Vector& y2,
                                  const ChanestModelBundle& bundle);

struct TimeDomainEstimators {
  AffineEstimator blue;    // h_B
  AffineEstimator lmmse;   // h_L
  AffineEstimator cwcu;    // h_CL = D h_L, D from the independent-prior form
  DiagonalGain gain;
};

TimeDomainEstimators time_domain_estimators(const ChanestModelBundle& bundle);

/// Frequency response estimators. trivial acts on the 52 used bins; the
/// other three output all 64 bins.
struct FrequencyDomainEstimators {
  AffineEstimator trivial;   // D_p^-1 ybar, 52-dim output
  AffineEstimator blue;      // M1 h_B
  AffineEstimator lmmse;     // M1 h_L
  AffineEstimator cwcu;      // CWCU on the 64-dim model with C = M1 C_hh M1^H
  DiagonalGain gain;         // 64-dim CWCU gain
  LinearModel freq_model;    // x = M1 h (64-dim), H = D_p B^T
};

FrequencyDomainEstimators frequency_domain_estimators(
    const ChanestModelBundle& bundle);

struct BmseCurve {
  std::string label;
  std::vector<int> index;    // tap index or subcarrier
  RealVector bmse;
};

enum class CurveDomain { Time, Frequency };

/// Analytic Bayesian MSE per tap (time) or per subcarrier (frequency) for
/// every estimator of the domain. The trivial estimator appears only in
/// the frequency list and only at the used bins (NaN elsewhere).
std::vector<BmseCurve> analytic_bmse_curves(const ChanestModelBundle& bundle,
                                            CurveDomain domain);

void write_fig2_csv(const std::string& path,
                    const std::vector<BmseCurve>& time_curves);
void write_fig3_csv(const std::string& path,
                    const std::vector<BmseCurve>& freq_curves);

}  // namespace wlan
}  // namespace cwcu
