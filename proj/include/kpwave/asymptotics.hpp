#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "kpwave/evans.hpp"
#include "kpwave/tracking.hpp"
#include "kpwave/wave.hpp"

namespace kpwave {

struct HighFreqProbe {
  double mu;
  int sign;
  double log_abs;
};

struct HighFreqReport {
  double k = 0.0;
  std::vector<HighFreqProbe> probes;
  double onset_mu = 0.0;  // first probe after which the sign no longer changes
  int verdict = 0;        // +1 / -1, 0 when inconclusive
  bool conclusive = false;
  // Advisory: log|D| ~ alpha + log(k^2 T / mu) + beta |mu|^{1/3} T; beta ~ 1.
  double fit_alpha = 0.0;
  double fit_beta = 0.0;
};

// Sign of D(mu, k, 1) along increasing positive mu; conclusive when the last
// three probes agree. k = 0 is rejected.
HighFreqReport high_freq_sign(const WaveProfile& profile, double k, const std::vector<double>& mu_list,
                              const MonodromyOptions& opt = {}, unsigned threads = 0);

struct LowFreqReport {
  std::vector<double> k_samples;
  std::vector<double> d_values;  // D(0, k, 1)
  double fitted_c4 = 0.0;
  double fitted_c6 = 0.0;
  double predicted_c4 = 0.0;     // -(PT - M^2) {T,M}_{a,E} sigma^2
  double relative_error = 0.0;
  double fit_residual = 0.0;     // rms of D/k^4 - (c4 + c6 k^2), relative to |c4|
  double jensen_gap = 0.0;
  double jacobian = 0.0;
};

std::vector<double> default_k_ladder();

// Least squares D = c4 k^4 + c6 k^6. Throws FitIllConditioned.
LowFreqReport low_freq_coefficient(const WaveProfile& profile, const std::vector<double>& k_ladder = default_k_ladder(),
                                   const MonodromyOptions& opt = {}, const QuadratureOptions& quad = {},
                                   unsigned threads = 0);

struct IndexVerdict {
  enum class Conclusion { UnstableDetected, IndexInconclusive, DegenerateJacobian };

  double jacobian = 0.0;
  int sigma = 1;
  double product = 0.0;
  int product_sign = 0;  // 0 when degenerate
  Conclusion conclusion = Conclusion::IndexInconclusive;
};

const char* to_string(IndexVerdict::Conclusion c);

IndexVerdict orientation_index(const WaveParams& params, double h_rel = 1e-4, const QuadratureOptions& quad = {});

// Pieces of the rescaled high-frequency system at one point x.
struct RescaledCoefficients {
  double A1;
  double A2;
  double A1x;  // d A1 / dx in the original variable
};

RescaledCoefficients rescaled_coefficients(const WaveParams& params, double u, double ux);

using Vec4c = Eigen::Vector4cd;

// lambda = (1 + i sqrt 3) / 2 and the diagonalizer Q of the principal part.
cplx omega();
Eigen::Matrix4cd principal_part();
Eigen::Matrix4cd diagonalizer();

struct BlockReductionLevel {
  double mu;
  double eps;
  double upper_left;         // sup |upper-left 3x3 of B~| / eps
  double last_column;        // sup |last column - chi (1/3, 1/3, 1/3, 1)| / (|chi| + eps^2)
  double bottom_row;         // sup |bottom row - displayed| / eps
  double lower_left;         // sup |lower-left of S^{-1} B~ S|, S as displayed
  double lower_left_full;    // same for S^{-1} (Lambda + B~) S
  double lower_left_first;   // S^{-1} (Lambda + B~) S with s_j = b_j / lambda_j
  double entry44;            // sup |(4,4) - displayed| for S^{-1} B~ S
};

struct BlockReductionReport {
  double q_diagonal_error;       // |Q^{-1} H0 Q - diag(-1, lambda, lambda*, 0)|
  double avg_A1x;                // |int_0^T A1x| / max(1, int |A1x|)
  double avg_A1A1x;
  std::vector<BlockReductionLevel> levels;  // mu and 2 mu
  double slope_lower_left;       // d log(lower_left) / d log(eps); displayed claim 3
  double slope_lower_left_full;
  double slope_lower_left_first;
  double slope_entry44;          // displayed claim >= 5/2

  bool structure_ok(double slope_tol = 0.2) const;
};

// Displayed rescaled system with eps = |mu|^{-2/3}, measured on the profile
// grid at mu and 2 mu.
BlockReductionReport verify_block_reduction(const WaveProfile& profile, double mu, double k);

// Exact rescaled system (x~ = mu^{1/3} x) conjugated by Q, split 3 + 1 for
// the tracking solver; period T mu^{1/3}.
BlockSystem reduced_block_system(const WaveProfile& profile, double mu, double k);

}  // namespace kpwave
