#include "kpwave/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "kpwave/conserved.hpp"
#include "kpwave/error.hpp"
#include "kpwave/parallel.hpp"

namespace kpwave {

HighFreqReport high_freq_sign(const WaveProfile& profile, double k, const std::vector<double>& mu_list,
                              const MonodromyOptions& opt, unsigned threads) {
  if (k == 0.0) throw Error(ErrorCode::InvalidArgument, "high-frequency sign needs k != 0");
  if (mu_list.empty()) throw Error(ErrorCode::InvalidArgument, "empty mu list");
  for (std::size_t i = 0; i < mu_list.size(); ++i)
    if (!(mu_list[i] > 0.0) || (i && !(mu_list[i] > mu_list[i - 1])))
      throw Error(ErrorCode::InvalidArgument, "mu list must be positive and increasing");

  HighFreqReport rep;
  rep.k = k;
  rep.probes = parallel_map(mu_list.size(), threads, [&](std::size_t i) {
    const EvansValue D = evans(profile, mu_list[i], k, 1.0, opt);
    return HighFreqProbe{mu_list[i], D.sign(), D.log_abs()};
  });

  const int last = rep.probes.back().sign;
  const std::size_t n = rep.probes.size();
  rep.conclusive = n >= 3 && last != 0 && rep.probes[n - 2].sign == last && rep.probes[n - 3].sign == last;
  rep.verdict = rep.conclusive ? last : 0;
  std::size_t j = n - 1;
  while (j > 0 && rep.probes[j - 1].sign == last) --j;
  rep.onset_mu = rep.probes[j].mu;

  if (n >= 2) {
    const double T = profile.period();
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double mu = rep.probes[i].mu;
      A(i, 0) = 1.0;
      A(i, 1) = std::cbrt(mu) * T;
      y(i) = rep.probes[i].log_abs - std::log(k * k * T / mu);
    }
    const Eigen::Vector2d c = A.colPivHouseholderQr().solve(y);
    rep.fit_alpha = c(0);
    rep.fit_beta = c(1);
  }
  return rep;
}

std::vector<double> default_k_ladder() { return {0.04, 0.057, 0.08, 0.113, 0.16}; }

LowFreqReport low_freq_coefficient(const WaveProfile& profile, const std::vector<double>& k_ladder,
                                   const MonodromyOptions& opt, const QuadratureOptions& quad, unsigned threads) {
  if (k_ladder.size() < 4) throw Error(ErrorCode::FitIllConditioned, "need at least four k samples");
  std::vector<double> k2;
  for (double k : k_ladder) {
    if (k == 0.0) throw Error(ErrorCode::FitIllConditioned, "k = 0 sample in the low-frequency ladder");
    k2.push_back(k * k);
  }
  std::sort(k2.begin(), k2.end());
  if (std::adjacent_find(k2.begin(), k2.end()) != k2.end())
    throw Error(ErrorCode::FitIllConditioned, "repeated |k| in the low-frequency ladder");

  LowFreqReport rep;
  rep.k_samples = k_ladder;
  rep.d_values = parallel_map(k_ladder.size(), threads, [&](std::size_t i) {
    return evans(profile, 0.0, k_ladder[i], 1.0, opt).value().real();
  });

  const std::size_t n = k_ladder.size();
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double kk = k_ladder[i] * k_ladder[i];
    A(i, 0) = 1.0;
    A(i, 1) = kk;
    y(i) = rep.d_values[i] / (kk * kk);
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto sv = svd.singularValues();
  if (!(sv(1) > 1e-12 * sv(0))) throw Error(ErrorCode::FitIllConditioned, "singular k^4, k^6 design");
  const Eigen::Vector2d c = svd.solve(y);
  rep.fitted_c4 = c(0);
  rep.fitted_c6 = c(1);
  rep.fit_residual = std::sqrt((A * c - y).squaredNorm() / n) / std::abs(c(0));

  const WaveParams& p = profile.params();
  const InvariantSet inv = compute_invariants(p, quad);
  rep.jensen_gap = inv.jensen_gap();
  rep.jacobian = jacobian_TM(p, 1e-4, quad);
  const double sigma2 = static_cast<double>(p.sigma * p.sigma);
  rep.predicted_c4 = -rep.jensen_gap * rep.jacobian * sigma2;
  rep.relative_error = std::abs(rep.fitted_c4 - rep.predicted_c4) / std::abs(rep.predicted_c4);
  return rep;
}

const char* to_string(IndexVerdict::Conclusion c) {
  switch (c) {
    case IndexVerdict::Conclusion::UnstableDetected: return "UnstableDetected";
    case IndexVerdict::Conclusion::IndexInconclusive: return "IndexInconclusive";
    case IndexVerdict::Conclusion::DegenerateJacobian: return "DegenerateJacobian";
  }
  return "Unknown";
}

IndexVerdict orientation_index(const WaveParams& params, double h_rel, const QuadratureOptions& quad) {
  const GradientSet g = gradients(params, h_rel, quad);
  IndexVerdict v;
  v.sigma = params.sigma;
  v.jacobian = jacobian_TM(g);
  v.product = v.sigma * v.jacobian;
  const double scale = std::abs(g.dT[0] * g.dM[1]) + std::abs(g.dT[1] * g.dM[0]);
  if (std::abs(v.jacobian) <= 1e-8 * scale) {
    v.product_sign = 0;
    v.conclusion = IndexVerdict::Conclusion::DegenerateJacobian;
  } else {
    v.product_sign = v.product > 0.0 ? 1 : -1;
    v.conclusion = v.product > 0.0 ? IndexVerdict::Conclusion::UnstableDetected
                                   : IndexVerdict::Conclusion::IndexInconclusive;
  }
  return v;
}

RescaledCoefficients rescaled_coefficients(const WaveParams& params, double u, double ux) {
  const auto& nl = params.nonlinearity;
  const double f1 = eval_f(nl, u, 1), f2 = eval_f(nl, u, 2), f3 = eval_f(nl, u, 3);
  const double uxx = -eval_V(params, u, 1);
  return {-2.0 * f2 * ux, -f1 + params.c, -2.0 * (f3 * ux * ux + f2 * uxx)};
}

cplx omega() { return {0.5, 0.5 * std::sqrt(3.0)}; }

Eigen::Matrix4cd principal_part() {
  Eigen::Matrix4cd H = Eigen::Matrix4cd::Zero();
  H(0, 1) = H(1, 2) = H(2, 3) = 1.0;
  H(3, 1) = -1.0;
  return H;
}

Eigen::Matrix4cd diagonalizer() {
  const cplx l = omega(), lc = std::conj(l);
  Eigen::Matrix4cd Q;
  Q << -1.0, -1.0, -1.0, 1.0,  //
      1.0, -l, -lc, 0.0,       //
      -1.0, lc, l, 0.0,        //
      1.0, 1.0, 1.0, 0.0;
  return Q;
}

namespace {

Eigen::Matrix4cd lambda_diag() {
  Eigen::Matrix4cd D = Eigen::Matrix4cd::Zero();
  D(0, 0) = -1.0;
  D(1, 1) = omega();
  D(2, 2) = std::conj(omega());
  return D;
}

double lower_left_norm(const Eigen::Matrix4cd& A) {
  return std::max({std::abs(A(3, 0)), std::abs(A(3, 1)), std::abs(A(3, 2))});
}

BlockReductionLevel measure_level(const WaveProfile& profile, double mu, double k, const Eigen::Matrix4cd& Q,
                                  const Eigen::Matrix4cd& Qinv) {
  const WaveParams& p = profile.params();
  const double eps = std::pow(std::abs(mu), -2.0 / 3.0);
  const cplx l = omega(), lc = std::conj(l);
  const Eigen::Matrix4cd Lam = lambda_diag();
  BlockReductionLevel lv{};
  lv.mu = mu;
  lv.eps = eps;
  for (int i = 0; i < profile.intervals(); ++i) {
    const auto rc = rescaled_coefficients(p, profile.u_samples()[i], profile.ux_samples()[i]);
    const double chi = 0.5 * rc.A1x * eps - p.sigma * k * k * eps * eps;
    Eigen::Matrix4cd B = Eigen::Matrix4cd::Zero();
    B(3, 0) = chi;
    B(3, 1) = rc.A1 * eps;
    B(3, 2) = rc.A2 * eps;
    const Eigen::Matrix4cd Bt = Qinv * B * Q;

    lv.upper_left = std::max(lv.upper_left, Bt.topLeftCorner(3, 3).cwiseAbs().maxCoeff() / eps);
    const Eigen::Vector4cd want_col(chi / 3.0, chi / 3.0, chi / 3.0, chi);
    lv.last_column = std::max(lv.last_column, (Bt.col(3) - want_col).cwiseAbs().maxCoeff() /
                                                  (std::abs(chi) + eps * eps));
    const cplx want_row[3] = {(rc.A1 - rc.A2) * eps - chi, (-l * rc.A1 + lc * rc.A2) * eps - chi,
                              (-lc * rc.A1 + l * rc.A2) * eps - chi};
    for (int j = 0; j < 3; ++j) lv.bottom_row = std::max(lv.bottom_row, std::abs(Bt(3, j) - want_row[j]) / eps);

    Eigen::Matrix4cd S = Eigen::Matrix4cd::Identity();
    S(3, 0) = eps * (-rc.A1 + rc.A2 + 0.5 * rc.A1x);
    S(3, 1) = eps * (-rc.A1 + (lc / l) * rc.A2 + rc.A1x / (2.0 * l));
    S(3, 2) = eps * (-rc.A1 + (l / lc) * rc.A2 + rc.A1x / (2.0 * lc));
    const Eigen::Matrix4cd Sinv = S.inverse();
    const Eigen::Matrix4cd C = Sinv * Bt * S;
    lv.lower_left = std::max(lv.lower_left, lower_left_norm(C));
    lv.lower_left_full = std::max(lv.lower_left_full, lower_left_norm(Sinv * (Lam + Bt) * S));
    const double want44 = 0.5 * rc.A1x * eps + eps * eps * (0.5 * rc.A1 * rc.A1x - p.sigma * k * k);
    lv.entry44 = std::max(lv.entry44, std::abs(C(3, 3) - want44));

    Eigen::Matrix4cd S1 = Eigen::Matrix4cd::Identity();
    for (int j = 0; j < 3; ++j) S1(3, j) = Bt(3, j) / Lam(j, j);
    lv.lower_left_first = std::max(lv.lower_left_first, lower_left_norm(S1.inverse() * (Lam + Bt) * S1));
  }
  return lv;
}

double slope(double y1, double y2, double x1, double x2) { return std::log(y2 / y1) / std::log(x2 / x1); }

}  // namespace

bool BlockReductionReport::structure_ok(double slope_tol) const {
  return q_diagonal_error <= 1e-14 && avg_A1x <= 1e-10 && avg_A1A1x <= 1e-10 &&
         std::abs(slope_lower_left - 3.0) <= slope_tol * 3.0;
}

BlockReductionReport verify_block_reduction(const WaveProfile& profile, double mu, double k) {
  if (!(mu >= 25.0)) throw Error(ErrorCode::InvalidArgument, "block reduction needs mu >= 25");
  const Eigen::Matrix4cd Q = diagonalizer();
  const Eigen::Matrix4cd Qinv = Q.inverse();
  BlockReductionReport rep{};
  rep.q_diagonal_error = (Qinv * principal_part() * Q - lambda_diag()).cwiseAbs().maxCoeff();

  const WaveParams& p = profile.params();
  double s1 = 0.0, s1abs = 0.0, s2 = 0.0, s2abs = 0.0;
  for (int i = 0; i < profile.intervals(); ++i) {
    const auto rc = rescaled_coefficients(p, profile.u_samples()[i], profile.ux_samples()[i]);
    s1 += rc.A1x;
    s1abs += std::abs(rc.A1x);
    s2 += rc.A1 * rc.A1x;
    s2abs += std::abs(rc.A1 * rc.A1x);
  }
  const double h = profile.step();
  rep.avg_A1x = std::abs(s1 * h) / std::max(1.0, s1abs * h);
  rep.avg_A1A1x = std::abs(s2 * h) / std::max(1.0, s2abs * h);

  rep.levels = {measure_level(profile, mu, k, Q, Qinv), measure_level(profile, 2.0 * mu, k, Q, Qinv)};
  const auto& a = rep.levels[0];
  const auto& b = rep.levels[1];
  rep.slope_lower_left = slope(a.lower_left, b.lower_left, a.eps, b.eps);
  rep.slope_lower_left_full = slope(a.lower_left_full, b.lower_left_full, a.eps, b.eps);
  rep.slope_lower_left_first = slope(a.lower_left_first, b.lower_left_first, a.eps, b.eps);
  rep.slope_entry44 = slope(a.entry44, b.entry44, a.eps, b.eps);
  return rep;
}

BlockSystem reduced_block_system(const WaveProfile& profile, double mu, double k) {
  if (!(mu > 0.0)) throw Error(ErrorCode::InvalidArgument, "reduced system needs mu > 0");
  const double s = std::cbrt(1.0 / mu);  // x = s x~
  const double eps = s * s;
  const Eigen::Matrix4cd Q = diagonalizer();
  const Eigen::Matrix4cd Qinv = Q.inverse();
  const Eigen::Matrix4cd H0 = principal_part();
  const WaveParams p = profile.params();
  auto A = [=, &profile](double xt) -> Eigen::Matrix4cd {
    const double x = s * xt;
    const auto rc = rescaled_coefficients(p, profile.u(x), profile.ux(x));
    Eigen::Matrix4cd B = Eigen::Matrix4cd::Zero();
    B(3, 0) = eps * eps * (0.5 * rc.A1x - p.sigma * k * k);
    B(3, 1) = eps * std::sqrt(eps) * rc.A1;
    B(3, 2) = eps * rc.A2;
    return Qinv * (H0 + B) * Q;
  };
  double delta = 0.0;
  for (int i = 0; i < profile.intervals(); ++i) delta = std::max(delta, lower_left_norm(A(profile.grid(i) / s)));
  if (delta == 0.0) delta = 1.0;

  BlockSystem sys;
  sys.period = profile.period() / s;
  sys.n1 = 3;
  sys.n2 = 1;
  sys.M1 = [A](double x) -> Eigen::MatrixXcd { return A(x).topLeftCorner(3, 3); };
  sys.N = [A](double x) -> Eigen::MatrixXcd { return A(x).topRightCorner(3, 1); };
  sys.M2 = [A](double x) -> Eigen::MatrixXcd { return A(x).bottomRightCorner(1, 1); };
  sys.Theta = [A, delta](double x) -> Eigen::MatrixXcd { return A(x).bottomLeftCorner(1, 3) / delta; };
  sys.delta = [delta](double) { return delta; };
  sys.eta = [](double) { return 0.5; };
  return sys;
}

}  // namespace kpwave
