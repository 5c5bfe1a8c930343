#include "kpwave/evans.hpp"

#include <algorithm>
#include <cmath>

#include "kpwave/error.hpp"
#include "kpwave/ode.hpp"
#include "kpwave/parallel.hpp"

namespace kpwave {

Eigen::Matrix4cd coefficient_matrix(const WaveParams& params, double u, double ux, cplx mu, double k) {
  const auto& nl = params.nonlinearity;
  const double f1 = eval_f(nl, u, 1), f2 = eval_f(nl, u, 2), f3 = eval_f(nl, u, 3);
  const double uxx = -eval_V(params, u, 1);
  Eigen::Matrix4cd H = Eigen::Matrix4cd::Zero();
  H(0, 1) = H(1, 2) = H(2, 3) = 1.0;
  H(3, 0) = -params.sigma * k * k - f3 * ux * ux - f2 * uxx;
  H(3, 1) = -2.0 * f2 * ux - mu;
  H(3, 2) = -f1 + params.c;
  return H;
}

Eigen::Matrix4cd coefficient_matrix(const WaveProfile& profile, cplx mu, double k, double x) {
  return coefficient_matrix(profile.params(), profile.u(x), profile.ux(x), mu, k);
}

int default_segments(double period, cplx mu) {
  return std::max(1, static_cast<int>(std::ceil(std::cbrt(std::abs(mu)) * period / 5.0)));
}

namespace {

using State = std::array<cplx, 18>;

Eigen::Matrix4cd segment(const WaveProfile& profile, cplx mu, double k, int ia, int ib, double tol) {
  const WaveParams& p = profile.params();
  const auto& nl = p.nonlinearity;
  const double sk2 = p.sigma * k * k;
  State s{};
  for (int j = 0; j < 4; ++j) s[5 * j] = 1.0;
  s[16] = profile.u_samples()[ia];
  s[17] = profile.ux_samples()[ia];
  auto rhs = [&](const State& y, State& dy, double) {
    const double u = y[16].real(), ux = y[17].real();
    const double f1 = eval_f(nl, u, 1), f2 = eval_f(nl, u, 2), f3 = eval_f(nl, u, 3);
    const double uxx = -eval_V(p, u, 1);
    const double h0 = -sk2 - f3 * ux * ux - f2 * uxx;
    const cplx h1 = -2.0 * f2 * ux - mu;
    const double h2 = -f1 + p.c;
    for (int c = 0; c < 4; ++c) {
      const cplx* col = &y[4 * c];
      cplx* dcol = &dy[4 * c];
      dcol[0] = col[1];
      dcol[1] = col[2];
      dcol[2] = col[3];
      dcol[3] = h0 * col[0] + h1 * col[1] + h2 * col[2];
    }
    dy[16] = ux;
    dy[17] = uxx;
  };
  s = ode::integrate(rhs, s, profile.grid(ia), profile.grid(ib), {tol, tol});
  Eigen::Matrix4cd F;
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 4; ++r) F(r, c) = s[4 * c + r];
  return F;
}

template <class M>
double normalize(M& m) {
  const double n = m.cwiseAbs().maxCoeff();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::ScaleOverflow, "degenerate running product");
  m /= n;
  return std::log(n);
}

}  // namespace

Matrix6cd second_compound(const Eigen::Matrix4cd& A) {
  static constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  Matrix6cd C;
  for (int I = 0; I < 6; ++I)
    for (int J = 0; J < 6; ++J) {
      const int r0 = pairs[I][0], r1 = pairs[I][1], c0 = pairs[J][0], c1 = pairs[J][1];
      C(I, J) = A(r0, c0) * A(r1, c1) - A(r0, c1) * A(r1, c0);
    }
  return C;
}

Monodromy propagator(const WaveProfile& profile, cplx mu, double k, int i0, int i1,
                     const MonodromyOptions& opt) {
  if (!(0 <= i0 && i0 < i1 && i1 <= profile.intervals()))
    throw Error(ErrorCode::InvalidArgument, "propagator needs 0 <= i0 < i1 <= N");
  if (!std::isfinite(mu.real()) || !std::isfinite(mu.imag()) || !std::isfinite(k))
    throw Error(ErrorCode::InvalidArgument, "non-finite spectral point");
  const double length = profile.grid(i1) - profile.grid(i0);
  int nseg = opt.segments > 0 ? opt.segments : default_segments(length, mu);
  nseg = std::min(nseg, i1 - i0);
  const double tol = opt.ode_tol / (1.0 + std::abs(mu));

  Monodromy m;
  m.mu = mu;
  m.k = k;
  m.matrix.setIdentity();
  m.compound.setIdentity();
  m.inverse.setIdentity();
  m.det = 1.0;
  int ia = i0;
  for (int j = 1; j <= nseg; ++j) {
    const int ib = i0 + static_cast<int>(std::llround(static_cast<double>(j) * (i1 - i0) / nseg));
    const Eigen::Matrix4cd F = segment(profile, mu, k, ia, ib, tol);
    m.factors.push_back(F);
    const Eigen::FullPivLU<Eigen::Matrix4cd> lu(F);
    m.det *= lu.determinant();
    m.matrix = F * m.matrix;
    m.log_scale += normalize(m.matrix);
    m.compound = second_compound(F) * m.compound;
    m.log_scale2 += normalize(m.compound);
    m.inverse = m.inverse * lu.inverse();
    m.log_scale_inv += normalize(m.inverse);
    ia = ib;
  }
  return m;
}

Monodromy monodromy(const WaveProfile& profile, cplx mu, double k, const MonodromyOptions& opt) {
  return propagator(profile, mu, k, 0, profile.intervals(), opt);
}

Eigen::Matrix4cd Monodromy::reconstruct() const {
  if (log_scale > 700.0) throw Error(ErrorCode::ScaleOverflow, "log_scale = " + std::to_string(log_scale));
  return matrix * std::exp(log_scale);
}

cplx Monodromy::det_direct() const { return reconstruct().fullPivLu().determinant(); }

cplx EvansValue::value() const { return mantissa * std::exp(log_scale); }

double EvansValue::log_abs() const { return std::log(std::abs(mantissa)) + log_scale; }

int EvansValue::sign() const {
  const double r = mantissa.real();
  if (std::abs(r) <= 1e-300) return 0;
  return r > 0.0 ? 1 : -1;
}

EvansValue evans_compound(const Monodromy& m, cplx lambda) {
  const cplx l2 = lambda * lambda;
  struct Term {
    cplx mant;
    double scale;
  };
  const Term terms[5] = {
      {l2 * l2, 0.0},
      {-lambda * l2 * m.matrix.trace(), m.log_scale},
      {l2 * m.compound.trace(), m.log_scale2},
      {-lambda * m.det * m.inverse.trace(), m.log_scale_inv},
      {m.det, 0.0},
  };
  double smax = 0.0;
  for (const auto& t : terms) smax = std::max(smax, t.scale);
  cplx acc = 0.0;
  for (const auto& t : terms) acc += t.mant * std::exp(t.scale - smax);
  return {acc, smax, EvansValue::Route::Compound};
}

EvansValue evans(const Monodromy& m, cplx lambda, double lu_log_limit) {
  if (m.log_scale > lu_log_limit) return evans_compound(m, lambda);
  const Eigen::Matrix4cd A = m.reconstruct() - lambda * Eigen::Matrix4cd::Identity();
  return {A.fullPivLu().determinant(), 0.0, EvansValue::Route::LU};
}

EvansValue evans(const WaveProfile& profile, cplx mu, double k, cplx lambda, const MonodromyOptions& opt) {
  return evans(monodromy(profile, mu, k, opt), lambda);
}

CharPoly char_poly(const Eigen::Matrix4cd& M) {
  const Eigen::Matrix4cd M2 = M * M, M3 = M2 * M, M4 = M3 * M;
  const cplx p1 = M.trace(), p2 = M2.trace(), p3 = M3.trace(), p4 = M4.trace();
  const cplx e1 = p1;
  const cplx e2 = 0.5 * (e1 * p1 - p2);
  const cplx e3 = (e2 * p1 - e1 * p2 + p3) / 3.0;
  const cplx e4 = (e3 * p1 - e2 * p2 + e1 * p3 - p4) / 4.0;
  return {-e1, e2, -e3, e4};
}

bool ScanReport::unstable() const {
  return std::any_of(roots.begin(), roots.end(), [](const RootBracket& r) { return r.root > 0.0; });
}

ScanReport evans_scan(const WaveProfile& profile, const std::vector<double>& mu_grid, double k,
                      cplx lambda, const ScanOptions& opt) {
  if (!std::is_sorted(mu_grid.begin(), mu_grid.end()))
    throw Error(ErrorCode::InvalidArgument, "mu grid must be sorted");
  ScanReport rep;
  rep.k = k;
  rep.lambda = lambda;
  const bool real_data = lambda.imag() == 0.0;

  auto sample = [&](double mu) {
    const EvansValue D = evans(profile, mu, k, lambda, opt.monodromy);
    if (real_data && std::abs(D.mantissa.imag()) > opt.imag_tol * std::abs(D.mantissa))
      throw Error(ErrorCode::NonRealEvans, "Im D / |D| = " +
                                               std::to_string(std::abs(D.mantissa.imag()) / std::abs(D.mantissa)) +
                                               " at mu = " + std::to_string(mu));
    return EvansSample{mu, D, D.sign()};
  };
  rep.samples = parallel_map(mu_grid.size(), opt.threads, [&](std::size_t i) { return sample(mu_grid[i]); });

  std::vector<std::pair<std::size_t, std::size_t>> brackets;
  for (std::size_t i = 0; i + 1 < rep.samples.size(); ++i) {
    const int s0 = rep.samples[i].sign, s1 = rep.samples[i + 1].sign;
    if (s0 != 0 && s1 != 0 && s0 != s1) brackets.emplace_back(i, i + 1);
  }
  for (const auto& s : rep.samples)
    if (s.sign == 0) rep.roots.push_back({s.mu, s.mu, s.mu, 0.0});

  auto refined = parallel_map(brackets.size(), opt.threads, [&](std::size_t b) {
    double lo = rep.samples[brackets[b].first].mu, hi = rep.samples[brackets[b].second].mu;
    const int slo = rep.samples[brackets[b].first].sign;
    while (hi - lo > opt.root_width) {
      const double mid = 0.5 * (lo + hi);
      const int s = sample(mid).sign;
      if (s == 0) {
        lo = hi = mid;
        break;
      }
      (s == slo ? lo : hi) = mid;
    }
    return RootBracket{lo, hi, 0.5 * (lo + hi), hi - lo};
  });
  rep.roots.insert(rep.roots.end(), refined.begin(), refined.end());
  std::sort(rep.roots.begin(), rep.roots.end(), [](const auto& a, const auto& b) { return a.root < b.root; });
  return rep;
}

}  // namespace kpwave
