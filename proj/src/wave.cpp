#include "kpwave/wave.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "kpwave/error.hpp"
#include "kpwave/ode.hpp"

namespace kpwave {

Tolerances Tolerances::scaled(double s) const {
  if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance scale must be positive");
  return {ode * s, quad * s, simplicity * s, kernel * s};
}

QuadratureOptions Tolerances::quadrature() const {
  QuadratureOptions q;
  q.rel_tol = quad;
  return q;
}

namespace {

double well_potential_scale(const WaveParams& params, double lo, double hi) {
  double s = 0.0;
  for (int i = 0; i <= 16; ++i) s = std::max(s, std::abs(eval_V(params, lo + (hi - lo) * i / 16.0, 1)));
  return s;
}

}  // namespace

TurningPoints find_turning_points(const WaveParams& params, std::optional<Interval> bracket_hint,
                                  double simplicity_tol) {
  params.validate();
  const Polynomial p = Polynomial({params.E}) - potential(params);
  if (p.degree() < 2) throw Error(ErrorCode::NoPeriodicOrbit, "E - V has fewer than two roots");
  const std::vector<double> roots = p.real_roots();

  std::vector<TurningPoints> wells;
  for (std::size_t i = 0; i + 1 < roots.size(); ++i)
    if (p(0.5 * (roots[i] + roots[i + 1])) > 0.0) wells.push_back({roots[i], roots[i + 1]});
  if (wells.empty()) throw Error(ErrorCode::NoPeriodicOrbit, "no bounded interval with E - V > 0");

  if (!bracket_hint) bracket_hint = params.well_hint;
  TurningPoints tp{};
  if (bracket_hint) {
    std::vector<TurningPoints> hit;
    for (const auto& w : wells)
      if (bracket_hint->lo < w.u_plus && bracket_hint->hi > w.u_minus) hit.push_back(w);
    if (hit.empty()) throw Error(ErrorCode::NoPeriodicOrbit, "no well overlaps the bracket hint");
    if (hit.size() > 1) throw Error(ErrorCode::AmbiguousWell, "bracket hint overlaps several wells");
    tp = hit.front();
  } else {
    if (wells.size() > 1)
      throw Error(ErrorCode::AmbiguousWell,
                  std::to_string(wells.size()) + " potential wells; supply a bracket hint");
    tp = wells.front();
  }

  const double tol = simplicity_tol * (1.0 + well_potential_scale(params, tp.u_minus, tp.u_plus));
  const double dm = std::abs(eval_V(params, tp.u_minus, 1));
  const double dp = std::abs(eval_V(params, tp.u_plus, 1));
  if (dm <= tol || dp <= tol)
    throw Error(ErrorCode::DegenerateTurningPoint,
                "|V'(u-)| = " + std::to_string(dm) + ", |V'(u+)| = " + std::to_string(dp));
  return tp;
}

Polynomial well_cofactor(const WaveParams& params, const TurningPoints& tp) {
  const Polynomial p = Polynomial({params.E}) - potential(params);
  const auto [p1, r1] = p.deflate(tp.u_minus);
  const auto [p2, r2] = p1.deflate(tp.u_plus);
  (void)r1;
  (void)r2;
  return p2 * -1.0;
}

double compute_period(const WaveParams& params, const QuadratureOptions& opt) {
  const TurningPoints tp = find_turning_points(params);
  const Polynomial q = well_cofactor(params, tp);
  const double du = tp.u_plus - tp.u_minus;
  const auto r = integrate_doubling<1>(
      [&](double th) {
        const double s = std::sin(th);
        const double qv = q(tp.u_minus + du * s * s);
        if (!(qv > 0.0)) throw Error(ErrorCode::NoPeriodicOrbit, "well cofactor not positive");
        return std::array<double, 1>{2.0 / std::sqrt(qv)};
      },
      0.0, 0.5 * std::numbers::pi, opt);
  return std::numbers::sqrt2 * r[0];
}

WaveProfile::WaveProfile(WaveParams params, TurningPoints tp, double period, std::vector<double> u,
                         std::vector<double> ux)
    : params_(std::move(params)),
      u_minus_(tp.u_minus),
      u_plus_(tp.u_plus),
      period_(period),
      u_(std::move(u)),
      ux_(std::move(ux)) {
  if (u_.size() < 2 || u_.size() != ux_.size())
    throw Error(ErrorCode::InvalidArgument, "profile samples must be aligned and non-trivial");
  if (!(period_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "period must be positive");
  uxx_.resize(u_.size());
  for (std::size_t i = 0; i < u_.size(); ++i) uxx_[i] = -eval_V(params_, u_[i], 1);
}

std::vector<double> WaveProfile::grid() const {
  std::vector<double> g(u_.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = grid(static_cast<int>(i));
  return g;
}

WaveProfile::Local WaveProfile::locate(double x) const {
  double r = std::fmod(x, period_);
  if (r < 0.0) r += period_;
  const double s = r / step();
  int i = std::min(static_cast<int>(s), intervals() - 1);
  return {i, s - i};
}

namespace {

// Quintic Hermite on [0, 1] from value, first and second derivative (already
// scaled by h and h^2) at both ends. Returns p(t) and p'(t) (per unit t).
std::array<double, 2> hermite5(double y0, double d0, double s0, double y1, double d1, double s1,
                               double t) {
  const double a0 = y0, a1 = d0, a2 = 0.5 * s0;
  const double Y = y1 - (a0 + a1 + a2);
  const double D = d1 - (a1 + 2.0 * a2);
  const double S = s1 - 2.0 * a2;
  const double a3 = 10.0 * Y - 4.0 * D + 0.5 * S;
  const double a4 = -15.0 * Y + 7.0 * D - S;
  const double a5 = 6.0 * Y - 3.0 * D + 0.5 * S;
  const double p = a0 + t * (a1 + t * (a2 + t * (a3 + t * (a4 + t * a5))));
  const double dp = a1 + t * (2.0 * a2 + t * (3.0 * a3 + t * (4.0 * a4 + t * 5.0 * a5)));
  return {p, dp};
}

}  // namespace

double WaveProfile::u(double x) const {
  const auto [i, t] = locate(x);
  const double h = step();
  return hermite5(u_[i], h * ux_[i], h * h * uxx_[i], u_[i + 1], h * ux_[i + 1], h * h * uxx_[i + 1], t)[0];
}

double WaveProfile::ux(double x) const {
  const auto [i, t] = locate(x);
  const double h = step();
  const double u3a = -eval_V(params_, u_[i], 2) * ux_[i];
  const double u3b = -eval_V(params_, u_[i + 1], 2) * ux_[i + 1];
  return hermite5(ux_[i], h * uxx_[i], h * h * u3a, ux_[i + 1], h * uxx_[i + 1], h * h * u3b, t)[0];
}

double WaveProfile::uxx(double x) const { return -eval_V(params_, u(x), 1); }

double WaveProfile::energy_residual() const {
  double r = 0.0;
  for (std::size_t i = 0; i < u_.size(); ++i)
    r = std::max(r, std::abs(0.5 * ux_[i] * ux_[i] - params_.E + eval_V(params_, u_[i], 0)));
  return r;
}

WaveProfile integrate_profile(const WaveParams& params, int samples_per_period, const Tolerances& tol) {
  if (samples_per_period < 64)
    throw Error(ErrorCode::InvalidArgument, "samples_per_period must be at least 64");
  const TurningPoints tp = find_turning_points(params, std::nullopt, tol.simplicity);
  const double T = compute_period(params, tol.quadrature());
  const int n = samples_per_period;
  std::vector<double> xs(n + 1);
  for (int i = 0; i <= n; ++i) xs[i] = T * i / n;
  xs[n] = T;

  using State = std::array<double, 2>;
  auto rhs = [&params](const State& s, State& ds, double) {
    ds[0] = s[1];
    ds[1] = -eval_V(params, s[0], 1);
  };
  const auto states = ode::integrate_at(rhs, State{tp.u_minus, 0.0}, xs, {tol.ode, tol.ode});

  std::vector<double> u(n + 1), ux(n + 1);
  for (int i = 0; i <= n; ++i) {
    u[i] = states[i][0];
    ux[i] = states[i][1];
  }
  const double scale = std::max({1.0, std::abs(tp.u_minus), std::abs(tp.u_plus)});
  const double miss = std::abs(u[n] - tp.u_minus) + std::abs(ux[n]);
  if (miss > 100.0 * tol.ode * scale)
    throw Error(ErrorCode::PeriodicityViolation, "|u(T) - u(0)| + |u_x(T)| = " + std::to_string(miss));
  return WaveProfile(params, tp, T, std::move(u), std::move(ux));
}

WaveProfile cnoidal_wave(double u0, double kappa, EllipticModulus m, int samples_per_period) {
  if (!(m.k() > 0.0))
    throw Error(ErrorCode::ModulusOutOfRange, "cnoidal wave needs 0 < k < 1");
  if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa must be positive");
  if (samples_per_period < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  const double k2 = m.k() * m.k();
  const double amp = 12.0 * k2 * kappa * kappa;
  const double K = complete_K(m);
  const double T = 2.0 * K / kappa;

  WaveParams params;
  params.nonlinearity = NonlinearitySpec::kdv();
  params.c = 8.0 * k2 * kappa * kappa - 4.0 * kappa * kappa + u0;
  // E + a U = F(U) - c U^2 / 2 at both turning points.
  const double lo = u0, hi = u0 + amp;
  auto g = [&](double U) { return U * U * U / 6.0 - 0.5 * params.c * U * U; };
  params.a = (g(hi) - g(lo)) / (hi - lo);
  params.E = g(lo) - params.a * lo;
  params.validate();

  const int n = samples_per_period;
  std::vector<double> u(n + 1), ux(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double x = T * i / n;
    const auto j = jacobi_elliptic(kappa * x + K, m);
    u[i] = u0 + amp * j.cn * j.cn;
    ux[i] = -2.0 * amp * kappa * j.cn * j.sn * j.dn;
  }
  return WaveProfile(params, {lo, hi}, T, std::move(u), std::move(ux));
}

double profile_distance(const WaveProfile& p, const WaveProfile& q) {
  double d = 0.0;
  for (int i = 0; i <= p.intervals(); ++i) {
    const double x = p.grid(i);
    d = std::max(d, std::abs(p.u_samples()[i] - q.u(x)));
    d = std::max(d, std::abs(p.ux_samples()[i] - q.ux(x)));
  }
  return d;
}

}  // namespace kpwave
