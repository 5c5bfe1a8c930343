#include "kpwave/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "kpwave/error.hpp"
#include "kpwave/ode.hpp"

namespace kpwave {

namespace {

enum Slot { U, UX, UA, UAX, UE, UEX, SE_, SX_, J_, IE_, IIE_, kSlots };
using State = std::array<double, kSlots>;

}  // namespace

KernelBasis variational_solutions(const WaveProfile& profile, const Tolerances& tol) {
  const WaveParams& p = profile.params();
  const double um = profile.u_minus();
  const double Vp = eval_V(p, um, 1);
  if (!(std::abs(Vp) > tol.simplicity))
    throw Error(ErrorCode::WronskianDegenerate, "V'(u_-) vanishes; u_E initial data undefined");

  KernelBasis b;
  b.params = p;
  b.x = profile.grid();
  b.dum_da = um / Vp;
  b.dum_dE = 1.0 / Vp;

  State s0{};
  s0[U] = um;
  s0[UA] = b.dum_da;
  s0[UE] = b.dum_dE;
  auto rhs = [&p](const State& s, State& ds, double x) {
    const double V1 = eval_V(p, s[U], 1), V2 = eval_V(p, s[U], 2);
    ds[U] = s[UX];
    ds[UX] = -V1;
    ds[UA] = s[UAX];
    ds[UAX] = -V2 * s[UA] + 1.0;
    ds[UE] = s[UEX];
    ds[UEX] = -V2 * s[UE];
    ds[SE_] = x * s[UE];
    ds[SX_] = x * s[UX];
    ds[J_] = s[U];
    ds[IE_] = s[UE];
    ds[IIE_] = s[IE_];
  };
  const auto states = ode::integrate_at(rhs, s0, b.x, {tol.ode, tol.ode});

  const std::size_t n = states.size();
  for (auto* v : {&b.u, &b.ux, &b.uxx, &b.ua, &b.uax, &b.uE, &b.uEx, &b.SE, &b.Sx, &b.J, &b.IE, &b.IIE})
    v->resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const State& s = states[i];
    b.u[i] = s[U];
    b.ux[i] = s[UX];
    b.uxx[i] = -eval_V(p, s[U], 1);
    b.ua[i] = s[UA];
    b.uax[i] = s[UAX];
    b.uE[i] = s[UE];
    b.uEx[i] = s[UEX];
    b.SE[i] = s[SE_];
    b.Sx[i] = s[SX_];
    b.J[i] = s[J_];
    b.IE[i] = s[IE_];
    b.IIE[i] = s[IIE_];
  }
  return b;
}

double KernelBasis::wronskian(int i) const { return ux[i] * uEx[i] - uxx[i] * uE[i]; }

std::array<double, 4> KernelBasis::column(Column which, int i) const {
  const double V2 = eval_V(params, u[i], 2), V3 = eval_V(params, u[i], 3);
  const double uxxx = -V2 * ux[i];
  const double uxxxx = -V3 * ux[i] * ux[i] - V2 * uxx[i];
  switch (which) {
    case Ux: return {ux[i], uxx[i], uxxx, uxxxx};
    case Ua: return {ua[i], uax[i], -V2 * ua[i] + 1.0, -V3 * ux[i] * ua[i] - V2 * uax[i]};
    case UE: return {uE[i], uEx[i], -V2 * uE[i], -V3 * ux[i] * uE[i] - V2 * uEx[i]};
    case Phi: {
      if (!has_phi) throw Error(ErrorCode::InvalidArgument, "phi column requested before phi_solution");
      const double xi = x[i];
      const double uExx = -V2 * uE[i];
      const double uExxx = -V3 * ux[i] * uE[i] - V2 * uEx[i];
      const double phi = SE[i] * ux[i] - Sx[i] * uE[i];
      const double phix = SE[i] * uxx[i] - Sx[i] * uEx[i];
      const double phixx = xi * (uE[i] * uxx[i] - ux[i] * uEx[i]) + SE[i] * uxxx - Sx[i] * uExx;
      const double phixxx = -wronskian(i) + SE[i] * uxxxx - Sx[i] * uExxx;
      return {phi, phix, phixx, phixxx};
    }
  }
  return {};
}

KernelBasis phi_solution(const WaveProfile& profile, KernelBasis basis, const Tolerances& tol) {
  (void)profile;
  const double w0 = basis.wronskian(0);
  if (!(std::abs(w0) > tol.simplicity))
    throw Error(ErrorCode::WronskianDegenerate, "W(u_x, u_E) = " + std::to_string(w0));
  basis.has_phi = true;
  return basis;
}

namespace {

// Sixth-order central difference of samples with spacing h, interior only.
std::vector<double> diff6(const std::vector<double>& f, double h) {
  std::vector<double> d(f.size(), 0.0);
  for (std::size_t i = 3; i + 3 < f.size(); ++i)
    d[i] = (-f[i - 3] + 9.0 * f[i - 2] - 45.0 * f[i - 1] + 45.0 * f[i + 1] - 9.0 * f[i + 2] + f[i + 3]) /
           (60.0 * h);
  return d;
}

double sup_abs(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace

KernelResiduals kernel_residuals(const WaveProfile& profile, const KernelBasis& b) {
  const int n = b.size();
  const double h = b.x[1] - b.x[0];
  std::vector<double> V2(n);
  for (int i = 0; i < n; ++i) V2[i] = eval_V(b.params, b.u[i], 2);

  auto residual = [&](const std::vector<double>& v, const std::vector<double>& vx, auto forcing) {
    const auto vxx = diff6(vx, h);
    double r = 0.0;
    for (int i = 3; i + 3 < n; ++i) r = std::max(r, std::abs(-vxx[i] - V2[i] * v[i] - forcing(i)));
    return r / (1.0 + sup_abs(v));
  };

  KernelResiduals out{};
  out.ux = residual(b.ux, b.uxx, [](int) { return 0.0; });
  out.ua = residual(b.ua, b.uax, [](int) { return -1.0; });
  out.uE = residual(b.uE, b.uEx, [](int) { return 0.0; });
  if (b.has_phi) {
    std::vector<double> phi(n), phix(n);
    for (int i = 0; i < n; ++i) {
      const auto c = b.column(KernelBasis::Phi, i);
      phi[i] = c[0];
      phix[i] = c[1];
    }
    out.phi = residual(phi, phix, [&](int i) { return b.x[i]; });
  }
  double d = 0.0, w = 0.0;
  for (int i = 0; i < n; ++i) {
    d = std::max(d, std::abs(b.ux[i] - profile.ux_samples()[i]));
    w = std::max(w, std::abs(b.wronskian(i) - 1.0));
  }
  out.ux_vs_profile = d;
  out.wronskian = w;
  return out;
}

Eigen::Matrix4d W_at(const KernelBasis& basis, int i) {
  Eigen::Matrix4d W;
  for (int j = 0; j < 4; ++j) {
    const auto c = basis.column(static_cast<KernelBasis::Column>(j), i);
    for (int r = 0; r < 4; ++r) W(r, j) = c[r];
  }
  return W;
}

WMatrix build_W(const KernelBasis& basis) {
  WMatrix w;
  w.W0 = W_at(basis, 0);
  w.WT = W_at(basis, basis.size() - 1);
  w.dW = w.WT - w.W0;
  return w;
}

DeltaWInputs delta_w_inputs(const KernelBasis& basis, double T_a, double T_E) {
  const double um = basis.u[0];
  DeltaWInputs in{};
  in.Vp = eval_V(basis.params, um, 1);
  in.Vpp = eval_V(basis.params, um, 2);
  in.dum_dE = basis.dum_dE;
  in.T = basis.x.back();
  in.T_a = T_a;
  in.T_E = T_E;
  in.xux = basis.Sx.back();
  in.xuE = basis.SE.back();
  return in;
}

Eigen::Matrix4d delta_w_display(const DeltaWInputs& in, bool verbatim) {
  const double m4 = verbatim ? in.xuE : in.xuE + in.T_E * in.xux;
  Eigen::Matrix4d d = Eigen::Matrix4d::Zero();
  d(0, 3) = -in.dum_dE * in.xux;
  d(1, 1) = in.Vp * in.T_a;
  d(1, 2) = in.Vp * in.T_E;
  d(1, 3) = -in.Vp * m4;
  d(2, 3) = -in.T + in.Vpp * in.dum_dE * in.xux;
  d(3, 1) = -in.Vp * in.Vpp * in.T_a;
  d(3, 2) = -in.Vp * in.Vpp * in.T_E;
  d(3, 3) = in.Vpp * in.Vp * m4;
  return d;
}

AppendixBReport verify_appendix_b(const KernelBasis& b) {
  if (!b.has_phi) throw Error(ErrorCode::InvalidArgument, "appendix check needs the phi column");
  AppendixBReport r{};
  const Eigen::Vector4d e4(0, 0, 0, 1);
  for (int i = 0; i < b.size(); ++i) {
    const Eigen::Matrix4d W = W_at(b, i);
    const Eigen::Vector4d y(-b.IIE[i], -b.x[i], b.J[i], -1.0);
    r.inverse_column = std::max(r.inverse_column, (W * y - e4).lpNorm<Eigen::Infinity>());
    const Eigen::Vector4d z = W.fullPivLu().solve(e4);
    r.lu_agreement = std::max(r.lu_agreement, (z - y).lpNorm<Eigen::Infinity>());
    const double ae = b.uax[i] * b.uE[i] - b.ua[i] * b.uEx[i] - b.IE[i];
    r.wronskian_ae = std::max(r.wronskian_ae, std::abs(ae));
    if (i == b.size() - 1) r.A0_at_T = z[0];
  }
  r.IIE_at_T = b.IIE.back();
  return r;
}

TurningPointIdentities turning_point_identities(const WaveParams& params, double h_rel) {
  const TurningPoints base = find_turning_points(params);
  WaveParams pinned = params;
  pinned.well_hint = Interval{base.u_minus, base.u_plus};
  auto um = [&](double da, double dE) {
    return find_turning_points(pinned.with(params.a + da, params.E + dE, params.c)).u_minus;
  };
  auto deriv = [&](bool in_a) {
    const double h = h_rel * (1.0 + std::abs(in_a ? params.a : params.E));
    auto f = [&](double t) { return in_a ? um(t, 0.0) : um(0.0, t); };
    const double D1 = (f(h) - f(-h)) / (2.0 * h);
    const double D2 = (f(0.5 * h) - f(-0.5 * h)) / h;
    return (4.0 * D2 - D1) / 3.0;
  };
  const double Vp = eval_V(params, base.u_minus, 1);
  return {std::abs(Vp * deriv(false) - 1.0), std::abs(Vp * deriv(true) - base.u_minus)};
}

double delta_w_mismatch(const Eigen::Matrix4d& display, const Eigen::Matrix4d& dW) {
  const double floor = 1e-3 * dW.cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      worst = std::max(worst, std::abs(display(i, j) - dW(i, j)) / std::max(std::abs(dW(i, j)), floor));
  return worst;
}

}  // namespace kpwave
