#include "kpwave/conserved.hpp"

#include <cmath>
#include <numbers>

#include "kpwave/error.hpp"
#include "kpwave/wave.hpp"

namespace kpwave {

InvariantSet compute_invariants(const WaveParams& params, const QuadratureOptions& opt) {
  const TurningPoints tp = find_turning_points(params);
  const Polynomial q = well_cofactor(params, tp);
  const Polynomial& F = params.nonlinearity.F();
  const double du = tp.u_plus - tp.u_minus;
  // dx = du / u_x, u_x^2 = 2 (E - V) = 2 du^2 sin^2 cos^2 q, two passes per period.
  const auto r = integrate_doubling<4>(
      [&](double th) {
        const double s = std::sin(th), c = std::cos(th);
        const double u = tp.u_minus + du * s * s;
        const double qv = q(u);
        if (!(qv > 0.0)) throw Error(ErrorCode::NoPeriodicOrbit, "well cofactor not positive");
        const double w = 2.0 / std::sqrt(qv);
        const double kin = du * du * s * s * c * c * qv;  // E - V = u_x^2 / 2
        return std::array<double, 4>{w, w * u, w * u * u, w * (kin - F(u))};
      },
      0.0, 0.5 * std::numbers::pi, opt);
  const double k = std::numbers::sqrt2;
  return {k * r[0], k * r[1], k * r[2], k * r[3]};
}

namespace {

std::array<double, 4> as_array(const InvariantSet& s) { return {s.T, s.M, s.P, s.H}; }

}  // namespace

GradientSet gradients(const WaveParams& params, double h_rel, const QuadratureOptions& opt) {
  if (!(h_rel > 0.0)) throw Error(ErrorCode::InvalidArgument, "h_rel must be positive");
  const TurningPoints base = find_turning_points(params);
  WaveParams pinned = params;
  pinned.well_hint = Interval{base.u_minus, base.u_plus};

  auto eval = [&](int which, double delta) {
    WaveParams p = pinned;
    (which == 0 ? p.a : which == 1 ? p.E : p.c) += delta;
    try {
      return as_array(compute_invariants(p, opt));
    } catch (const Error& e) {
      throw Error(ErrorCode::StencilLeftRegion, std::string("stencil point lost the orbit: ") + e.what());
    }
  };

  std::array<Grad3, 4> d{};
  const double value[3] = {params.a, params.E, params.c};
  for (int j = 0; j < 3; ++j) {
    const double h = h_rel * (1.0 + std::abs(value[j]));
    const auto p1 = eval(j, h), m1 = eval(j, -h);
    const auto p2 = eval(j, 0.5 * h), m2 = eval(j, -0.5 * h);
    for (int q = 0; q < 4; ++q) {
      const double D1 = (p1[q] - m1[q]) / (2.0 * h);
      const double D2 = (p2[q] - m2[q]) / h;
      d[q][j] = (4.0 * D2 - D1) / 3.0;
    }
  }
  return {d[0], d[1], d[2], d[3]};
}

Grad3 gradient_identity(const WaveParams& params, const GradientSet& g) {
  Grad3 r{};
  for (int j = 0; j < 3; ++j)
    r[j] = params.E * g.dT[j] + params.a * g.dM[j] + 0.5 * params.c * g.dP[j] + g.dH[j];
  return r;
}

double gradient_identity_scale(const WaveParams& params, const GradientSet& g) {
  double s = 0.0;
  for (int j = 0; j < 3; ++j)
    s = std::max({s, std::abs(params.E * g.dT[j]), std::abs(params.a * g.dM[j]),
                  std::abs(0.5 * params.c * g.dP[j]), std::abs(g.dH[j])});
  return s;
}

double jacobian_TM(const GradientSet& g) { return g.dT[0] * g.dM[1] - g.dT[1] * g.dM[0]; }

double jacobian_TM(const WaveParams& params, double h_rel, const QuadratureOptions& opt) {
  return jacobian_TM(gradients(params, h_rel, opt));
}

double kdv_jacobian_closed_form(const WaveParams& params, const QuadratureOptions& opt) {
  if (!params.nonlinearity.is_kdv()) throw Error(ErrorCode::NotKdV, "closed form needs f(u) = u^2/2");
  const InvariantSet inv = compute_invariants(params, opt);
  const double disc = discriminant(Polynomial({params.E}) - potential(params));
  return -inv.T * inv.T * eval_V(params, inv.M / inv.T, 1) / (24.0 * disc);
}

}  // namespace kpwave
