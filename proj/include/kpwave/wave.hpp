#pragma once

#include <optional>
#include <vector>

#include "kpwave/elliptic.hpp"
#include "kpwave/model.hpp"
#include "kpwave/quadrature.hpp"

namespace kpwave {

struct Tolerances {
  double ode = 1e-12;
  double quad = 1e-12;
  double simplicity = 1e-8;
  double kernel = 1e-6;

  // Multiplies every tolerance by s (the CLI --tol-scale flag).
  Tolerances scaled(double s) const;
  QuadratureOptions quadrature() const;
};

struct TurningPoints {
  double u_minus;
  double u_plus;
};

// Adjacent simple roots of E = V(u) with E - V > 0 between them. When several
// bounded wells exist, bracket_hint (or params.well_hint) picks the one it
// overlaps; otherwise AmbiguousWell.
TurningPoints find_turning_points(const WaveParams& params,
                                  std::optional<Interval> bracket_hint = std::nullopt,
                                  double simplicity_tol = 1e-8);

// E - V(u) = (u - u_-)(u_+ - u) q(u); returns q as a polynomial.
Polynomial well_cofactor(const WaveParams& params, const TurningPoints& tp);

// T = sqrt(2) * int du / sqrt(E - V) via u = u_- + (u_+ - u_-) sin^2(theta).
double compute_period(const WaveParams& params, const QuadratureOptions& opt = {});

// Periodic profile u'' = -V'(u), u(0) = u_-, u'(0) = 0 sampled on a uniform
// grid over one period.
class WaveProfile {
 public:
  WaveProfile(WaveParams params, TurningPoints tp, double period, std::vector<double> u,
              std::vector<double> ux);

  const WaveParams& params() const { return params_; }
  double u_minus() const { return u_minus_; }
  double u_plus() const { return u_plus_; }
  double period() const { return period_; }
  int intervals() const { return static_cast<int>(u_.size()) - 1; }
  double step() const { return period_ / intervals(); }
  double grid(int i) const { return i * step(); }
  std::vector<double> grid() const;
  const std::vector<double>& u_samples() const { return u_; }
  const std::vector<double>& ux_samples() const { return ux_; }

  // Quintic Hermite interpolation on (u, u_x, u_xx = -V'(u)); x is reduced
  // modulo the period.
  double u(double x) const;
  double ux(double x) const;
  double uxx(double x) const;

  // sup |u_x^2/2 - E + V(u)| over the grid.
  double energy_residual() const;

 private:
  struct Local {
    int i;
    double t;
  };
  Local locate(double x) const;

  WaveParams params_;
  double u_minus_;
  double u_plus_;
  double period_;
  std::vector<double> u_;
  std::vector<double> ux_;
  std::vector<double> uxx_;
};

WaveProfile integrate_profile(const WaveParams& params, int samples_per_period = 1024,
                              const Tolerances& tol = {});

// KdV cnoidal wave u = u0 + 12 k^2 kappa^2 cn^2(kappa x + K(k), k), shifted so
// that it starts at its minimum, together with the (a, E, c) it solves.
WaveProfile cnoidal_wave(double u0, double kappa, EllipticModulus m, int samples_per_period = 1024);

// Sup over the grid of |p(x) - q(x)| and |p_x - q_x| for two profiles with
// the same sample count; both start at their minimum so no shift is applied.
double profile_distance(const WaveProfile& p, const WaveProfile& q);

}  // namespace kpwave
