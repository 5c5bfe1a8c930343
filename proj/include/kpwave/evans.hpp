#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "kpwave/wave.hpp"

namespace kpwave {

using cplx = std::complex<double>;
using Matrix6cd = Eigen::Matrix<cplx, 6, 6>;

struct SpectralPoint {
  cplx mu;
  double k;
  cplx lambda{1.0, 0.0};
};

// H(x, mu, k) for the state (v, v', v'', v''').
Eigen::Matrix4cd coefficient_matrix(const WaveParams& params, double u, double ux, cplx mu, double k);
Eigen::Matrix4cd coefficient_matrix(const WaveProfile& profile, cplx mu, double k, double x);

struct MonodromyOptions {
  double ode_tol = 1e-12;  // tightened to ode_tol / (1 + |mu|)
  int segments = 0;        // 0 picks ceil(|mu|^{1/3} T / 5)
};

int default_segments(double period, cplx mu);

// Period map stored as segment factors plus rescaled running products:
// M = F_n ... F_1 = e^{log_scale} matrix, Lambda^2 M = e^{log_scale2} compound,
// M^{-1} = e^{log_scale_inv} inverse, det M = prod det F_j.
struct Monodromy {
  cplx mu;
  double k = 0.0;
  std::vector<Eigen::Matrix4cd> factors;
  Eigen::Matrix4cd matrix;
  double log_scale = 0.0;
  Matrix6cd compound;
  double log_scale2 = 0.0;
  Eigen::Matrix4cd inverse;
  double log_scale_inv = 0.0;
  cplx det;

  // e^{log_scale} matrix; ScaleOverflow when not representable.
  Eigen::Matrix4cd reconstruct() const;
  // Determinant of the reconstructed product by LU (no factor bookkeeping).
  cplx det_direct() const;
};

// Propagator from grid index i0 to i1 (i0 < i1), segmented.
Monodromy propagator(const WaveProfile& profile, cplx mu, double k, int i0, int i1,
                     const MonodromyOptions& opt = {});
Monodromy monodromy(const WaveProfile& profile, cplx mu, double k, const MonodromyOptions& opt = {});

Matrix6cd second_compound(const Eigen::Matrix4cd& A);

// value = mantissa * e^{log_scale}.
struct EvansValue {
  enum class Route { LU, Compound };

  cplx mantissa;
  double log_scale = 0.0;
  Route route = Route::LU;

  cplx value() const;
  double log_abs() const;
  // Sign of the real part, 0 below the floor 1e-300 e^{log_scale}.
  int sign() const;
};

// det(M - lambda I). Complete-pivot LU on the reconstructed matrix while
// log_scale <= lu_log_limit; past that the trace/compound expansion
// lambda^4 - e1 lambda^3 + e2 lambda^2 - e3 lambda + e4.
EvansValue evans(const Monodromy& m, cplx lambda, double lu_log_limit = 5.0);
EvansValue evans_compound(const Monodromy& m, cplx lambda);
EvansValue evans(const WaveProfile& profile, cplx mu, double k, cplx lambda = 1.0,
                 const MonodromyOptions& opt = {});

// Characteristic polynomial coefficients lambda^4 + a lambda^3 + b lambda^2 + c lambda + d
// from traces of the reconstructed matrix.
struct CharPoly {
  cplx a, b, c, d;
};
CharPoly char_poly(const Eigen::Matrix4cd& M);

struct EvansSample {
  double mu;
  EvansValue D;
  int sign;
};

struct RootBracket {
  double lo;
  double hi;
  double root;   // midpoint of the refined bracket
  double width;
};

struct ScanOptions {
  MonodromyOptions monodromy;
  double root_width = 1e-6;
  double imag_tol = 1e-9;
  unsigned threads = 0;
};

struct ScanReport {
  double k = 0.0;
  cplx lambda{1.0, 0.0};
  std::vector<EvansSample> samples;
  std::vector<RootBracket> roots;
  bool unstable() const;  // any root with mu* > 0
};

// D along a sorted real mu grid; sign changes are refined by bisection.
// Throws NonRealEvans when Im D exceeds imag_tol |D| for real data.
ScanReport evans_scan(const WaveProfile& profile, const std::vector<double>& mu_grid, double k,
                      cplx lambda = 1.0, const ScanOptions& opt = {});

}  // namespace kpwave
