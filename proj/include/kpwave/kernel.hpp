#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "kpwave/wave.hpp"

namespace kpwave {

// Solutions of d^2/dx^2 L[u] v = 0, L[u] = -d^2/dx^2 - f'(u) + c, on the
// profile grid, plus the running integrals that build phi and W^{-1} e_4.
struct KernelBasis {
  enum Column { Ux = 0, Ua = 1, UE = 2, Phi = 3 };

  WaveParams params;
  std::vector<double> x;
  std::vector<double> u, ux, uxx;
  std::vector<double> ua, uax;
  std::vector<double> uE, uEx;
  std::vector<double> SE;   // int_0^x s u_E
  std::vector<double> Sx;   // int_0^x s u_x
  std::vector<double> J;    // int_0^x u
  std::vector<double> IE;   // int_0^x u_E
  std::vector<double> IIE;  // int_0^x int_0^s u_E
  double dum_da = 0.0;      // d u_- / da
  double dum_dE = 0.0;      // d u_- / dE
  bool has_phi = false;

  int size() const { return static_cast<int>(x.size()); }
  // (v, v', v'', v''') at grid index i; third derivatives from the ODEs.
  std::array<double, 4> column(Column which, int i) const;
  // u_x u_E' - u_xx u_E.
  double wronskian(int i) const;
};

// u_x, u_a, u_E by integrating the variational equations alongside the
// profile, with u_a(0) = u_-/V'(u_-), u_E(0) = 1/V'(u_-).
KernelBasis variational_solutions(const WaveProfile& profile, const Tolerances& tol = {});

// Enables the phi column, phi = (int s u_E) u_x - (int s u_x) u_E.
// Throws WronskianDegenerate.
KernelBasis phi_solution(const WaveProfile& profile, KernelBasis basis, const Tolerances& tol = {});

struct KernelResiduals {
  double ux;   // sup |L u_x| / (1 + sup |u_x|)
  double ua;   // sup |L u_a + 1| / (1 + sup |u_a|)
  double uE;
  double phi;  // sup |L phi - x| / (1 + sup |phi|)
  double ux_vs_profile;
  double wronskian;  // sup |W(u_x, u_E) - 1|
};

// Second derivatives by sixth-order differences of the first-derivative
// samples, then L applied pointwise.
KernelResiduals kernel_residuals(const WaveProfile& profile, const KernelBasis& basis);

struct WMatrix {
  Eigen::Matrix4d W0;
  Eigen::Matrix4d WT;
  Eigen::Matrix4d dW;  // W(T) - W(0)
};

Eigen::Matrix4d W_at(const KernelBasis& basis, int i);
WMatrix build_W(const KernelBasis& basis);

// Inputs of the closed-form delta W(0,0) display.
struct DeltaWInputs {
  double Vp;      // V'(u_-)
  double Vpp;     // V''(u_-)
  double dum_dE;
  double T;
  double T_a;
  double T_E;
  double xux;     // int_0^T x u_x
  double xuE;     // int_0^T x u_E
};

DeltaWInputs delta_w_inputs(const KernelBasis& basis, double T_a, double T_E);
// verbatim = true reproduces the display as printed; false adds the
// T_E int x u_x terms to entries (2,4) and (4,4).
Eigen::Matrix4d delta_w_display(const DeltaWInputs& in, bool verbatim);

// Largest entrywise relative difference; entries under 1e-3 of the largest
// |dW| entry are measured against that floor instead.
double delta_w_mismatch(const Eigen::Matrix4d& display, const Eigen::Matrix4d& dW);

struct AppendixBReport {
  double inverse_column;   // sup_x |W(x) y(x) - e_4|_inf, y the claimed W^{-1} e_4
  double lu_agreement;     // sup_x |y(x) - LU solve of W(x) z = e_4|_inf
  double wronskian_ae;     // sup_x |u_ax u_E - u_a u_Ex - int_0^x u_E|
  double A0_at_T;          // first component of the LU solve at x = T
  double IIE_at_T;         // int_0^T int_0^s u_E
};

AppendixBReport verify_appendix_b(const KernelBasis& basis);

struct TurningPointIdentities {
  double dE_residual;  // |V'(u_-) du_-/dE - 1|
  double da_residual;  // |V'(u_-) du_-/da - u_-|
};

// Finite differences of u_- in a and E against the exact V'.
TurningPointIdentities turning_point_identities(const WaveParams& params, double h_rel = 1e-4);

}  // namespace kpwave
