#pragma once

#include <array>

#include "kpwave/model.hpp"
#include "kpwave/quadrature.hpp"

namespace kpwave {

// Period, mass, momentum and Hamiltonian over one period:
// T = int dx, M = int u, P = int u^2, H = int (u_x^2/2 - F(u)).
struct InvariantSet {
  double T;
  double M;
  double P;
  double H;

  double jensen_gap() const { return P * T - M * M; }
};

InvariantSet compute_invariants(const WaveParams& params, const QuadratureOptions& opt = {});

// Gradient components ordered (d/da, d/dE, d/dc).
using Grad3 = std::array<double, 3>;

struct GradientSet {
  Grad3 dT;
  Grad3 dM;
  Grad3 dP;
  Grad3 dH;
};

// Central differences with one Richardson step, h = h_rel (1 + |param|).
// Stencil points are pinned to the base well; losing it raises StencilLeftRegion.
GradientSet gradients(const WaveParams& params, double h_rel = 1e-4, const QuadratureOptions& opt = {});

// E dT + a dM + (c/2) dP + dH, componentwise, and a scale for it.
Grad3 gradient_identity(const WaveParams& params, const GradientSet& g);
double gradient_identity_scale(const WaveParams& params, const GradientSet& g);

// {T,M}_{a,E} = T_a M_E - T_E M_a.
double jacobian_TM(const GradientSet& g);
double jacobian_TM(const WaveParams& params, double h_rel = 1e-4, const QuadratureOptions& opt = {});

// KdV closed form -T^2 V'(M/T) / (24 disc), disc the standard discriminant of
// the cubic E - V(u). Throws NotKdV.
double kdv_jacobian_closed_form(const WaveParams& params, const QuadratureOptions& opt = {});

}  // namespace kpwave
