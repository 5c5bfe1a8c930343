#include <doctest.h>

#include <cmath>

#include "kpwave/conserved.hpp"
#include "kpwave/evans.hpp"
#include "kpwave/kernel.hpp"
#include "kpwave/wave.hpp"
#include "../waves.hpp"

using namespace kpwave;
using namespace kpwave::testing;

namespace {

struct Fixture {
  WaveProfile prof = integrate_profile(kdv_wave(), 1024);
  KernelBasis basis = phi_solution(prof, variational_solutions(prof));
};

const Fixture& fx() {
  static const Fixture f;
  return f;
}

}  // namespace

TEST_SUITE("kernel") {
  TEST_CASE("residuals") {
    const KernelResiduals r = kernel_residuals(fx().prof, fx().basis);
    CHECK(r.ux <= 1e-6);
    CHECK(r.ua <= 1e-6);
    CHECK(r.uE <= 1e-6);
    CHECK(r.phi <= 1e-6);
    CHECK(r.ux_vs_profile <= 1e-9);
    CHECK(r.wronskian <= 1e-9);
  }

  TEST_CASE("initial data") {
    const KernelBasis& b = fx().basis;
    const int n = b.size() - 1;
    CHECK(std::abs(b.ux[0]) < 1e-15);
    CHECK(std::abs(b.ux[n]) < 1e-10);
    const auto phi0 = b.column(KernelBasis::Phi, 0);
    CHECK(phi0[0] == 0.0);
    CHECK(phi0[1] == 0.0);
    CHECK(phi0[2] == 0.0);
    CHECK(phi0[3] == doctest::Approx(-1.0));
  }

  TEST_CASE("u_a against two phase-locked profiles") {
    const double h = 1e-5;
    const WaveParams p = kdv_wave();
    const WaveProfile up = integrate_profile(p.with(p.a + h, p.E, p.c), 1024);
    const WaveProfile dn = integrate_profile(p.with(p.a - h, p.E, p.c), 1024);
    const KernelBasis& b = fx().basis;
    double worst = 0.0;
    for (int i = 0; i < b.size() * 9 / 10; i += 25) {
      const double x = b.x[i];
      worst = std::max(worst, std::abs((up.u(x) - dn.u(x)) / (2 * h) - b.ua[i]) / (1.0 + std::abs(b.ua[i])));
    }
    CHECK(worst < 1e-6);
  }

  TEST_CASE("W matrix") {
    const KernelBasis& b = fx().basis;
    const int n = b.size() - 1;
    for (int i : {0, n / 4, n / 2, n}) CHECK(W_at(b, i).determinant() == doctest::Approx(1.0).epsilon(1e-8));
    Eigen::Matrix4d gram = Eigen::Matrix4d::Zero();
    for (int r = 0; r < 4; ++r) {
      const int i = 1 + r * n / 5;
      for (int c = 0; c < 4; ++c) gram(r, c) = b.column(static_cast<KernelBasis::Column>(c), i)[0];
    }
    CHECK(std::abs(gram.determinant()) > 1e-8);
  }

  TEST_CASE("W solves the first-order system at mu = k = 0") {
    const KernelBasis& b = fx().basis;
    for (int i : {10, 300, 700}) {
      const Eigen::Matrix4cd H = coefficient_matrix(b.params, b.u[i], b.ux[i], 0.0, 0.0);
      for (int c = 0; c < 4; ++c) {
        const auto v = b.column(static_cast<KernelBasis::Column>(c), i);
        Eigen::Vector4cd y(v[0], v[1], v[2], v[3]);
        const Eigen::Vector4cd dy = H * y;
        // the first three rows are the companion shift, the last is L-derived
        CHECK(std::abs(dy(0) - v[1]) < 1e-12 * (1 + std::abs(v[1])));
        CHECK(std::abs(dy(1) - v[2]) < 1e-12 * (1 + std::abs(v[2])));
        CHECK(std::abs(dy(2) - v[3]) < 1e-12 * (1 + std::abs(v[3])));
      }
    }
  }

  TEST_CASE("delta W display") {
    const KernelBasis& b = fx().basis;
    const GradientSet g = gradients(b.params);
    const DeltaWInputs in = delta_w_inputs(b, g.dT[0], g.dT[1]);
    const Eigen::Matrix4d dW = build_W(b).dW;
    CHECK(dW.col(0).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(dW(1, 1) == doctest::Approx(in.Vp * g.dT[0]).epsilon(1e-6));
    CHECK(delta_w_mismatch(delta_w_display(in, false), dW) <= 1e-6);
    CHECK(delta_w_mismatch(delta_w_display(in, true), dW) > 1e-3);
  }

  TEST_CASE("inverse column") {
    const AppendixBReport r = verify_appendix_b(fx().basis);
    CHECK(r.inverse_column <= 1e-7);
    CHECK(r.lu_agreement <= 1e-9);
    CHECK(r.wronskian_ae <= 1e-9);
    CHECK(r.A0_at_T == doctest::Approx(-r.IIE_at_T).epsilon(1e-8));
  }

  TEST_CASE("turning point identities") {
    const TurningPointIdentities t = turning_point_identities(kdv_wave());
    CHECK(t.dE_residual < 1e-8);
    CHECK(t.da_residual < 1e-8);
  }
}
