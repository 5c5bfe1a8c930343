#include <doctest.h>

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>

#include "kpwave/error.hpp"
#include "kpwave/wave.hpp"
#include "../waves.hpp"

using namespace kpwave;
using namespace kpwave::testing;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

// Cubic roots of u^3/6 - u^2/2 + 0.05 by the trigonometric formula.
std::array<double, 3> kdv_cubic_roots() {
  // u^3 - 3u^2 + 0.3 = 0, u = y + 1: y^3 - 3y - 1.7 = 0
  const double r = 2.0, phi = std::acos(1.7 / 2.0);
  std::array<double, 3> y{};
  for (int j = 0; j < 3; ++j) y[j] = r * std::cos((phi - 2.0 * std::numbers::pi * j) / 3.0) + 1.0;
  std::sort(y.begin(), y.end());
  return y;
}

}  // namespace

TEST_SUITE("wave") {
  TEST_CASE("turning points match the cubic formula") {
    const auto roots = kdv_cubic_roots();
    const TurningPoints tp = find_turning_points(kdv_wave());
    CHECK(tp.u_minus == doctest::Approx(roots[1]).epsilon(1e-13));
    CHECK(tp.u_plus == doctest::Approx(roots[2]).epsilon(1e-13));
  }

  TEST_CASE("turning point errors") {
    CHECK(code_of([] { find_turning_points(kdv_wave().with(0.0, 0.0, 1.0)); }) == ErrorCode::DegenerateTurningPoint);
    CHECK(code_of([] { find_turning_points(kdv_wave().with(0.0, 0.5, 1.0)); }) == ErrorCode::NoPeriodicOrbit);
    WaveParams two = mkdv_dnoidal();
    two.well_hint.reset();
    CHECK(code_of([&] { find_turning_points(two); }) == ErrorCode::AmbiguousWell);
    const TurningPoints neg = find_turning_points(two, Interval{-4.0, 0.0});
    const TurningPoints pos = find_turning_points(mkdv_dnoidal());
    CHECK(neg.u_minus == doctest::Approx(-pos.u_plus));
  }

  TEST_CASE("harmonic regime") {
    const double dE = 1e-6;
    const WaveParams p = kdv_wave().with(0.0, -2.0 / 3.0 + dE, 1.0);
    const TurningPoints tp = find_turning_points(p);
    CHECK(std::abs(tp.u_plus - (2.0 + std::sqrt(2.0 * dE))) < 1e-5);
    CHECK(std::abs(tp.u_minus - (2.0 - std::sqrt(2.0 * dE))) < 1e-5);
    CHECK(compute_period(p) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-5));
  }

  TEST_CASE("period against a return-time oracle") {
    const WaveParams p = kdv_wave();
    const TurningPoints tp = find_turning_points(p);
    using State = std::array<double, 2>;
    namespace ode = boost::numeric::odeint;
    auto rhs = [&](const State& y, State& dy, double) {
      dy[0] = y[1];
      dy[1] = -eval_V(p, y[0], 1);
    };
    // half period: u_x returns to zero at u_+
    auto stepper = ode::make_dense_output(1e-14, 1e-14, ode::runge_kutta_dopri5<State>());
    State y{tp.u_minus, 0.0};
    stepper.initialize(y, 0.0, 1e-3);
    double t0 = 0.0, t1 = 0.0;
    while (true) {
      const auto [a, b] = stepper.do_step(rhs);
      if (a > 0.0 && stepper.current_state()[1] < 0.0) {
        t0 = a;
        t1 = b;
        break;
      }
    }
    for (int i = 0; i < 80; ++i) {
      const double m = 0.5 * (t0 + t1);
      State s;
      stepper.calc_state(m, s);
      (s[1] > 0.0 ? t0 : t1) = m;
    }
    CHECK(compute_period(p) == doctest::Approx(2.0 * t0).epsilon(1e-10));
  }

  TEST_CASE("period grows toward the separatrix") {
    double last = 0.0;
    for (double E : {-0.3, -0.1, -0.01, -1e-3, -1e-4}) {
      const double T = compute_period(kdv_wave().with(0.0, E, 1.0));
      CHECK(T > last);
      last = T;
    }
  }

  TEST_CASE("profile properties") {
    const WaveProfile prof = integrate_profile(kdv_wave(), 1024);
    CHECK(prof.energy_residual() <= 10.0 * Tolerances{}.ode);
    double lo = INFINITY, hi = -INFINITY;
    for (double u : prof.u_samples()) {
      lo = std::min(lo, u);
      hi = std::max(hi, u);
    }
    CHECK(std::abs(lo - prof.u_minus()) < 1e-9);
    CHECK(std::abs(hi - prof.u_plus()) < 1e-9);
    const int n = prof.intervals();
    for (int i = 0; i <= n; i += 37) CHECK(std::abs(prof.u_samples()[i] - prof.u_samples()[n - i]) < 1e-10);
    CHECK(std::abs(prof.u(0.3) - prof.u(prof.period() - 0.3)) < 1e-10);
    CHECK(std::abs(prof.u(0.3) - prof.u(0.3 + prof.period())) < 1e-12);
    CHECK(prof.uxx(1.0) == doctest::Approx(-eval_V(prof.params(), prof.u(1.0), 1)));
    CHECK_THROWS_AS(integrate_profile(kdv_wave(), 16), Error);
  }
}
