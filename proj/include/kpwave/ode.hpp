#pragma once

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "kpwave/error.hpp"

// Thin wrapper over the Fehlberg 7(8) embedded pair from Boost.Odeint. State
// types are fixed-size std::arrays of double or std::complex<double>.
namespace kpwave::ode {

struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-12;
};

namespace detail {

template <class State>
using Stepper = boost::numeric::odeint::runge_kutta_fehlberg78<State, double, State, double>;

inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const std::complex<double>& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

template <class State>
void check_finite(const State& x, double t) {
  for (const auto& v : x)
    if (!finite(v)) throw Error(ErrorCode::IntegrationFailure, "non-finite state at x = " + std::to_string(t));
}

inline constexpr std::size_t kMaxSteps = 2'000'000;

}  // namespace detail

// Integrates x' = rhs(x, t) from t0 to t1 and returns x(t1).
template <class State, class Rhs>
State integrate(Rhs&& rhs, State x, double t0, double t1, Tolerance tol) {
  namespace odeint = boost::numeric::odeint;
  if (t1 == t0) return x;
  auto stepper = odeint::make_controlled(tol.abs, tol.rel, detail::Stepper<State>());
  auto sys = [&rhs](const State& s, State& ds, double t) { rhs(s, ds, t); };
  const double dt0 = (t1 - t0) / 64.0;
  std::size_t steps = 0;
  auto guard = [&steps](const State&, double t) {
    if (++steps > detail::kMaxSteps)
      throw Error(ErrorCode::IntegrationFailure, "step limit reached at x = " + std::to_string(t));
  };
  try {
    odeint::integrate_adaptive(stepper, sys, x, t0, t1, dt0, guard);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::IntegrationFailure, e.what());
  }
  detail::check_finite(x, t1);
  return x;
}

// Integrates and returns the state at every entry of `times` (increasing,
// times.front() is the initial time).
template <class State, class Rhs>
std::vector<State> integrate_at(Rhs&& rhs, State x, std::span<const double> times, Tolerance tol) {
  namespace odeint = boost::numeric::odeint;
  std::vector<State> out;
  out.reserve(times.size());
  if (times.empty()) return out;
  auto stepper = odeint::make_controlled(tol.abs, tol.rel, detail::Stepper<State>());
  auto sys = [&rhs](const State& s, State& ds, double t) { rhs(s, ds, t); };
  auto observer = [&out](const State& s, double) { out.push_back(s); };
  const double dt0 = times.size() > 1 ? (times[1] - times[0]) : 1e-3;
  try {
    odeint::integrate_times(stepper, sys, x, times.begin(), times.end(), dt0, observer,
                            odeint::max_step_checker(detail::kMaxSteps));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::IntegrationFailure, e.what());
  }
  if (!out.empty()) detail::check_finite(out.back(), times.back());
  return out;
}

}  // namespace kpwave::ode
