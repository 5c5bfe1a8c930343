#include "kpwave/model.hpp"

#include <cmath>

#include "kpwave/error.hpp"

namespace kpwave {

NonlinearitySpec::NonlinearitySpec(Kind kind, double coef, int exponent, Polynomial f)
    : kind_(kind), coef_(coef), exponent_(exponent), f_(std::move(f)), F_(f_.antiderivative()) {}

NonlinearitySpec NonlinearitySpec::power(double coef, int exponent) {
  if (exponent < 1) throw Error(ErrorCode::InvalidArgument, "power exponent must be a positive integer");
  std::vector<double> c(static_cast<std::size_t>(exponent) + 1, 0.0);
  c.back() = coef;
  return NonlinearitySpec(Kind::Power, coef, exponent, Polynomial(std::move(c)));
}

NonlinearitySpec NonlinearitySpec::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw Error(ErrorCode::InvalidArgument, "empty polynomial nonlinearity");
  return NonlinearitySpec(Kind::Polynomial, 0.0, 0, Polynomial(std::move(coeffs)));
}

bool NonlinearitySpec::is_kdv() const {
  auto c = f_.coeffs();
  return c.size() == 3 && c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.5;
}

void WaveParams::validate() const {
  if (!(c > 0.0)) throw Error(ErrorCode::InvalidArgument, "wave speed c must be positive");
  if (sigma != 1 && sigma != -1) throw Error(ErrorCode::InvalidArgument, "sigma must be +1 or -1");
  if (!std::isfinite(a) || !std::isfinite(E)) throw Error(ErrorCode::InvalidArgument, "non-finite a or E");
  if (well_hint && !(well_hint->lo < well_hint->hi))
    throw Error(ErrorCode::InvalidArgument, "well hint must satisfy lo < hi");
}

WaveParams WaveParams::with(double a_, double E_, double c_) const {
  WaveParams p = *this;
  p.a = a_;
  p.E = E_;
  p.c = c_;
  return p;
}

double eval_f(const NonlinearitySpec& spec, double u, int order) {
  if (order < 0 || order > 3) throw Error(ErrorCode::InvalidArgument, "eval_f supports orders 0..3");
  return spec.f().eval(u, order);
}

Polynomial potential(const WaveParams& params) {
  return params.nonlinearity.F() - Polynomial({0.0, params.a, 0.5 * params.c});
}

double eval_V(const WaveParams& params, double u, int order) {
  if (order < 0 || order > 3) throw Error(ErrorCode::InvalidArgument, "eval_V supports orders 0..3");
  // V^(n) = F^(n) - a d^n u/du^n - (c/2) d^n u^2/du^n; F^(n) = f^(n-1).
  const auto& spec = params.nonlinearity;
  switch (order) {
    case 0: return spec.F()(u) - params.a * u - 0.5 * params.c * u * u;
    case 1: return spec.f()(u) - params.a - params.c * u;
    case 2: return spec.f().eval(u, 1) - params.c;
    default: return spec.f().eval(u, 2);
  }
}

}  // namespace kpwave
