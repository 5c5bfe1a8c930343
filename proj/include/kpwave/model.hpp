#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kpwave/polynomial.hpp"

namespace kpwave {

// The nonlinearity f of u_t = u_xxx + f(u)_x. Either a power law
// coef * u^exponent or an explicit polynomial (ascending coefficients of f).
class NonlinearitySpec {
 public:
  enum class Kind { Power, Polynomial };

  static NonlinearitySpec power(double coef, int exponent);
  static NonlinearitySpec polynomial(std::vector<double> coeffs);
  // f(u) = u^2/2 and f(u) = u^3/3.
  static NonlinearitySpec kdv() { return power(0.5, 2); }
  static NonlinearitySpec mkdv() { return power(1.0 / 3.0, 3); }

  Kind kind() const { return kind_; }
  double coef() const { return coef_; }
  int exponent() const { return exponent_; }

  const Polynomial& f() const { return f_; }
  // Antiderivative with F(0) = 0.
  const Polynomial& F() const { return F_; }

  // f is exactly u^2/2 (up to representation): the setting of the cubic closed forms.
  bool is_kdv() const;

 private:
  NonlinearitySpec(Kind kind, double coef, int exponent, Polynomial f);
  Kind kind_;
  double coef_ = 0.0;
  int exponent_ = 0;
  Polynomial f_;
  Polynomial F_;
};

struct Interval {
  double lo;
  double hi;
};

// (a, E, c) and the dispersion sign of the transverse problem.
struct WaveParams {
  double a = 0.0;
  double E = 0.0;
  double c = 1.0;
  NonlinearitySpec nonlinearity = NonlinearitySpec::kdv();
  int sigma = 1;
  // Selects the potential well when E - V > 0 on more than one bounded interval.
  std::optional<Interval> well_hint;

  // Throws InvalidArgument unless c > 0 and sigma is +1 or -1.
  void validate() const;
  WaveParams with(double a_, double E_, double c_) const;
};

// order-th derivative of f at u, order in 0..3.
double eval_f(const NonlinearitySpec& spec, double u, int order);

// Effective potential V(u; a, c) = F(u) - a u - (c/2) u^2 and its derivatives
// (order 0..3).
double eval_V(const WaveParams& params, double u, int order);

// V as a polynomial in u.
Polynomial potential(const WaveParams& params);

}  // namespace kpwave
