#pragma once

#include <span>
#include <utility>
#include <vector>

namespace kpwave {

// Real polynomial with coefficients stored in ascending degree order.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> ascending);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::span<const double> coeffs() const { return c_; }
  double leading() const { return c_.back(); }

  double operator()(double x) const;
  // n-th derivative evaluated at x, exact in floating point up to Horner rounding.
  double eval(double x, int order) const;

  Polynomial derivative(int order = 1) const;
  // Antiderivative with zero constant term.
  Polynomial antiderivative() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(double s) const;

  // Synthetic division by (x - r). Returns (quotient, remainder).
  std::pair<Polynomial, double> deflate(double r) const;

  // Cauchy bound: every root satisfies |x| <= 1 + max_i |c_i / c_n|.
  double cauchy_bound() const;

  // All distinct real roots in ascending order. Roots are isolated on the
  // monotone pieces between critical points (real roots of the derivative,
  // found recursively) and polished by bisection followed by Newton.
  // Multiple roots are reported once.
  std::vector<double> real_roots() const;

 private:
  void trim();
  std::vector<double> c_{0.0};
};

// Standard discriminant, (-1)^{n(n-1)/2} res(p, p') / lc(p); for a monic
// polynomial with roots r_i this is prod_{i<j} (r_i - r_j)^2.
double discriminant(const Polynomial& p);

}  // namespace kpwave
