#include "kpwave/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "kpwave/error.hpp"

namespace kpwave {

Polynomial::Polynomial(std::vector<double> ascending) : c_(std::move(ascending)) {
  if (c_.empty()) c_.push_back(0.0);
  trim();
}

void Polynomial::trim() {
  while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::eval(double x, int order) const {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "negative derivative order");
  const int n = degree();
  if (order > n) return 0.0;
  double acc = 0.0;
  for (int i = n; i >= order; --i) {
    // falling factorial i (i-1) ... (i-order+1)
    double f = 1.0;
    for (int j = 0; j < order; ++j) f *= static_cast<double>(i - j);
    acc = acc * x + f * c_[i];
  }
  return acc;
}

Polynomial Polynomial::derivative(int order) const {
  std::vector<double> d = c_;
  for (int k = 0; k < order; ++k) {
    if (d.size() <= 1) return Polynomial({0.0});
    std::vector<double> next(d.size() - 1);
    for (std::size_t i = 1; i < d.size(); ++i) next[i - 1] = static_cast<double>(i) * d[i];
    d = std::move(next);
  }
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> a(c_.size() + 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / static_cast<double>(i + 1);
  return Polynomial(std::move(a));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * -1.0; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<double> r = c_;
  for (double& v : r) v *= s;
  return Polynomial(std::move(r));
}

std::pair<Polynomial, double> Polynomial::deflate(double r) const {
  const int n = degree();
  if (n == 0) return {Polynomial({0.0}), c_[0]};
  std::vector<double> q(n, 0.0);
  double carry = c_[n];
  for (int i = n - 1; i >= 0; --i) {
    q[i] = carry;
    carry = c_[i] + carry * r;
  }
  return {Polynomial(std::move(q)), carry};
}

double Polynomial::cauchy_bound() const {
  double m = 0.0;
  for (int i = 0; i < degree(); ++i) m = std::max(m, std::abs(c_[i] / c_.back()));
  return 1.0 + m;
}

namespace {

double polish(const Polynomial& p, const Polynomial& dp, double lo, double hi) {
  double flo = p(lo);
  if (flo == 0.0) return lo;
  if (p(hi) == 0.0) return hi;
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() *
                                               std::max(1.0, std::abs(lo) + std::abs(hi));
       ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  // Newton clean-up; bisection already localises to a few ulps.
  for (int it = 0; it < 3; ++it) {
    const double d = dp(x);
    if (d == 0.0) break;
    const double step = p(x) / d;
    const double nx = x - step;
    if (!(nx >= lo - (hi - lo) && nx <= hi + (hi - lo))) break;
    x = nx;
  }
  return x;
}

}  // namespace

std::vector<double> Polynomial::real_roots() const {
  const int n = degree();
  if (n <= 0) return {};
  if (n == 1) return {-c_[0] / c_[1]};

  const double bound = cauchy_bound();
  std::vector<double> breaks{-bound};
  for (double r : derivative().real_roots())
    if (r > -bound && r < bound) breaks.push_back(r);
  breaks.push_back(bound);

  double scale = 0.0;
  for (double v : c_) scale = std::max(scale, std::abs(v));
  const double zero_tol = 64.0 * std::numeric_limits<double>::epsilon() * scale *
                          std::pow(std::max(1.0, bound), n);

  const Polynomial dp = derivative();
  std::vector<double> roots;
  auto push = [&](double r) {
    if (!roots.empty() &&
        std::abs(r - roots.back()) <= 1e-12 * std::max(1.0, std::abs(r)))
      return;
    roots.push_back(r);
  };
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i], hi = breaks[i + 1];
    const double flo = (*this)(lo), fhi = (*this)(hi);
    // A critical point where p vanishes to rounding is a multiple root.
    if (i > 0 && std::abs(flo) <= zero_tol) push(lo);
    if ((flo < 0.0 && fhi > 0.0) || (flo > 0.0 && fhi < 0.0)) {
      if (std::abs(flo) > zero_tol && std::abs(fhi) > zero_tol) push(polish(*this, dp, lo, hi));
    }
  }
  return roots;
}

double discriminant(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "discriminant of a constant");
  if (n == 1) return 1.0;
  const Polynomial dp = p.derivative();
  const int m = n - 1;
  const int size = n + m;
  Eigen::MatrixXd syl = Eigen::MatrixXd::Zero(size, size);
  auto pc = p.coeffs();
  auto dc = dp.coeffs();
  // Rows hold descending coefficients, shifted.
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) syl(r, r + j) = pc[n - j];
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) syl(m + r, r + j) = dc[m - j];
  const double res = syl.fullPivLu().determinant();
  const double sign = ((n * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  return sign * res / p.leading();
}

}  // namespace kpwave
