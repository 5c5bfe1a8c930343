#include "kpwave/elliptic.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "kpwave/error.hpp"

namespace kpwave {

EllipticModulus::EllipticModulus(double k) : k_(k) {
  if (!(k >= 0.0 && k < 1.0))
    throw Error(ErrorCode::ModulusOutOfRange, "elliptic modulus must lie in [0, 1), got " + std::to_string(k));
}

double EllipticModulus::complementary() const { return std::sqrt((1.0 - k_) * (1.0 + k_)); }

double agm(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw Error(ErrorCode::InvalidArgument, "agm needs positive arguments");
  for (int it = 0; it < 64; ++it) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    if (std::abs(an - bn) <= 1e-16 * an) return 0.5 * (an + bn);
    a = an;
    b = bn;
  }
  return 0.5 * (a + b);
}

namespace {

constexpr int kMaxScale = 32;

struct AgmScale {
  std::array<double, kMaxScale> a{};
  std::array<double, kMaxScale> c{};
  int n = 0;  // index of last computed level
};

AgmScale agm_scale(EllipticModulus m) {
  AgmScale s;
  s.a[0] = 1.0;
  double b = m.complementary();
  s.c[0] = m.k();
  int n = 0;
  while (std::abs(s.c[n]) > 1e-17 && n + 1 < kMaxScale) {
    const double an = 0.5 * (s.a[n] + b);
    const double cn = 0.5 * (s.a[n] - b);
    b = std::sqrt(s.a[n] * b);
    ++n;
    s.a[n] = an;
    s.c[n] = cn;
  }
  s.n = n;
  return s;
}

}  // namespace

JacobiValues jacobi_elliptic(double x, EllipticModulus m) {
  const AgmScale s = agm_scale(m);
  if (s.n == 0) return {std::sin(x), std::cos(x), 1.0};
  std::array<double, kMaxScale> phi{};
  phi[s.n] = std::ldexp(s.a[s.n] * x, s.n);
  for (int n = s.n; n >= 1; --n)
    phi[n - 1] = 0.5 * (phi[n] + std::asin(s.c[n] * std::sin(phi[n]) / s.a[n]));
  const double sn = std::sin(phi[0]);
  const double cn = std::cos(phi[0]);
  const double dn = cn / std::cos(phi[1] - phi[0]);
  return {sn, cn, dn};
}

double complete_K(EllipticModulus m) {
  return 0.5 * std::numbers::pi / agm(1.0, m.complementary());
}

double complete_E(EllipticModulus m) {
  const AgmScale s = agm_scale(m);
  double sum = 0.0;
  for (int n = 0; n <= s.n; ++n) sum += std::ldexp(s.c[n] * s.c[n], n - 1);
  return complete_K(m) * (1.0 - sum);
}

}  // namespace kpwave
