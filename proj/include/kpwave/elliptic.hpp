#pragma once

namespace kpwave {

// Elliptic modulus k (not the parameter m = k^2), 0 <= k < 1.
class EllipticModulus {
 public:
  explicit EllipticModulus(double k);
  double k() const { return k_; }
  double complementary() const;  // k' = sqrt(1 - k^2)

 private:
  double k_;
};

struct JacobiValues {
  double sn;
  double cn;
  double dn;
};

// Arithmetic-geometric mean of a, b > 0.
double agm(double a, double b);

// sn, cn, dn by the descending Landen (AGM) scale.
JacobiValues jacobi_elliptic(double x, EllipticModulus m);

// Complete elliptic integrals of the first and second kind via the AGM.
double complete_K(EllipticModulus m);
double complete_E(EllipticModulus m);

}  // namespace kpwave
