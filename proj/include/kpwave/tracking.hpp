#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

namespace kpwave {

using MatFn = std::function<Eigen::MatrixXcd(double)>;
using ScalarFn = std::function<double(double)>;

// W' = [[M1, N], [delta Theta, M2]] W, T-periodic, M1 n1 x n1, M2 n2 x n2.
struct BlockSystem {
  double period = 1.0;
  int n1 = 1;
  int n2 = 1;
  MatFn M1, M2, N, Theta;
  ScalarFn delta, eta;

  Eigen::MatrixXcd full(double x) const;
  void validate() const;
};

struct GapReport {
  double min_gap;             // min_x [min spec Re M1 - max spec Re M2 - eta]
  double min_separation;      // min_x min_{i,j} |spec Re M1 - spec Re M2|
  double sup_delta_over_eta;
};

GapReport check_gap(const BlockSystem& sys, int samples = 256);

struct TrackingOptions {
  int max_iter = 200;
  double fp_tol = 1e-13;
  int nodes = 256;            // trigonometric interpolation nodes, even
  int segments = 0;           // multiple-shooting segments; 0 picks from the coefficient size
  double ode_tol = 1e-13;
  bool allow_dichotomy = false;  // accept a two-sided spectral separation instead of the gap
};

// Periodic n2 x n1 conjugator stored as a trigonometric interpolant.
class Conjugator {
 public:
  Conjugator() = default;
  Conjugator(double period, int n2, int n1, std::vector<Eigen::MatrixXcd> samples);

  Eigen::MatrixXcd operator()(double x) const;
  Eigen::MatrixXcd derivative(double x) const;
  const std::vector<Eigen::MatrixXcd>& samples() const { return samples_; }
  double period() const { return period_; }

  int iterations = 0;
  double residual = 0.0;        // sup |Phi' - (M2 Phi - Phi M1) - delta Theta + Phi N Phi|
  double norm_bound = 0.0;      // sup |Phi|
  double measured_C = 0.0;      // sup |Phi| / sup(delta/eta)
  double pointwise_C = 0.0;     // sup |Phi(x)| / int_{-inf}^x e^{-int eta} delta
  double contraction = 0.0;     // last ratio of successive increments
  double periodicity = 0.0;     // |Phi(T) - Phi(0)| from the final shooting pass
  std::vector<double> increments;

 private:
  double period_ = 1.0;
  int n2_ = 0, n1_ = 0;
  std::vector<Eigen::MatrixXcd> samples_;
  std::vector<Eigen::MatrixXcd> coeffs_;  // modes -N/2 .. N/2
};

// Fixed point Phi = L^{-1} Q(Phi), each step a periodic Sylvester problem
// Phi' = M2 Phi - Phi M1 + Q(Phi_prev) solved by multiple shooting.
// Throws GapViolation, PeriodMapSingular, NoContraction.
Conjugator solve_conjugator(const BlockSystem& sys, const TrackingOptions& opt = {});

struct TriangularBlocks {
  MatFn M1, M2, N;
  double residual;  // sup_x |S' + S At - A S|, S = [[I, 0], [Phi, I]]
};

// M1 + N Phi, M2 - Phi N, N. Throws ResidualExceeded above tol.
TriangularBlocks triangularized_blocks(const BlockSystem& sys, const Conjugator& phi, double tol = 1e-9,
                                       int samples = 256);

// Period map of Y' = A(x) Y over [0, period] from Y(0) = I.
Eigen::MatrixXcd period_map(const MatFn& A, int n, double period, double ode_tol = 1e-13);

struct FactorizationReport {
  std::complex<double> full;    // det(P - lambda I)
  std::complex<double> block1;  // det(P1 - lambda I)
  std::complex<double> block2;
  double rel_error;             // |full - block1 block2| / |full|
};

FactorizationReport evans_factorization(const BlockSystem& sys, const TriangularBlocks& tri,
                                        std::complex<double> lambda = 1.0, double ode_tol = 1e-13);

}  // namespace kpwave
