#include "kpwave/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kpwave/error.hpp"
#include "kpwave/ode.hpp"

namespace kpwave {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

Eigen::MatrixXcd BlockSystem::full(double x) const {
  Eigen::MatrixXcd A(n1 + n2, n1 + n2);
  A.topLeftCorner(n1, n1) = M1(x);
  A.topRightCorner(n1, n2) = N(x);
  A.bottomLeftCorner(n2, n1) = delta(x) * Theta(x);
  A.bottomRightCorner(n2, n2) = M2(x);
  return A;
}

void BlockSystem::validate() const {
  if (!(period > 0.0) || n1 < 1 || n2 < 1)
    throw Error(ErrorCode::InvalidArgument, "block system needs a positive period and block sizes");
  if (!M1 || !M2 || !N || !Theta || !delta || !eta)
    throw Error(ErrorCode::InvalidArgument, "block system has an unset coefficient");
  const auto A = full(0.0);
  if (A.rows() != n1 + n2 || A.cols() != n1 + n2)
    throw Error(ErrorCode::InvalidArgument, "block coefficient sizes disagree with n1, n2");
}

namespace {

Eigen::VectorXd hermitian_spectrum(const Eigen::MatrixXcd& A) {
  const Eigen::MatrixXcd H = 0.5 * (A + A.adjoint());
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(H, Eigen::EigenvaluesOnly).eigenvalues();
}

double max_abs(const Eigen::MatrixXcd& A) { return A.size() ? A.cwiseAbs().maxCoeff() : 0.0; }

// Integrates the linear system y' = A(x) y + r(x) for an m x k block of
// columns, recording at the given increasing times (times[0] is the start).
std::vector<Eigen::MatrixXcd> integrate_linear(const MatFn& A, const std::function<Eigen::MatrixXcd(double)>* r,
                                               const Eigen::MatrixXcd& Y0, const std::vector<double>& times,
                                               double tol) {
  const int m = static_cast<int>(Y0.rows()), k = static_cast<int>(Y0.cols());
  CVec s(Y0.data(), Y0.data() + Y0.size());
  auto rhs = [&](const CVec& y, CVec& dy, double x) {
    dy.resize(y.size());
    Eigen::Map<const Eigen::MatrixXcd> Y(y.data(), m, k);
    Eigen::Map<Eigen::MatrixXcd> dY(dy.data(), m, k);
    dY = A(x) * Y;
    if (r) dY += (*r)(x);
  };
  const auto states = ode::integrate_at(rhs, s, times, {tol, tol});
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(states.size());
  for (const auto& st : states) out.push_back(Eigen::Map<const Eigen::MatrixXcd>(st.data(), m, k));
  return out;
}

Eigen::VectorXcd vec(const Eigen::MatrixXcd& M) { return Eigen::Map<const Eigen::VectorXcd>(M.data(), M.size()); }

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, int rows, int cols) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), rows, cols);
}

}  // namespace

GapReport check_gap(const BlockSystem& sys, int samples) {
  sys.validate();
  GapReport g{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i < samples; ++i) {
    const double x = sys.period * i / samples;
    const Eigen::VectorXd s1 = hermitian_spectrum(sys.M1(x));
    const Eigen::VectorXd s2 = hermitian_spectrum(sys.M2(x));
    const double eta = sys.eta(x);
    g.min_gap = std::min(g.min_gap, s1.minCoeff() - s2.maxCoeff() - eta);
    for (double a : s1)
      for (double b : s2) g.min_separation = std::min(g.min_separation, std::abs(a - b));
    if (!(eta > 0.0)) throw Error(ErrorCode::GapViolation, "eta must be positive");
    g.sup_delta_over_eta = std::max(g.sup_delta_over_eta, std::abs(sys.delta(x)) / eta);
  }
  return g;
}

Conjugator::Conjugator(double period, int n2, int n1, std::vector<Eigen::MatrixXcd> samples)
    : period_(period), n2_(n2), n1_(n1), samples_(std::move(samples)) {
  const int N = static_cast<int>(samples_.size());
  if (N < 2 || N % 2) throw Error(ErrorCode::InvalidArgument, "conjugator needs an even node count");
  coeffs_.assign(N + 1, Eigen::MatrixXcd::Zero(n2, n1));
  for (int m = -N / 2; m <= N / 2; ++m) {
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n2, n1);
    for (int j = 0; j < N; ++j)
      c += samples_[j] * std::polar(1.0, -2.0 * std::numbers::pi * m * j / N);
    c /= N;
    if (std::abs(m) == N / 2) c *= 0.5;
    coeffs_[m + N / 2] = c;
  }
}

Eigen::MatrixXcd Conjugator::operator()(double x) const {
  const int N = static_cast<int>(samples_.size());
  const double w = 2.0 * std::numbers::pi / period_;
  const cplx step = std::polar(1.0, w * x);
  cplx e = std::polar(1.0, -w * x * (N / 2));
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(n2_, n1_);
  for (int m = -N / 2; m <= N / 2; ++m, e *= step) f += coeffs_[m + N / 2] * e;
  return f;
}

Eigen::MatrixXcd Conjugator::derivative(double x) const {
  const int N = static_cast<int>(samples_.size());
  const double w = 2.0 * std::numbers::pi / period_;
  const cplx step = std::polar(1.0, w * x);
  cplx e = std::polar(1.0, -w * x * (N / 2));
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(n2_, n1_);
  for (int m = -N / 2; m <= N / 2; ++m, e *= step) f += coeffs_[m + N / 2] * (cplx(0.0, w * m) * e);
  return f;
}

namespace {

// Periodic solution of b' = -eta b + delta, sampled at the nodes.
std::vector<double> duhamel_bound(const BlockSystem& sys, const std::vector<double>& xs, double tol) {
  using S = std::array<double, 2>;  // (b, int eta)
  auto rhs = [&](const S& s, S& ds, double x) {
    ds[0] = -sys.eta(x) * s[0] + std::abs(sys.delta(x));
    ds[1] = sys.eta(x);
  };
  const S end = ode::integrate(rhs, S{0.0, 0.0}, 0.0, sys.period, {tol, tol});
  const double b0 = end[0] / (1.0 - std::exp(-end[1]));
  const auto st = ode::integrate_at(rhs, S{b0, 0.0}, xs, {tol, tol});
  std::vector<double> b(st.size());
  for (std::size_t i = 0; i < st.size(); ++i) b[i] = st[i][0];
  return b;
}

}  // namespace

Conjugator solve_conjugator(const BlockSystem& sys, const TrackingOptions& opt) {
  sys.validate();
  if (opt.nodes < 4 || opt.nodes % 2) throw Error(ErrorCode::InvalidArgument, "nodes must be even and >= 4");
  const GapReport gap = check_gap(sys, opt.nodes);
  if (!opt.allow_dichotomy && gap.min_gap < 0.0)
    throw Error(ErrorCode::GapViolation, "spectral gap short by " + std::to_string(-gap.min_gap));
  if (opt.allow_dichotomy && !(gap.min_separation > 0.0))
    throw Error(ErrorCode::GapViolation, "blocks share spectrum; no dichotomy");

  const int n1 = sys.n1, n2 = sys.n2, m = n1 * n2, N = opt.nodes;
  const double T = sys.period, h = T / N;

  // Sylvester operator on vec(Phi): vec(M2 Phi - Phi M1) = (I (x) M2 - M1^T (x) I) vec(Phi).
  MatFn L = [&](double x) {
    const Eigen::MatrixXcd M1 = sys.M1(x), M2 = sys.M2(x);
    Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(m, m);
    for (int a = 0; a < n1; ++a)
      for (int b = 0; b < n1; ++b) {
        if (a == b) K.block(a * n2, b * n2, n2, n2) += M2;
        K.block(a * n2, b * n2, n2, n2) -= M1(b, a) * Eigen::MatrixXcd::Identity(n2, n2);
      }
    return K;
  };

  int K = opt.segments;
  if (K <= 0) {
    double rate = 0.0;
    for (int i = 0; i < N; i += std::max(1, N / 32)) rate = std::max(rate, L(i * h).norm());
    K = std::max(1, static_cast<int>(std::ceil(T * rate / 4.0)));
  }
  while (N % K) ++K;
  const int per = N / K;

  // Homogeneous propagators sampled at the nodes of each segment.
  std::vector<std::vector<Eigen::MatrixXcd>> P(K);
  std::vector<std::vector<double>> seg_times(K);
  for (int j = 0; j < K; ++j) {
    for (int s = 0; s <= per; ++s) seg_times[j].push_back((j * per + s) * h);
    seg_times[j].back() = (j == K - 1) ? T : seg_times[j].back();
    P[j] = integrate_linear(L, nullptr, Eigen::MatrixXcd::Identity(m, m), seg_times[j], opt.ode_tol);
  }
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(K * m, K * m);
  for (int j = 0; j < K; ++j) {
    const int next = (j + 1) % K;
    S.block(next * m, next * m, m, m) += Eigen::MatrixXcd::Identity(m, m);
    S.block(next * m, j * m, m, m) -= P[j].back();
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S);
  const auto sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 1e-13 * sv(0)))
    throw Error(ErrorCode::PeriodMapSingular, "I - P is numerically singular");
  const Eigen::FullPivLU<Eigen::MatrixXcd> lu(S);

  std::vector<Eigen::MatrixXcd> phi(N, Eigen::MatrixXcd::Zero(n2, n1));
  Conjugator cur(T, n2, n1, phi);
  std::vector<double> increments;
  double periodicity = 0.0;
  for (int it = 1; it <= opt.max_iter; ++it) {
    std::function<Eigen::MatrixXcd(double)> forcing = [&](double x) {
      const Eigen::MatrixXcd F = cur(x);
      return vec(sys.delta(x) * sys.Theta(x) - F * sys.N(x) * F);
    };
    std::vector<std::vector<Eigen::MatrixXcd>> q(K);
    Eigen::VectorXcd rhs(K * m);
    for (int j = 0; j < K; ++j) {
      q[j] = integrate_linear(L, &forcing, Eigen::MatrixXcd::Zero(m, 1), seg_times[j], opt.ode_tol);
      rhs.segment(((j + 1) % K) * m, m) = q[j].back();
    }
    const Eigen::VectorXcd y = lu.solve(rhs);
    std::vector<Eigen::MatrixXcd> next(N);
    for (int j = 0; j < K; ++j)
      for (int s = 0; s < per; ++s)
        next[j * per + s] = unvec(P[j][s] * y.segment(j * m, m) + q[j][s], n2, n1);
    {
      const Eigen::VectorXcd yT = P[K - 1].back() * y.segment((K - 1) * m, m) + q[K - 1].back();
      periodicity = (yT - y.segment(0, m)).cwiseAbs().maxCoeff();
    }
    double change = 0.0;
    for (int i = 0; i < N; ++i) change = std::max(change, max_abs(next[i] - phi[i]));
    if (!std::isfinite(change)) throw Error(ErrorCode::NoContraction, "fixed point iterate is not finite");
    increments.push_back(change);
    phi = std::move(next);
    cur = Conjugator(T, n2, n1, phi);
    if (change < opt.fp_tol) {
      cur.iterations = it;
      break;
    }
    const std::size_t n = increments.size();
    if (n >= 4 && increments[n - 1] > increments[n - 2] && increments[n - 2] > increments[n - 3] &&
        increments[n - 3] > increments[n - 4])
      throw Error(ErrorCode::NoContraction, "increments growing: " + std::to_string(change));
    if (it == opt.max_iter)
      throw Error(ErrorCode::NoContraction, "no convergence in " + std::to_string(opt.max_iter) + " iterations");
  }

  cur.increments = increments;
  cur.periodicity = periodicity;
  const std::size_t n = increments.size();
  cur.contraction = (n >= 2 && increments[n - 2] > 0.0) ? increments[n - 1] / increments[n - 2] : 0.0;

  double res = 0.0, sup = 0.0;
  for (int i = 0; i < 2 * N; ++i) {
    const double x = 0.5 * h * i;
    const Eigen::MatrixXcd F = cur(x);
    const Eigen::MatrixXcd r = cur.derivative(x) - (sys.M2(x) * F - F * sys.M1(x)) -
                               sys.delta(x) * sys.Theta(x) + F * sys.N(x) * F;
    res = std::max(res, max_abs(r));
    sup = std::max(sup, max_abs(F));
  }
  cur.residual = res;
  cur.norm_bound = sup;
  cur.measured_C = gap.sup_delta_over_eta > 0.0 ? sup / gap.sup_delta_over_eta : 0.0;
  if (gap.min_gap >= 0.0) {
    std::vector<double> xs(N + 1);
    for (int i = 0; i <= N; ++i) xs[i] = i * h;
    const auto b = duhamel_bound(sys, xs, opt.ode_tol);
    double c = 0.0;
    for (int i = 0; i < N; ++i)
      if (b[i] > 0.0) c = std::max(c, max_abs(phi[i]) / b[i]);
    cur.pointwise_C = c;
  }
  return cur;
}

TriangularBlocks triangularized_blocks(const BlockSystem& sys, const Conjugator& phi, double tol, int samples) {
  TriangularBlocks t;
  t.M1 = [sys, phi](double x) -> Eigen::MatrixXcd { return sys.M1(x) + sys.N(x) * phi(x); };
  t.M2 = [sys, phi](double x) -> Eigen::MatrixXcd { return sys.M2(x) - phi(x) * sys.N(x); };
  t.N = sys.N;
  const int n = sys.n1 + sys.n2;
  double res = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = sys.period * (i + 0.5) / samples;
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Identity(n, n), dS = Eigen::MatrixXcd::Zero(n, n);
    S.bottomLeftCorner(sys.n2, sys.n1) = phi(x);
    dS.bottomLeftCorner(sys.n2, sys.n1) = phi.derivative(x);
    Eigen::MatrixXcd At = Eigen::MatrixXcd::Zero(n, n);
    At.topLeftCorner(sys.n1, sys.n1) = t.M1(x);
    At.topRightCorner(sys.n1, sys.n2) = t.N(x);
    At.bottomRightCorner(sys.n2, sys.n2) = t.M2(x);
    res = std::max(res, max_abs(dS + S * At - sys.full(x) * S));
  }
  t.residual = res;
  if (res > tol) throw Error(ErrorCode::ResidualExceeded, "conjugation residual " + std::to_string(res));
  return t;
}

Eigen::MatrixXcd period_map(const MatFn& A, int n, double period, double ode_tol) {
  return integrate_linear(A, nullptr, Eigen::MatrixXcd::Identity(n, n), {0.0, period}, ode_tol).back();
}

FactorizationReport evans_factorization(const BlockSystem& sys, const TriangularBlocks& tri, cplx lambda,
                                        double ode_tol) {
  auto det_shift = [&](const Eigen::MatrixXcd& P) {
    return (P - lambda * Eigen::MatrixXcd::Identity(P.rows(), P.cols())).fullPivLu().determinant();
  };
  MatFn full = [&sys](double x) { return sys.full(x); };
  FactorizationReport r;
  r.full = det_shift(period_map(full, sys.n1 + sys.n2, sys.period, ode_tol));
  r.block1 = det_shift(period_map(tri.M1, sys.n1, sys.period, ode_tol));
  r.block2 = det_shift(period_map(tri.M2, sys.n2, sys.period, ode_tol));
  r.rel_error = std::abs(r.full - r.block1 * r.block2) / std::abs(r.full);
  return r;
}

}  // namespace kpwave
