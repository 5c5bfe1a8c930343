#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kpwave/error.hpp"
#include "kpwave/tracking.hpp"

using namespace kpwave;

namespace {

Eigen::MatrixXcd s1(std::complex<double> v) {
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = v;
  return m;
}

BlockSystem scalar(double delta) {
  BlockSystem s;
  s.period = 1.0;
  s.M1 = [](double) { return s1(1.0); };
  s.M2 = [](double) { return s1(-1.0); };
  s.N = [](double) { return s1(1.0); };
  s.Theta = [](double) { return s1(1.0); };
  s.delta = [=](double) { return delta; };
  s.eta = [](double) { return 2.0; };
  return s;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("tracking") {
  TEST_CASE("zero coupling") {
    const BlockSystem s = scalar(0.0);
    const Conjugator c = solve_conjugator(s);
    CHECK(c.iterations <= 1);
    CHECK(c(0.4).norm() == 0.0);
    const TriangularBlocks t = triangularized_blocks(s, c);
    CHECK(t.M1(0.2)(0, 0) == s.M1(0.2)(0, 0));
    CHECK(t.M2(0.2)(0, 0) == s.M2(0.2)(0, 0));
  }

  TEST_CASE("quadratic fixed point") {
    const BlockSystem s = scalar(0.1);
    const Conjugator c = solve_conjugator(s);
    for (double x : {0.0, 0.3, 0.77}) CHECK(std::abs(c(x)(0, 0) - (std::sqrt(1.1) - 1.0)) <= 1e-12);
    CHECK(c.residual <= 1e-10);
    CHECK(c.periodicity <= 1e-10);
    CHECK(c.contraction < 1.0);
    const TriangularBlocks t = triangularized_blocks(s, c);
    CHECK(t.residual <= 1e-12);
    const FactorizationReport f = evans_factorization(s, t);
    CHECK(f.rel_error <= 1e-10);
  }

  TEST_CASE("Fourier oracle") {
    BlockSystem s = scalar(0.0);
    const double eps = 0.1, T = 2.0, w = 2.0 * std::numbers::pi / T;
    s.period = T;
    s.N = [](double) { return s1(0.0); };
    s.delta = [=](double x) { return eps * std::cos(w * x); };
    const Conjugator c = solve_conjugator(s);
    for (int i = 0; i < 50; ++i) {
      const double x = T * i / 50;
      const auto ex = eps * std::exp(std::complex<double>(0.0, w * x)) / std::complex<double>(2.0, w);
      CHECK(std::abs(c(x)(0, 0) - ex.real()) <= 1e-10);
      const auto dex = std::complex<double>(0.0, w) * ex;
      CHECK(std::abs(c.derivative(x)(0, 0) - dex.real()) <= 1e-9);
    }
  }

  TEST_CASE("gap checks") {
    BlockSystem s = scalar(0.1);
    s.eta = [](double) { return 3.0; };
    const GapReport g = check_gap(s);
    CHECK(g.min_gap == doctest::Approx(-1.0));
    CHECK(g.min_separation == doctest::Approx(2.0));
    CHECK(code_of([&] { solve_conjugator(s); }) == ErrorCode::GapViolation);
    s.M2 = [](double) { return s1(1.0); };
    TrackingOptions o;
    o.allow_dichotomy = true;
    CHECK(code_of([&] { solve_conjugator(s, o); }) == ErrorCode::GapViolation);
  }

  TEST_CASE("strong coupling does not contract") {
    BlockSystem s = scalar(5.0);
    s.eta = [](double) { return 0.5; };
    CHECK(code_of([&] { solve_conjugator(s); }) == ErrorCode::NoContraction);
  }

  TEST_CASE("period map") {
    const MatFn A = [](double x) {
      Eigen::MatrixXcd m(2, 2);
      m << 0.0, 1.0, -1.0 - 0.1 * std::cos(x), 0.0;
      return m;
    };
    const Eigen::MatrixXcd P = period_map(A, 2, 2.0 * std::numbers::pi);
    CHECK(std::abs(P.determinant() - 1.0) < 1e-11);
  }
}
