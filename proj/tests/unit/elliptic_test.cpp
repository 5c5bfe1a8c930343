#include <doctest.h>

#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/ellint_2.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>
#include <numbers>

#include "kpwave/elliptic.hpp"
#include "kpwave/error.hpp"
#include "kpwave/wave.hpp"

using namespace kpwave;

TEST_SUITE("elliptic") {
  TEST_CASE("degenerate modulus is trigonometric") {
    for (double x : {-2.0, 0.0, 0.4, 3.0}) {
      const auto v = jacobi_elliptic(x, EllipticModulus(0.0));
      CHECK(v.sn == doctest::Approx(std::sin(x)).epsilon(1e-14));
      CHECK(v.cn == doctest::Approx(std::cos(x)).epsilon(1e-14));
      CHECK(v.dn == 1.0);
    }
  }

  TEST_CASE("values at zero") {
    for (double k : {0.1, 0.5, 0.9}) {
      const auto v = jacobi_elliptic(0.0, EllipticModulus(k));
      CHECK(v.sn == 0.0);
      CHECK(v.cn == 1.0);
      CHECK(v.dn == 1.0);
    }
  }

  TEST_CASE("against Boost.Math") {
    for (double k : {0.2, 0.5, 0.8, 0.99})
      for (double x : {-3.1, 0.3, 1.7, 5.5}) {
        double cn, dn;
        const double sn = boost::math::jacobi_elliptic(k, x, &cn, &dn);
        const auto v = jacobi_elliptic(x, EllipticModulus(k));
        CHECK(std::abs(v.sn - sn) < 1e-13);
        CHECK(std::abs(v.cn - cn) < 1e-13);
        CHECK(std::abs(v.dn - dn) < 1e-13);
      }
    for (double k : {0.0, 0.3, 0.5, 0.9, 0.999}) {
      CHECK(complete_K(EllipticModulus(k)) == doctest::Approx(boost::math::ellint_1(k)).epsilon(1e-14));
      CHECK(complete_E(EllipticModulus(k)) == doctest::Approx(boost::math::ellint_2(k)).epsilon(1e-14));
    }
    CHECK(complete_K(EllipticModulus(0.0)) == doctest::Approx(std::numbers::pi / 2));
  }

  TEST_CASE("agm") {
    CHECK(agm(1.0, 1.0) == 1.0);
    CHECK(agm(1.0, std::sqrt(2.0)) == doctest::Approx(1.19814023473559220744));
  }

  TEST_CASE("modulus range") {
    CHECK_THROWS_AS(EllipticModulus(1.0), Error);
    CHECK_THROWS_AS(EllipticModulus(-0.1), Error);
  }

  TEST_CASE("cnoidal wave") {
    const EllipticModulus m(0.8);
    const WaveProfile cn = cnoidal_wave(0.1, 1.0, m, 1024);
    CHECK(cn.period() == doctest::Approx(2.0 * complete_K(m)).epsilon(1e-12));
    CHECK(profile_distance(cn, integrate_profile(cn.params(), 1024)) < 1e-8);
    CHECK_THROWS_AS(cnoidal_wave(0.1, 1.0, EllipticModulus(0.0), 256), Error);
    const WaveProfile flat = cnoidal_wave(5.0, 1.0, EllipticModulus(1e-3), 256);
    CHECK(flat.u_plus() - flat.u_minus() < 1e-4);
  }
}
