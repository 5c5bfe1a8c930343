#include <doctest.h>

#include <cmath>

#include "kpwave/asymptotics.hpp"
#include "kpwave/error.hpp"
#include "../waves.hpp"

using namespace kpwave;
using namespace kpwave::testing;

namespace {

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

TEST_SUITE("asymptotics") {
  TEST_CASE("high-frequency verdict follows sigma") {
    for (int sigma : {1, -1}) {
      const WaveProfile prof = integrate_profile(kdv_wave(sigma), 1024);
      for (double k : {0.3, 0.5, 0.8}) {
        const HighFreqReport r = high_freq_sign(prof, k, {25.0, 50.0, 100.0, 200.0});
        CHECK(r.conclusive);
        CHECK(r.verdict == sigma);
        for (const auto& p : r.probes)
          if (p.mu >= r.onset_mu) CHECK(p.sign == r.verdict);
        CHECK(r.fit_beta > 0.0);
      }
    }
  }

  TEST_CASE("high-frequency guards") {
    const WaveProfile prof = integrate_profile(kdv_wave(), 512);
    CHECK(code_of([&] { high_freq_sign(prof, 0.0, {25.0, 50.0}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { high_freq_sign(prof, 0.5, {50.0, 25.0}); }) == ErrorCode::InvalidArgument);
    CHECK_FALSE(high_freq_sign(prof, 0.5, {50.0, 100.0}).conclusive);
  }

  TEST_CASE("low-frequency coefficient") {
    const LowFreqReport a = low_freq_coefficient(integrate_profile(kdv_wave(1), 1024));
    const LowFreqReport b = low_freq_coefficient(integrate_profile(kdv_wave(-1), 1024));
    CHECK(a.predicted_c4 < 0.0);
    CHECK(a.relative_error <= 5e-3);
    CHECK(a.predicted_c4 == b.predicted_c4);
    CHECK(a.fitted_c4 == doctest::Approx(b.fitted_c4).epsilon(5e-3));
    const std::vector<double> small{0.02, 0.03, 0.04, 0.05}, large{0.1, 0.15, 0.2, 0.3};
    const WaveProfile prof = integrate_profile(kdv_wave(), 1024);
    CHECK(low_freq_coefficient(prof, small).relative_error < low_freq_coefficient(prof, large).relative_error);
    CHECK(code_of([&] { low_freq_coefficient(prof, {0.04, 0.08, 0.16}); }) == ErrorCode::FitIllConditioned);
    CHECK(code_of([&] { low_freq_coefficient(prof, {0.04, -0.04, 0.08, 0.16}); }) == ErrorCode::FitIllConditioned);
  }

  TEST_CASE("orientation index") {
    for (const WaveParams& p : kdv_points())
      CHECK(orientation_index(p).conclusion == IndexVerdict::Conclusion::UnstableDetected);
    CHECK(orientation_index(kdv_wave(-1)).conclusion == IndexVerdict::Conclusion::IndexInconclusive);
    CHECK(orientation_index(mkdv_dnoidal(1)).conclusion == IndexVerdict::Conclusion::UnstableDetected);
    CHECK(orientation_index(mkdv_cnoidal(-1)).conclusion == IndexVerdict::Conclusion::UnstableDetected);
    CHECK(orientation_index(mkdv_cnoidal(1)).conclusion == IndexVerdict::Conclusion::IndexInconclusive);
    CHECK(std::string(to_string(IndexVerdict::Conclusion::DegenerateJacobian)) == "DegenerateJacobian");
  }

  TEST_CASE("principal part diagonalization") {
    const Eigen::Matrix4cd Q = diagonalizer();
    const Eigen::Matrix4cd D = Q.inverse() * principal_part() * Q;
    Eigen::Matrix4cd want = Eigen::Matrix4cd::Zero();
    want(0, 0) = -1.0;
    want(1, 1) = omega();
    want(2, 2) = std::conj(omega());
    CHECK((D - want).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(std::abs(omega() * omega() * omega() + 1.0) < 1e-15);
  }

  TEST_CASE("block reduction report") {
    const WaveProfile prof = integrate_profile(kdv_wave(), 1024);
    const BlockReductionReport r = verify_block_reduction(prof, 25.0, 0.5);
    CHECK(r.avg_A1x <= 1e-10);
    CHECK(r.avg_A1A1x <= 1e-10);
    REQUIRE(r.levels.size() == 2);
    for (const auto& l : r.levels) {
      CHECK(l.bottom_row < 1e-12);
      CHECK(l.last_column < 1e-12);
      CHECK(l.upper_left < 10.0);
    }
    // lower-left block of the first-order-corrected conjugation drops one order faster than the literal one
    CHECK(r.slope_lower_left_first > r.slope_lower_left + 0.5);
    CHECK(code_of([&] { verify_block_reduction(prof, 10.0, 0.5); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("reduced block system factorizes the Evans function") {
    const WaveProfile prof = integrate_profile(kdv_wave(), 1024);
    const BlockSystem sys = reduced_block_system(prof, 25.0, 0.5);
    TrackingOptions o;
    o.allow_dichotomy = true;
    const Conjugator c = solve_conjugator(sys, o);
    const FactorizationReport f = evans_factorization(sys, triangularized_blocks(sys, c));
    const cplx direct = evans(prof, 25.0, 0.5).value();
    CHECK(std::abs(f.block1 * f.block2 - direct) < 1e-8 * std::abs(direct));
    const double predicted = -0.25 * prof.period() / 25.0;
    CHECK(f.block2.real() == doctest::Approx(predicted).epsilon(0.1));
    CHECK(code_of([&] { solve_conjugator(sys); }) == ErrorCode::GapViolation);
  }
}
