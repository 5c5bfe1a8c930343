#include "kpwave/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "kpwave/conserved.hpp"
#include "kpwave/error.hpp"
#include "kpwave/evans.hpp"
#include "kpwave/kernel.hpp"
#include "kpwave/parallel.hpp"
#include "kpwave/tracking.hpp"

namespace kpwave {

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

class Suite {
 public:
  explicit Suite(double scale) : scale_(scale) {}

  void at_most(const std::string& name, double threshold, const std::function<double()>& f) {
    run(name, threshold * scale_, Check::Kind::AtMost, f);
  }
  void greater(const std::string& name, double threshold, const std::function<double()>& f) {
    run(name, threshold, Check::Kind::GreaterThan, f);
  }

  void failed(const std::string& name, const std::string& note) {
    checks.push_back({name, std::numeric_limits<double>::quiet_NaN(), 0.0, Check::Kind::AtMost, false, note});
  }

  std::vector<Check> checks;

 private:
  void run(const std::string& name, double threshold, Check::Kind kind, const std::function<double()>& f) {
    Check c{name, std::numeric_limits<double>::quiet_NaN(), threshold, kind, false, {}};
    try {
      c.measured = f();
      c.pass = kind == Check::Kind::AtMost ? c.measured <= threshold : c.measured > threshold;
    } catch (const Error& e) {
      c.note = e.what();
    }
    checks.push_back(std::move(c));
  }

  double scale_;
};

}  // namespace

VerifyReport run_verification(const WaveProfile& profile, const Tolerances& tol, double threshold_scale,
                              unsigned threads) {
  if (!(threshold_scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "threshold scale must be positive");
  const WaveParams& p = profile.params();
  const QuadratureOptions quad = tol.quadrature();
  MonodromyOptions mopt;
  mopt.ode_tol = tol.ode;
  Suite s(threshold_scale);
  VerifyReport rep;

  s.at_most("energy_residual", 1e-10, [&] { return profile.energy_residual(); });

  s.at_most("monodromy_det", 1e-8, [&] {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> mu_d(-50.0, 50.0), k_d(-1.0, 1.0);
    std::vector<std::pair<double, double>> pts(8);
    for (auto& pt : pts) pt = {mu_d(rng), k_d(rng)};
    const auto errs = parallel_map(pts.size(), threads, [&](std::size_t i) {
      return std::abs(monodromy(profile, pts[i].first, pts[i].second, mopt).det - 1.0);
    });
    return *std::max_element(errs.begin(), errs.end());
  });

  s.at_most("evenness_mu", 1e-8, [&] {
    const std::vector<std::pair<double, double>> pts = {{0.5, 0.2}, {3.0, 0.7}, {10.0, 0.3}, {30.0, 1.0}, {50.0, 0.5}};
    const auto errs = parallel_map(pts.size(), threads, [&](std::size_t i) {
      const cplx a = evans(profile, pts[i].first, pts[i].second, 1.0, mopt).value();
      const cplx b = evans(profile, -pts[i].first, pts[i].second, 1.0, mopt).value();
      return std::abs(a - b) / std::max(1.0, std::abs(a));
    });
    return *std::max_element(errs.begin(), errs.end());
  });

  s.at_most("evenness_k", 0.0, [&] {
    const cplx a = evans(profile, 7.0, 0.4, 1.0, mopt).value();
    const cplx b = evans(profile, 7.0, -0.4, 1.0, mopt).value();
    return std::abs(a - b);
  });

  s.at_most("translation_zero", 1e-7, [&] { return std::abs(evans(profile, 0.0, 0.0, 1.0, mopt).value()); });

  GradientSet g{};
  bool have_g = false;
  s.at_most("gradient_identity", 1e-6, [&] {
    g = gradients(p, 1e-4, quad);
    have_g = true;
    const Grad3 r = gradient_identity(p, g);
    return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]) / gradient_identity_scale(p, g);
  });

  if (p.nonlinearity.is_kdv())
    s.at_most("kdv_closed_form_jacobian", 1e-5, [&] {
      const double fd = jacobian_TM(p, 1e-4, quad);
      return std::abs(kdv_jacobian_closed_form(p, quad) - fd) / std::abs(fd);
    });

  s.greater("jensen_gap", 0.0, [&] { return compute_invariants(p, quad).jensen_gap(); });

  std::optional<KernelBasis> basis;
  try {
    basis = phi_solution(profile, variational_solutions(profile, tol), tol);
  } catch (const Error& e) {
    s.failed("kernel_basis", e.what());
  }
  if (basis) {
    const KernelResiduals kr = kernel_residuals(profile, *basis);
    const double kt = tol.kernel / 1e-6;
    s.at_most("kernel_residual_ux", 1e-6 * kt, [&] { return kr.ux; });
    s.at_most("kernel_residual_ua", 1e-6 * kt, [&] { return kr.ua; });
    s.at_most("kernel_residual_uE", 1e-6 * kt, [&] { return kr.uE; });
    s.at_most("kernel_residual_phi", 1e-6 * kt, [&] { return kr.phi; });
    s.at_most("delta_w_display", 1e-6, [&] {
      if (!have_g) g = gradients(p, 1e-4, quad);
      const Eigen::Matrix4d want = build_W(*basis).dW;
      const Eigen::Matrix4d got = delta_w_display(delta_w_inputs(*basis, g.dT[0], g.dT[1]), false);
      return delta_w_mismatch(got, want);
    });
    s.at_most("inverse_column", 1e-7, [&] { return verify_appendix_b(*basis).inverse_column; });
  }

  s.at_most("low_freq_c4", 5e-3, [&] { return low_freq_coefficient(profile, default_k_ladder(), mopt, quad, threads).relative_error; });

  s.at_most("high_freq_sign_mismatches", 0.0, [&] {
    double bad = 0.0;
    for (double k : {0.3, 0.5}) {
      const HighFreqReport h = high_freq_sign(profile, k, {50.0, 100.0, 200.0}, mopt, threads);
      for (const auto& pr : h.probes) bad += pr.sign != p.sigma;
    }
    return bad;
  });

  std::optional<BlockReductionReport> br;
  try {
    br = verify_block_reduction(profile, 25.0, 0.5);
  } catch (const Error& e) {
    s.failed("block_reduction", e.what());
  }
  if (br) {
    s.at_most("block_q_diagonal", 1e-14, [&] { return br->q_diagonal_error; });
    s.at_most("block_avg_A1x", 1e-10, [&] { return br->avg_A1x; });
    s.at_most("block_avg_A1A1x", 1e-10, [&] { return br->avg_A1A1x; });
    s.at_most("block_lower_left_order", 0.2, [&] { return std::abs(br->slope_lower_left - 3.0) / 3.0; });
  }

  {
    std::optional<Conjugator> cj;
    std::optional<BlockSystem> sys;
    s.at_most("tracking_fixed_point", 1e-10, [&] {
      sys = reduced_block_system(profile, 25.0, 0.5);
      TrackingOptions to;
      to.allow_dichotomy = true;
      cj = solve_conjugator(*sys, to);
      return cj->residual;
    });
    if (cj) {
      s.at_most("tracking_periodicity", 1e-10, [&] { return cj->periodicity; });
      s.at_most("tracking_factorization", 1e-8, [&] {
        const FactorizationReport f = evans_factorization(*sys, triangularized_blocks(*sys, *cj));
        const cplx direct = evans(profile, 25.0, 0.5, 1.0, mopt).value();
        return std::max(f.rel_error, std::abs(f.block1 * f.block2 - direct) / std::abs(direct));
      });
    }
  }

  try {
    rep.index = orientation_index(p, 1e-4, quad);
  } catch (const Error& e) {
    s.failed("orientation_index", e.what());
  }
  if (rep.index && rep.index->conclusion == IndexVerdict::Conclusion::UnstableDetected)
    s.at_most("consistency_root_width", 1e-6, [&] {
      std::vector<double> grid{0.0};
      for (int i = 0; i < 40; ++i) grid.push_back(1e-3 * std::pow(2e5, i / 39.0));
      ScanOptions so;
      so.monodromy = mopt;
      so.threads = threads;
      const ScanReport sr = evans_scan(profile, grid, 0.1, 1.0, so);
      double w = std::numeric_limits<double>::infinity();
      for (const auto& r : sr.roots)
        if (r.root > 0.0) w = std::min(w, r.width);
      return w;
    });

  rep.checks = std::move(s.checks);
  return rep;
}

}  // namespace kpwave
