// Acceptance suite: one PASS/FAIL line per criterion. With an argument only
// that criterion runs; the exit status is nonzero when any selected one fails.
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kpwave/asymptotics.hpp"
#include "kpwave/conserved.hpp"
#include "kpwave/elliptic.hpp"
#include "kpwave/evans.hpp"
#include "kpwave/kernel.hpp"
#include "kpwave/tracking.hpp"
#include "kpwave/wave.hpp"
#include "waves.hpp"

using namespace kpwave;
using namespace kpwave::testing;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char b[128];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

class Detail {
 public:
  template <class T>
  Detail& operator<<(const T& v) {
    os_ << v;
    return *this;
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

std::string sci(double v) { return fmt("%.3e", v); }

WaveProfile kdv_profile(int sigma = 1) { return integrate_profile(kdv_wave(sigma), 1024); }

Outcome c1_det() {
  const WaveProfile prof = kdv_profile();
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> mu(-50.0, 50.0), k(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 24; ++i) worst = std::max(worst, std::abs(monodromy(prof, mu(rng), k(rng)).det - 1.0));
  return {worst <= 1e-8, "24 random points, max |det M - 1| = " + sci(worst)};
}

Outcome c2_evenness() {
  const WaveProfile prof = kdv_profile();
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> mu(0.1, 50.0), k(0.05, 1.0);
  double worst = 0.0, worst_k = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double m = mu(rng), kk = k(rng);
    const cplx a = evans(prof, m, kk).value(), b = evans(prof, -m, kk).value();
    worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
    worst_k = std::max(worst_k, std::abs(a - evans(prof, m, -kk).value()));
  }
  return {worst <= 1e-8 && worst_k == 0.0,
          "max |D(mu)-D(-mu)|/max(1,|D|) = " + sci(worst) + ", max |D(k)-D(-k)| = " + sci(worst_k)};
}

Outcome c3_translation() {
  const double d = std::abs(evans(kdv_profile(), 0.0, 0.0).value());
  return {d <= 1e-7, "|D(0,0,1)| = " + sci(d)};
}

Outcome c4_low_freq() {
  bool ok = true;
  Detail d;
  for (const auto& [name, p] : {std::pair{"kdv", kdv_wave()}, std::pair{"mkdv-dn", mkdv_dnoidal()}}) {
    WaveParams pm = p;
    pm.sigma = -p.sigma;
    const LowFreqReport a = low_freq_coefficient(integrate_profile(p, 1024));
    const LowFreqReport b = low_freq_coefficient(integrate_profile(pm, 1024));
    const double sig = std::abs(a.fitted_c4 - b.fitted_c4) / std::abs(a.fitted_c4);
    ok = ok && a.relative_error <= 5e-3 && b.relative_error <= 5e-3 && sig <= 5e-3;
    d << name << ": c4 " << fmt("%.6g", a.fitted_c4) << " vs " << fmt("%.6g", a.predicted_c4) << " rel "
      << sci(a.relative_error) << ", sigma-flip " << sci(sig) << "; ";
  }
  return {ok, d.str()};
}

Outcome c5_high_freq() {
  bool ok = true;
  Detail d;
  for (int sigma : {1, -1}) {
    const WaveProfile prof = kdv_profile(sigma);
    for (double k : {0.3, 0.5}) {
      const HighFreqReport r = high_freq_sign(prof, k, {50.0, 100.0, 200.0});
      for (const auto& pr : r.probes) ok = ok && pr.sign == sigma;
      d << "sigma " << sigma << " k " << k << " verdict " << r.verdict << "; ";
    }
  }
  return {ok, d.str()};
}

Outcome c6_triangle() {
  bool ok = true;
  Detail d;
  std::vector<double> grid{0.0};
  for (int i = 0; i < 40; ++i) grid.push_back(1e-3 * std::pow(2e5, i / 39.0));
  for (const auto& [name, p] : {std::pair{"kdv+", kdv_wave(1)}, std::pair{"mkdv-dn+", mkdv_dnoidal(1)},
                                std::pair{"mkdv-cn-", mkdv_cnoidal(-1)}}) {
    const IndexVerdict v = orientation_index(p);
    const ScanReport r = evans_scan(integrate_profile(p, 1024), grid, 0.1);
    const RootBracket* best = nullptr;
    for (const auto& b : r.roots)
      if (b.root > 0.0 && (!best || b.width < best->width)) best = &b;
    const bool good = v.conclusion == IndexVerdict::Conclusion::UnstableDetected && best && best->width <= 1e-6;
    ok = ok && good;
    d << name << ": " << to_string(v.conclusion);
    if (best) d << ", mu* = " << fmt("%.8g", best->root) << " width " << sci(best->width);
    d << "; ";
  }
  return {ok, d.str()};
}

Outcome c7_kdv_closed_form() {
  bool ok = true;
  double worst = 0.0;
  for (const WaveParams& p : kdv_points()) {
    const double fd = jacobian_TM(p), cf = kdv_jacobian_closed_form(p);
    worst = std::max(worst, std::abs(cf - fd) / std::abs(fd));
    ok = ok && cf > 0.0;
  }
  return {ok && worst <= 1e-5, "5 points, max rel diff " + sci(worst) + (ok ? ", all positive" : ", sign failure")};
}

Outcome c8_gradient_identity() {
  double worst = 0.0;
  for (const WaveParams& p : kdv_points()) {
    const GradientSet g = gradients(p);
    const Grad3 r = gradient_identity(p, g);
    worst = std::max(worst, std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]) / gradient_identity_scale(p, g));
  }
  return {worst <= 1e-6, "5 points, max |identity|/scale = " + sci(worst)};
}

Outcome c9_kernel() {
  const WaveParams p = kdv_wave();
  const WaveProfile prof = integrate_profile(p, 1024);
  const KernelBasis b = phi_solution(prof, variational_solutions(prof));
  const KernelResiduals r = kernel_residuals(prof, b);
  const double res = std::max({r.ux, r.ua, r.uE, r.phi});
  const GradientSet g = gradients(p);
  const Eigen::Matrix4d dW = build_W(b).dW;
  const DeltaWInputs in = delta_w_inputs(b, g.dT[0], g.dT[1]);
  const double corrected = delta_w_mismatch(delta_w_display(in, false), dW);
  const double verbatim = delta_w_mismatch(delta_w_display(in, true), dW);
  return {res <= 1e-6 && corrected <= 1e-6, "residual " + sci(res) + ", delta W vs display " + sci(corrected) +
                                                " (as printed: " + sci(verbatim) + ")"};
}

Outcome c10_appendix_b() {
  const WaveProfile prof = kdv_profile();
  const AppendixBReport r = verify_appendix_b(phi_solution(prof, variational_solutions(prof)));
  return {r.inverse_column <= 1e-7, "sup |W y - e4| = " + sci(r.inverse_column)};
}

Outcome c11_block_reduction() {
  const BlockReductionReport r = verify_block_reduction(kdv_profile(), 25.0, 0.5);
  const bool q = r.q_diagonal_error <= 1e-14;
  const bool avg = r.avg_A1x <= 1e-10 && r.avg_A1A1x <= 1e-10;
  const bool slope = std::abs(r.slope_lower_left - 3.0) <= 0.2 * 3.0;
  Detail d;
  d << "Q " << sci(r.q_diagonal_error) << (q ? " ok" : " bad") << ", averages " << sci(r.avg_A1x) << "/"
    << sci(r.avg_A1A1x) << (avg ? " ok" : " bad") << ", lower-left slope " << fmt("%.3f", r.slope_lower_left)
    << " (want 3; first-order S gives " << fmt("%.3f", r.slope_lower_left_first) << ")";
  return {q && avg && slope, d.str()};
}

Eigen::MatrixXcd m1x1(std::complex<double> v) {
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = v;
  return m;
}

Outcome c12_tracking() {
  BlockSystem s;
  s.period = 1.0;
  s.M1 = [](double) { return m1x1(1.0); };
  s.M2 = [](double) { return m1x1(-1.0); };
  s.N = [](double) { return m1x1(1.0); };
  s.Theta = [](double) { return m1x1(1.0); };
  s.delta = [](double) { return 0.1; };
  s.eta = [](double) { return 2.0; };
  const Conjugator c = solve_conjugator(s);
  const double quad_err = std::abs(c(0.3)(0, 0) - (std::sqrt(1.1) - 1.0));

  BlockSystem f = s;
  const double eps = 0.1, T = 2.0, w = 2.0 * std::numbers::pi / T;
  f.period = T;
  f.N = [](double) { return m1x1(0.0); };
  f.delta = [=](double x) { return eps * std::cos(w * x); };
  const Conjugator cf = solve_conjugator(f);
  double fourier = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = T * i / 200;
    const std::complex<double> ex = eps * std::exp(std::complex<double>(0.0, w * x)) / std::complex<double>(2.0, w);
    fourier = std::max(fourier, std::abs(cf(x)(0, 0) - ex.real()));
  }

  BlockSystem g;
  g.period = 2.0 * std::numbers::pi;
  g.n1 = 2;
  g.n2 = 1;
  g.M1 = [](double x) {
    Eigen::MatrixXcd m(2, 2);
    m << 2.0, std::sin(x), 0.0, 3.0;
    return m;
  };
  g.M2 = [](double x) { return m1x1(-1.0 + 0.3 * std::cos(x)); };
  g.N = [](double x) {
    Eigen::MatrixXcd m(2, 1);
    m << 0.2, 0.1 * std::cos(x);
    return m;
  };
  g.Theta = [](double x) {
    Eigen::MatrixXcd m(1, 2);
    m << std::cos(x), 1.0;
    return m;
  };
  g.delta = [](double) { return 0.05; };
  g.eta = [](double) { return 1.0; };
  const Conjugator cg = solve_conjugator(g);
  const TriangularBlocks tri = triangularized_blocks(g, cg);
  const FactorizationReport fr = evans_factorization(g, tri);

  const double residual = std::max({c.residual, cf.residual, cg.residual, tri.residual});
  const double periodic = std::max({c.periodicity, cf.periodicity, cg.periodicity});
  const bool ok = quad_err <= 1e-12 && fourier <= 1e-10 && residual <= 1e-10 && periodic <= 1e-10 &&
                  fr.rel_error <= 1e-10;
  Detail d;
  d << "fixed point " << sci(quad_err) << ", fourier " << sci(fourier) << ", residual " << sci(residual)
    << ", periodicity " << sci(periodic) << ", factorization " << sci(fr.rel_error);
  return {ok, d.str()};
}

Outcome c13_elliptic() {
  double ident = 0.0;
  for (double k : {0.0, 0.3, 0.7, 0.95, 0.999})
    for (int i = 0; i <= 200; ++i) {
      const JacobiValues v = jacobi_elliptic(-10.0 + 0.1 * i, EllipticModulus(k));
      ident = std::max({ident, std::abs(v.sn * v.sn + v.cn * v.cn - 1.0),
                        std::abs(v.dn * v.dn + k * k * v.sn * v.sn - 1.0)});
    }
  double dist = 0.0, period = 0.0;
  for (const auto& [u0, kappa, k] : {std::tuple{0.1, 1.0, 0.8}, std::tuple{3.0, 1.0, 0.5}, std::tuple{0.5, 1.2, 0.9}}) {
    const EllipticModulus m(k);
    const WaveProfile cn = cnoidal_wave(u0, kappa, m, 1024);
    dist = std::max(dist, profile_distance(cn, integrate_profile(cn.params(), 1024)));
    const double want = 2.0 * complete_K(m) / kappa;
    period = std::max(period, std::abs(compute_period(cn.params()) - want) / want);
  }
  Detail d;
  d << "identities " << sci(ident) << ", cnoidal vs ODE " << sci(dist) << ", period " << sci(period);
  return {ident <= 1e-12 && dist <= 1e-8 && period <= 1e-10, d.str()};
}

Outcome c14_jensen() {
  std::vector<WaveParams> waves = kdv_points();
  waves.push_back(mkdv_dnoidal());
  waves.push_back(mkdv_cnoidal());
  waves.push_back(mkdv_dnoidal().with(0.0, -0.6, 1.0));
  waves.push_back(mkdv_cnoidal().with(0.0, 1.5, 1.0));
  double margin = INFINITY;
  for (const WaveParams& p : waves) {
    const InvariantSet inv = compute_invariants(p);
    margin = std::min(margin, inv.jensen_gap() / (inv.P * inv.T));
  }
  return {margin > 0.0, std::to_string(waves.size()) + " waves, min (PT - M^2)/(PT) = " + sci(margin)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"monodromy determinant", c1_det},
      {"evenness", c2_evenness},
      {"translation-mode zero", c3_translation},
      {"low-frequency coefficient", c4_low_freq},
      {"high-frequency sign", c5_high_freq},
      {"consistency triangle", c6_triangle},
      {"KdV closed-form Jacobian", c7_kdv_closed_form},
      {"gradient identity", c8_gradient_identity},
      {"kernel residuals and delta W", c9_kernel},
      {"inverse column identity", c10_appendix_b},
      {"block-reduction structure", c11_block_reduction},
      {"tracking lemma", c12_tracking},
      {"elliptic layer", c13_elliptic},
      {"Jensen positivity", c14_jensen},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (only && only != id) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str());
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
