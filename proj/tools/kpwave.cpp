#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "kpwave/asymptotics.hpp"
#include "kpwave/conserved.hpp"
#include "kpwave/error.hpp"
#include "kpwave/evans.hpp"
#include "kpwave/io.hpp"
#include "kpwave/verify.hpp"
#include "kpwave/wave.hpp"

namespace fs = std::filesystem;
using namespace kpwave;

namespace {

enum Exit { kOk = 0, kUsage = 2, kNumerical = 3, kDegenerate = 4, kVerifyFailed = 5, kUnstable = 10 };

struct Common {
  std::string config;
  std::string out = ".";
  unsigned threads = 0;
  double tol_scale = 1.0;
};

struct Loaded {
  ProblemConfig cfg;
  Tolerances tol;
};

Loaded load(const Common& c) {
  Loaded l{load_config(c.config), {}};
  l.tol = l.cfg.tol.scaled(c.tol_scale);
  return l;
}

fs::path out_file(const Common& c, const std::string& name) {
  fs::create_directories(c.out);
  return fs::path(c.out) / name;
}

void write_json(const Common& c, const std::string& name, const Json& j) {
  std::ofstream os(out_file(c, name), std::ios::binary);
  os << j.dump(2) << '\n';
}

template <class F>
void write_text(const Common& c, const std::string& name, F&& f) {
  std::ofstream os(out_file(c, name), std::ios::binary);
  f(os);
}

int cmd_profile(const Common& c) {
  const Loaded l = load(c);
  const WaveProfile prof = integrate_profile(l.cfg.params, l.cfg.grid, l.tol);
  const InvariantSet inv = compute_invariants(l.cfg.params, l.tol.quadrature());
  write_text(c, "profile.csv", [&](std::ostream& os) { write_profile_csv(os, prof); });
  Json j;
  j["params"] = to_json(l.cfg.params);
  j["tolerances"] = to_json(l.tol);
  j["grid"] = l.cfg.grid;
  j["u_minus"] = prof.u_minus();
  j["u_plus"] = prof.u_plus();
  j["period"] = prof.period();
  j["invariants"] = to_json(inv);
  j["energy_residual"] = prof.energy_residual();
  write_json(c, "profile.json", j);
  std::cout << "u- = " << fmt17(prof.u_minus()) << "  u+ = " << fmt17(prof.u_plus()) << "  T = " << fmt17(prof.period())
            << '\n';
  return kOk;
}

int cmd_invariants(const Common& c) {
  const Loaded l = load(c);
  const WaveParams& p = l.cfg.params;
  const QuadratureOptions q = l.tol.quadrature();
  const InvariantSet inv = compute_invariants(p, q);
  const GradientSet g = gradients(p, 1e-4, q);
  const Grad3 id = gradient_identity(p, g);
  const double jac = jacobian_TM(g);
  Json j;
  j["params"] = to_json(p);
  j["invariants"] = to_json(inv);
  j["gradients"] = Json{{"T", g.dT}, {"M", g.dM}, {"P", g.dP}, {"H", g.dH}};
  j["jacobian_TM"] = jac;
  j["gradient_identity"] = id;
  j["gradient_identity_scale"] = gradient_identity_scale(p, g);
  if (p.nonlinearity.is_kdv()) j["kdv_closed_form_jacobian"] = kdv_jacobian_closed_form(p, q);
  write_json(c, "invariants.json", j);
  write_text(c, "invariants.csv", [&](std::ostream& os) {
    write_csv(os, {"a", "E", "c", "T", "M", "P", "H", "jacobian_TM"}, {{p.a, p.E, p.c, inv.T, inv.M, inv.P, inv.H, jac}});
  });
  std::cout << "T = " << fmt17(inv.T) << "  M = " << fmt17(inv.M) << "  {T,M} = " << fmt17(jac) << '\n';
  return kOk;
}

int cmd_scan(const Common& c) {
  const Loaded l = load(c);
  if (!l.cfg.scan) throw Error(ErrorCode::InvalidArgument, "config has no \"scan\" block");
  const ScanConfig& sc = *l.cfg.scan;
  if (sc.high_freq)
    for (double k : sc.high_freq->k)
      if (k == 0.0) throw Error(ErrorCode::InvalidArgument, "high-frequency sign needs k != 0");
  const WaveProfile prof = integrate_profile(l.cfg.params, l.cfg.grid, l.tol);
  ScanOptions so;
  so.monodromy.ode_tol = l.tol.ode;
  so.threads = c.threads;

  Json j;
  j["params"] = to_json(l.cfg.params);
  j["tolerances"] = to_json(l.tol);
  Json scans = Json::array();
  for (std::size_t i = 0; i < sc.k.size() && !sc.mu_grid.empty(); ++i) {
    const ScanReport r = evans_scan(prof, sc.mu_grid, sc.k[i], sc.lambda, so);
    const std::string name = "scan_k" + std::to_string(i) + ".csv";
    write_text(c, name, [&](std::ostream& os) { write_scan_csv(os, r); });
    Json e = to_json(r);
    e["csv"] = name;
    scans.push_back(std::move(e));
    std::cout << "k = " << sc.k[i] << ": " << r.roots.size() << " root(s)";
    for (const auto& b : r.roots) std::cout << "  mu* = " << fmt17(b.root);
    std::cout << '\n';
  }
  j["scans"] = std::move(scans);
  if (sc.high_freq) {
    Json hf = Json::array();
    for (std::size_t i = 0; i < sc.high_freq->k.size(); ++i) {
      const HighFreqReport r = high_freq_sign(prof, sc.high_freq->k[i], sc.high_freq->mu, so.monodromy, c.threads);
      const std::string name = "high_freq_k" + std::to_string(i) + ".csv";
      write_text(c, name, [&](std::ostream& os) { write_high_freq_csv(os, r); });
      Json e = to_json(r);
      e["csv"] = name;
      hf.push_back(std::move(e));
    }
    j["high_freq"] = std::move(hf);
  }
  if (sc.low_freq_k) {
    const LowFreqReport r = low_freq_coefficient(prof, *sc.low_freq_k, so.monodromy, l.tol.quadrature(), c.threads);
    write_text(c, "low_freq.csv", [&](std::ostream& os) { write_low_freq_csv(os, r); });
    j["low_freq"] = to_json(r);
  }
  write_json(c, "scan.json", j);
  return kOk;
}

int cmd_index(const Common& c) {
  const Loaded l = load(c);
  Json j;
  j["params"] = to_json(l.cfg.params);
  try {
    const IndexVerdict v = orientation_index(l.cfg.params, 1e-4, l.tol.quadrature());
    j["verdict"] = to_json(v);
    write_json(c, "index.json", j);
    std::cout << to_string(v.conclusion) << "  sigma*{T,M} = " << fmt17(v.product) << '\n';
    switch (v.conclusion) {
      case IndexVerdict::Conclusion::UnstableDetected: return kUnstable;
      case IndexVerdict::Conclusion::DegenerateJacobian: return kDegenerate;
      case IndexVerdict::Conclusion::IndexInconclusive: return kOk;
    }
    return kOk;
  } catch (const Error& e) {
    j["error"] = e.what();
    write_json(c, "index.json", j);
    throw;
  }
}

int cmd_verify(const Common& c) {
  const Loaded l = load(c);
  const WaveProfile prof = integrate_profile(l.cfg.params, l.cfg.grid, l.cfg.tol);
  const VerifyReport r = run_verification(prof, l.cfg.tol, c.tol_scale, c.threads);
  Json j;
  j["params"] = to_json(l.cfg.params);
  j["tolerances"] = to_json(l.cfg.tol);
  j["threshold_scale"] = c.tol_scale;
  const Json rj = to_json(r);
  for (const auto& [k, v] : rj.items()) j[k] = v;
  write_json(c, "verify.json", j);
  for (const auto& ch : r.checks) {
    std::cout << (ch.pass ? "PASS " : "FAIL ") << ch.name << "  " << fmt17(ch.measured)
              << (ch.kind == Check::Kind::AtMost ? " <= " : " > ") << fmt17(ch.threshold);
    if (!ch.note.empty()) std::cout << "  (" << ch.note << ')';
    std::cout << '\n';
  }
  if (r.index) std::cout << "index: " << to_string(r.index->conclusion) << '\n';
  return r.all_pass() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic gKdV waves, transverse Evans function and orientation index"};
  app.require_subcommand(1);
  Common common;
  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", common.config, "problem definition (JSON)")->required();
    sub->add_option("--out", common.out, "output directory");
    sub->add_option("--threads", common.threads, "worker threads, 0 = hardware");
    sub->add_option("--tol-scale", common.tol_scale, "multiplies every tolerance")->check(CLI::PositiveNumber);
    return sub;
  };
  CLI::App* profile = add("profile", "wave profile CSV and summary");
  CLI::App* invariants = add("invariants", "T, M, P, H, gradients and {T,M}");
  CLI::App* scan = add("scan", "Evans scans and asymptotic reports");
  CLI::App* index = add("index", "orientation index verdict");
  CLI::App* verify = add("verify", "invariant suite with pass/fail table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*profile) return cmd_profile(common);
    if (*invariants) return cmd_invariants(common);
    if (*scan) return cmd_scan(common);
    if (*index) return cmd_index(common);
    if (*verify) return cmd_verify(common);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.is_usage_error() ? kUsage : kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
