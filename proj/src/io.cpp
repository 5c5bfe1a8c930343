#include "kpwave/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <ostream>

#include "kpwave/error.hpp"

namespace kpwave {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); }

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) bad(where + " must be an object");
  for (const auto& [key, _] : j.items())
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      bad("unknown key \"" + key + "\" in " + where);
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) bad("missing key \"" + std::string(key) + "\" in " + where);
  return j.at(key);
}

double num(const Json& j, const std::string& what) {
  if (!j.is_number()) bad(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(what + " must be finite");
  return v;
}

std::vector<double> num_list(const Json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(num(e, what + " entry"));
  return out;
}

std::vector<double> mu_grid(const Json& j) {
  if (j.is_array()) return num_list(j, "mu_grid");
  only_keys(j, {"from", "to", "count"}, "mu_grid");
  const double from = num(need(j, "from", "mu_grid"), "mu_grid.from");
  const double to = num(need(j, "to", "mu_grid"), "mu_grid.to");
  const Json& cj = need(j, "count", "mu_grid");
  if (!cj.is_number_integer() || cj.get<long>() < 2) bad("mu_grid.count must be an integer >= 2");
  if (!(to > from)) bad("mu_grid.to must exceed mu_grid.from");
  const int n = cj.get<int>();
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = from + (to - from) * i / (n - 1);
  g.back() = to;
  return g;
}

Json num_json(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json cplx_json(cplx z) { return Json::array({num_json(z.real()), num_json(z.imag())}); }

}  // namespace

NonlinearitySpec parse_nonlinearity(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) bad("nonlinearity needs a string \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "power") {
    only_keys(j, {"kind", "coef", "exponent"}, "nonlinearity");
    const double coef = num(need(j, "coef", "nonlinearity"), "nonlinearity.coef");
    const Json& e = need(j, "exponent", "nonlinearity");
    if (!e.is_number_integer()) bad("nonlinearity.exponent must be an integer");
    return NonlinearitySpec::power(coef, e.get<int>());
  }
  if (kind == "poly") {
    only_keys(j, {"kind", "coeffs"}, "nonlinearity");
    return NonlinearitySpec::polynomial(num_list(need(j, "coeffs", "nonlinearity"), "nonlinearity.coeffs"));
  }
  bad("unknown nonlinearity kind \"" + kind + "\"");
}

ProblemConfig parse_config(const Json& j) {
  only_keys(j, {"nonlinearity", "a", "E", "c", "sigma", "well_hint", "grid", "tolerances", "scan"}, "config");
  ProblemConfig cfg;
  WaveParams& p = cfg.params;
  p.nonlinearity = parse_nonlinearity(need(j, "nonlinearity", "config"));
  p.a = num(need(j, "a", "config"), "a");
  p.E = num(need(j, "E", "config"), "E");
  p.c = num(need(j, "c", "config"), "c");
  const Json& s = need(j, "sigma", "config");
  if (!s.is_number_integer()) bad("sigma must be +1 or -1");
  p.sigma = s.get<int>();
  if (j.contains("well_hint")) {
    const auto w = num_list(j.at("well_hint"), "well_hint");
    if (w.size() != 2 || !(w[0] < w[1])) bad("well_hint must be [lo, hi] with lo < hi");
    p.well_hint = Interval{w[0], w[1]};
  }
  if (j.contains("grid")) {
    const Json& g = j.at("grid");
    if (!g.is_number_integer() || g.get<long>() < 64) bad("grid must be an integer >= 64");
    cfg.grid = g.get<int>();
  }
  if (j.contains("tolerances")) {
    const Json& t = j.at("tolerances");
    only_keys(t, {"ode", "quad", "simplicity", "kernel"}, "tolerances");
    auto set = [&](const char* key, double& dst) {
      if (!t.contains(key)) return;
      dst = num(t.at(key), std::string("tolerances.") + key);
      if (!(dst > 0.0)) bad(std::string("tolerances.") + key + " must be positive");
    };
    set("ode", cfg.tol.ode);
    set("quad", cfg.tol.quad);
    set("simplicity", cfg.tol.simplicity);
    set("kernel", cfg.tol.kernel);
  }
  if (j.contains("scan")) {
    const Json& sj = j.at("scan");
    only_keys(sj, {"mu_grid", "k", "lambda", "high_freq", "low_freq"}, "scan");
    ScanConfig sc;
    if (sj.contains("mu_grid")) sc.mu_grid = mu_grid(sj.at("mu_grid"));
    if (sj.contains("k")) sc.k = num_list(sj.at("k"), "scan.k");
    if (!sc.mu_grid.empty() && sc.k.empty()) bad("scan.k is required with scan.mu_grid");
    if (sj.contains("lambda")) {
      const Json& l = sj.at("lambda");
      if (l.is_number()) {
        sc.lambda = num(l, "scan.lambda");
      } else {
        const auto v = num_list(l, "scan.lambda");
        if (v.size() != 2) bad("scan.lambda must be a number or [re, im]");
        sc.lambda = {v[0], v[1]};
      }
    }
    if (sj.contains("high_freq")) {
      const Json& h = sj.at("high_freq");
      only_keys(h, {"k", "mu"}, "scan.high_freq");
      sc.high_freq = HighFreqRequest{num_list(need(h, "k", "scan.high_freq"), "scan.high_freq.k"),
                                     h.contains("mu") ? num_list(h.at("mu"), "scan.high_freq.mu")
                                                      : std::vector<double>{25.0, 50.0, 100.0, 200.0}};
    }
    if (sj.contains("low_freq")) {
      const Json& l = sj.at("low_freq");
      only_keys(l, {"k"}, "scan.low_freq");
      sc.low_freq_k = l.contains("k") ? num_list(l.at("k"), "scan.low_freq.k") : default_k_ladder();
    }
    cfg.scan = std::move(sc);
  }
  p.validate();
  return cfg;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    bad(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

Json to_json(const NonlinearitySpec& nl) {
  Json j;
  if (nl.kind() == NonlinearitySpec::Kind::Power) {
    j["kind"] = "power";
    j["coef"] = nl.coef();
    j["exponent"] = nl.exponent();
  } else {
    j["kind"] = "poly";
    const auto c = nl.f().coeffs();
    j["coeffs"] = std::vector<double>(c.begin(), c.end());
  }
  return j;
}

Json to_json(const WaveParams& p) {
  Json j;
  j["nonlinearity"] = to_json(p.nonlinearity);
  j["a"] = p.a;
  j["E"] = p.E;
  j["c"] = p.c;
  j["sigma"] = p.sigma;
  if (p.well_hint) j["well_hint"] = {p.well_hint->lo, p.well_hint->hi};
  return j;
}

Json to_json(const Tolerances& t) {
  return Json{{"ode", t.ode}, {"quad", t.quad}, {"simplicity", t.simplicity}, {"kernel", t.kernel}};
}

Json to_json(const InvariantSet& inv) {
  return Json{{"T", inv.T}, {"M", inv.M}, {"P", inv.P}, {"H", inv.H}, {"jensen_gap", inv.jensen_gap()}};
}

Json to_json(const ScanReport& r) {
  Json j;
  j["k"] = r.k;
  j["lambda"] = cplx_json(r.lambda);
  Json samples = Json::array();
  for (const auto& s : r.samples)
    samples.push_back(Json{{"mu", s.mu},
                           {"mantissa", cplx_json(s.D.mantissa)},
                           {"log_scale", s.D.log_scale},
                           {"route", s.D.route == EvansValue::Route::LU ? "lu" : "compound"},
                           {"sign", s.sign}});
  j["samples"] = std::move(samples);
  Json roots = Json::array();
  for (const auto& b : r.roots) roots.push_back(Json{{"root", b.root}, {"lo", b.lo}, {"hi", b.hi}, {"width", b.width}});
  j["roots"] = std::move(roots);
  j["unstable"] = r.unstable();
  return j;
}

Json to_json(const HighFreqReport& r) {
  Json j;
  j["k"] = r.k;
  Json probes = Json::array();
  for (const auto& p : r.probes) probes.push_back(Json{{"mu", p.mu}, {"sign", p.sign}, {"log_abs", num_json(p.log_abs)}});
  j["probes"] = std::move(probes);
  j["onset_mu"] = r.onset_mu;
  j["verdict"] = r.conclusive ? Json(r.verdict) : Json("inconclusive");
  j["conclusive"] = r.conclusive;
  j["fit_alpha"] = num_json(r.fit_alpha);
  j["fit_beta"] = num_json(r.fit_beta);
  return j;
}

Json to_json(const LowFreqReport& r) {
  return Json{{"k_samples", r.k_samples},       {"d_values", r.d_values},
              {"fitted_c4", r.fitted_c4},       {"fitted_c6", r.fitted_c6},
              {"predicted_c4", r.predicted_c4}, {"relative_error", r.relative_error},
              {"fit_residual", r.fit_residual}, {"jensen_gap", r.jensen_gap},
              {"jacobian", r.jacobian}};
}

Json to_json(const IndexVerdict& v) {
  return Json{{"jacobian", v.jacobian},
              {"sigma", v.sigma},
              {"product", v.product},
              {"product_sign", v.product_sign == 0 ? Json("degenerate") : Json(v.product_sign)},
              {"conclusion", to_string(v.conclusion)}};
}

Json to_json(const BlockReductionReport& r) {
  Json j;
  j["q_diagonal_error"] = r.q_diagonal_error;
  j["avg_A1x"] = r.avg_A1x;
  j["avg_A1A1x"] = r.avg_A1A1x;
  Json levels = Json::array();
  for (const auto& l : r.levels)
    levels.push_back(Json{{"mu", l.mu},
                          {"eps", l.eps},
                          {"upper_left", l.upper_left},
                          {"last_column", l.last_column},
                          {"bottom_row", l.bottom_row},
                          {"lower_left", l.lower_left},
                          {"lower_left_full", l.lower_left_full},
                          {"lower_left_first", l.lower_left_first},
                          {"entry44", l.entry44}});
  j["levels"] = std::move(levels);
  j["slope_lower_left"] = num_json(r.slope_lower_left);
  j["slope_lower_left_full"] = num_json(r.slope_lower_left_full);
  j["slope_lower_left_first"] = num_json(r.slope_lower_left_first);
  j["slope_entry44"] = num_json(r.slope_entry44);
  j["structure_ok"] = r.structure_ok();
  return j;
}

Json to_json(const VerifyReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json j{{"name", c.name},
           {"measured", num_json(c.measured)},
           {"relation", c.kind == Check::Kind::AtMost ? "<=" : ">"},
           {"threshold", c.threshold},
           {"pass", c.pass}};
    if (!c.note.empty()) j["error"] = c.note;
    checks.push_back(std::move(j));
  }
  Json j;
  j["checks"] = std::move(checks);
  j["index"] = r.index ? to_json(*r.index) : Json(nullptr);
  j["all_pass"] = r.all_pass();
  return j;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << fmt17(r[i]);
    os << '\n';
  }
}

void write_profile_csv(std::ostream& os, const WaveProfile& profile) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i <= profile.intervals(); ++i)
    rows.push_back({profile.grid(i), profile.u_samples()[i], profile.ux_samples()[i]});
  write_csv(os, {"x", "u", "ux"}, rows);
}

void write_scan_csv(std::ostream& os, const ScanReport& r) {
  std::vector<std::vector<double>> rows;
  for (const auto& s : r.samples)
    rows.push_back({s.mu, r.k, s.D.mantissa.real(), s.D.mantissa.imag(), s.D.log_scale, double(s.sign)});
  write_csv(os, {"mu", "k", "re_D", "im_D", "log_scale", "sign"}, rows);
}

void write_high_freq_csv(std::ostream& os, const HighFreqReport& r) {
  std::vector<std::vector<double>> rows;
  for (const auto& p : r.probes) rows.push_back({p.mu, double(p.sign), p.log_abs});
  write_csv(os, {"mu", "sign", "log_abs_D"}, rows);
}

void write_low_freq_csv(std::ostream& os, const LowFreqReport& r) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < r.k_samples.size(); ++i) rows.push_back({r.k_samples[i], r.d_values[i]});
  write_csv(os, {"k", "D"}, rows);
}

}  // namespace kpwave
