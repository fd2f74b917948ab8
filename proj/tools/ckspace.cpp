// ckspace: simulate flows on the nine Cayley-Klein planes, run the
// verification suites, and evaluate base/fiber splits and chart metrics.
//
// Exit codes: 0 success / all checks pass, 1 numeric failure, 2 usage or
// domain error (including a flow stopped by a singularity guard).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ckspace/dynamics.hpp"
#include "ckspace/geometry.hpp"
#include "ckspace/hamiltonians.hpp"
#include "ckspace/verify.hpp"
#include "run_config.hpp"

using json = nlohmann::ordered_json;
using namespace ckspace;
using namespace ckspace::cli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// Writes to --out, or stdout when no path was given.
void emit(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + *path + "'");
  f << text;
}

std::string with_suffix(const std::string& path, const std::string& suffix, const std::string& ext) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  const std::string stem = has_ext ? path.substr(0, dot) : path;
  return stem + suffix + ext;
}

json params_json(const ModelParams& m) {
  return {{"z", m.z},         {"b1", m.b1}, {"b2", m.b2},       {"beta0", m.beta0},
          {"k", m.k},         {"gamma", m.gamma}, {"sign", m.sign}};
}

json spec_json(const HamiltonianSpec& spec) {
  return {{"space", std::string(space_of(spec.sig).name)},
          {"kappa1", spec.sig.kappa1()},
          {"kappa2", spec.sig.kappa2()},
          {"coords", std::string(to_string(spec.coords))},
          {"family", std::string(to_string(spec.family))},
          {"variant", std::string(to_string(spec.variant))},
          {"params", params_json(spec.params)}};
}

json event_json(const std::optional<TerminationEvent>& ev) {
  if (!ev) return nullptr;
  json lg = json::array();
  for (double v : ev->last_good) lg.push_back(finite_or_null(v));
  return {{"kind", std::string(to_string(ev->kind))}, {"t", ev->t}, {"message", ev->message},
          {"last_good", lg}};
}

std::vector<std::string> state_columns(Coords c) {
  if (c == Coords::Polar) return {"t", "r", "theta", "pr", "ptheta", "H", "C"};
  return {"t", "q1", "q2", "p1", "p2", "H", "C"};
}

std::string trajectory_csv(const Trajectory& tr) {
  std::ostringstream os;
  const auto cols = state_columns(tr.coords);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (std::size_t i = 0; i < tr.size(); ++i) {
    os << num(tr.times[i]);
    for (double v : tr.states[i]) os << ',' << num(v);
    os << ',' << num(tr.energy[i]) << ',' << num(tr.casimir[i]) << '\n';
  }
  return os.str();
}

json trajectory_rows(const Trajectory& tr) {
  json rows = json::array();
  for (std::size_t i = 0; i < tr.size(); ++i) {
    json row = json::array({tr.times[i]});
    for (double v : tr.states[i]) row.push_back(finite_or_null(v));
    row.push_back(finite_or_null(tr.energy[i]));
    row.push_back(finite_or_null(tr.casimir[i]));
    rows.push_back(row);
  }
  return {{"columns", state_columns(tr.coords)}, {"rows", rows}};
}

json closed_form_json(const ClosedFormSolution& s) {
  return {{"kind", std::string(to_string(s.kind))}, {"E", finite_or_null(s.E)},
          {"b_eff", s.b_eff},                      {"t0", finite_or_null(s.t0)},
          {"energy_defined", s.energy_defined}};
}

// Closed-form constants and the conic residual where the free integrable
// Beltrami flow has them; empty otherwise.
void add_closed_forms(json& side, const HamiltonianSpec& spec, const Phase<double>& x0,
                      const Trajectory& tr) {
  side["closed_form"] = nullptr;
  side["conic_residual"] = nullptr;
  if (spec.coords != Coords::Beltrami || spec.family != Family::Free ||
      spec.variant != Variant::Integrable) {
    return;
  }
  const auto s0 = BeltramiState::from(x0);
  json forms = json::array();
  const auto try_add = [&](ClosedFormKind kind) {
    try {
      forms.push_back(closed_form_json(closed_form(kind, spec.params, spec.sig, s0)));
    } catch (const DomainError&) {
    }
  };
  if (spec.sig.kappa1() == 0) {
    try_add(ClosedFormKind::FlatQ1);
    try_add(ClosedFormKind::FlatQ2);
    try {
      side["conic_residual"] = finite_or_null(conic_residual(tr, conic_constants(spec.params, spec.sig, s0)));
    } catch (const DomainError&) {
    }
  } else if (spec.sig.kappa2() == 0) {
    try_add(ClosedFormKind::NewtonFiber);
  }
  if (!forms.empty()) side["closed_form"] = forms;
}

// One simulate run. Returns the exit code; writes CSV (or JSON) and the sidecar.
int simulate_one(const RunConfig& cfg, CKSignature sig, const std::optional<std::string>& out) {
  const HamiltonianSpec spec = resolve_spec(cfg, sig);
  const FlowOptions opt = resolve_flow(cfg);
  const std::string format = resolve_format(cfg);
  const Phase<double> x0 = resolve_state(cfg, spec);
  const Trajectory tr = hamiltonian_flow(spec, x0, opt);

  json side = spec_json(spec);
  side["integrator"] = std::string(to_string(opt.integrator));
  side["dt"] = opt.dt;
  side["steps"] = opt.steps;
  side["stride"] = opt.stride;
  side["initial_state"] = json(x0);
  side["samples"] = tr.size();
  side["constants"] = {{"H0", finite_or_null(tr.energy.front())},
                       {"C0", finite_or_null(tr.casimir.front())},
                       {"H_final", finite_or_null(tr.energy.back())},
                       {"C_final", finite_or_null(tr.casimir.back())},
                       {"energy_drift", finite_or_null(tr.energy_drift())},
                       {"casimir_drift", finite_or_null(tr.casimir_drift())}};
  add_closed_forms(side, spec, x0, tr);
  side["event"] = event_json(tr.event);

  if (format == "json") {
    side["trajectory"] = trajectory_rows(tr);
    emit(out, side.dump(2) + "\n");
  } else {
    emit(out, trajectory_csv(tr));
    if (out) {
      std::string sidecar = with_suffix(*out, "", ".json");
      if (sidecar == *out) sidecar = with_suffix(*out, ".meta", ".json");
      emit(sidecar, side.dump(2) + "\n");
    }
  }
  if (tr.event) {
    std::cerr << "ckspace: " << space_of(sig).name << ": flow stopped at t = " << num(tr.event->t)
              << ": " << tr.event->message << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg) {
  if (cfg.space && *cfg.space == "all") {
    if (cfg.kappa1 || cfg.kappa2) throw UsageError("--space all cannot be combined with --kappa1/--kappa2");
    if (!cfg.out) throw UsageError("--space all needs --out (one file per space)");
    const std::string ext = resolve_format(cfg) == "json" ? ".json" : ".csv";
    int code = kExitOk;
    for (const auto& sp : all_spaces()) {
      const std::string path = with_suffix(*cfg.out, "-" + std::string(sp.name), ext);
      try {
        code = std::max(code, simulate_one(cfg, sp.sig, path));
      } catch (const DomainError& e) {
        std::cerr << "ckspace: " << sp.name << ": " << e.what() << "\n";
        code = kExitUsage;
      }
    }
    return code;
  }
  return simulate_one(cfg, resolve_signature(cfg), cfg.out);
}

int cmd_spaces(const RunConfig& cfg) {
  const std::string format = resolve_format(cfg);
  if (format == "json") {
    json rows = json::array();
    for (const auto& sp : all_spaces()) {
      rows.push_back({{"name", std::string(sp.name)},
                      {"title", std::string(sp.title)},
                      {"kappa1", sp.sig.kappa1()},
                      {"kappa2", sp.sig.kappa2()},
                      {"degenerate", sp.sig.degenerate()},
                      {"default_sign", sp.default_sign}});
    }
    emit(cfg.out, rows.dump(2) + "\n");
    return kExitOk;
  }
  std::ostringstream os;
  os << "name,kappa1,kappa2,degenerate,default_sign,title\n";
  for (const auto& sp : all_spaces()) {
    os << sp.name << ',' << sp.sig.kappa1() << ',' << sp.sig.kappa2() << ','
       << (sp.sig.degenerate() ? "true" : "false") << ',' << sp.default_sign << ','
       << csv_field(sp.title) << '\n';
  }
  emit(cfg.out, os.str());
  return kExitOk;
}

std::vector<Suite> resolve_suites(const RunConfig& cfg) {
  const std::string s = cfg.suite.value_or("all");
  if (s == "all") return {all_suites().begin(), all_suites().end()};
  std::vector<Suite> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_suite(item));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (out.empty()) throw UsageError("--suite is empty");
  return out;
}

json check_json(const Check& c, bool with_tolerance) {
  json j = {{"name", c.name}, {"space", c.space}, {"context", c.context}, {"value", finite_or_null(c.value)}};
  if (with_tolerance) {
    j["tolerance"] = c.tolerance ? json(*c.tolerance) : json(nullptr);
    j["pass"] = c.pass();
  }
  return j;
}

int cmd_verify(const RunConfig& cfg) {
  VerifyOptions vo;
  vo.seed = cfg.seed.value_or(1);
  vo.samples = cfg.samples.value_or(0);
  const auto suites = resolve_suites(cfg);
  const std::string format = resolve_format(cfg, "json");

  std::vector<SuiteReport> reports;
  bool all_pass = true;
  for (Suite s : suites) {
    reports.push_back(run_suite(s, vo));
    all_pass = all_pass && reports.back().pass();
  }

  if (format == "json") {
    json js = json::array();
    for (const auto& r : reports) {
      json checks = json::array();
      json diags = json::array();
      for (const auto& c : r.checks) checks.push_back(check_json(c, true));
      for (const auto& c : r.diagnostics) diags.push_back(check_json(c, false));
      js.push_back({{"suite", std::string(to_string(r.suite))},
                    {"samples", r.samples},
                    {"pass", r.pass()},
                    {"checks", checks},
                    {"diagnostics", diags},
                    {"notes", r.notes}});
    }
    const json doc = {{"seed", vo.seed},
                      {"samples", cfg.samples ? json(*cfg.samples) : json(nullptr)},
                      {"suites", js},
                      {"pass", all_pass}};
    emit(cfg.out, doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "suite,kind,name,space,context,value,tolerance,pass\n";
    for (const auto& r : reports) {
      const std::string suite(to_string(r.suite));
      for (const auto& c : r.checks) {
        os << suite << ",check," << csv_field(c.name) << ',' << csv_field(c.space) << ','
           << csv_field(c.context) << ',' << num(c.value) << ','
           << (c.tolerance ? num(*c.tolerance) : "") << ',' << (c.pass() ? "true" : "false") << '\n';
      }
      for (const auto& c : r.diagnostics) {
        os << suite << ",diagnostic," << csv_field(c.name) << ',' << csv_field(c.space) << ','
           << csv_field(c.context) << ',' << num(c.value) << ",,\n";
      }
    }
    emit(cfg.out, os.str());
  }
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      if (!c.pass()) {
        std::cerr << "FAIL " << to_string(r.suite) << " " << c.name << " " << c.space << " ["
                  << c.context << "] " << num(c.value) << "\n";
      }
    }
  }
  return all_pass ? kExitOk : kExitNumeric;
}

int cmd_split(const RunConfig& cfg) {
  if (cfg.format && *cfg.format != "json") throw UsageError("split writes JSON only");
  const CKSignature sig = resolve_signature(cfg);
  if (!sig.degenerate()) {
    throw UsageError("split needs a degenerate space (kappa2 = 0: newton-plus, newton-minus, "
                     "galilei); use `ckspace simulate` for " + std::string(space_of(sig).name));
  }
  const HamiltonianSpec spec = resolve_spec(cfg, sig);
  const FlowOptions opt = resolve_flow(cfg);
  const Phase<double> x0 = resolve_state(cfg, spec);
  const BaseFiberSplit split = split_base_fiber(spec);

  json doc = spec_json(spec);
  doc["rule"] = "nilpotent";
  doc["state"] = json(x0);
  doc["fiber"] = split.fiber(x0);
  doc["base"] = split.base(x0);
  doc["fiber_casimir"] = finite_or_null(split.fiber_casimir(x0));
  doc["integrator"] = std::string(to_string(opt.integrator));
  doc["dt"] = opt.dt;
  doc["steps"] = opt.steps;

  // The fiber motion is the full flow at kappa2 = 0; the base runs in its own time.
  const Trajectory fib = hamiltonian_flow(spec, x0, opt);
  const Trajectory base = base_flow(split, x0, opt);
  doc["fiber_trajectory"] = trajectory_rows(fib);
  doc["fiber_trajectory"]["event"] = event_json(fib.event);
  doc["fiber_trajectory"]["energy_drift"] = finite_or_null(fib.energy_drift());
  doc["base_trajectory"] = trajectory_rows(base);
  doc["base_trajectory"]["event"] = event_json(base.event);
  doc["base_trajectory"]["energy_drift"] = finite_or_null(base.energy_drift());
  doc["base_closed_form"] = nullptr;
  if (sig.kappa1() == 0 && spec.coords == Coords::Beltrami && spec.family == Family::Free &&
      spec.variant == Variant::Integrable) {
    try {
      doc["base_closed_form"] =
          closed_form_json(closed_form(ClosedFormKind::BaseQ2, spec.params, sig, BeltramiState::from(x0)));
    } catch (const DomainError&) {
    }
  }
  emit(cfg.out, doc.dump(2) + "\n");
  return (fib.event || base.event) ? kExitUsage : kExitOk;
}

int cmd_geometry(const RunConfig& cfg) {
  const CKSignature sig = resolve_signature(cfg);
  const std::string format = resolve_format(cfg);
  const double lo = cfg.r_min.value_or(0.1);
  const double hi = cfg.r_max.value_or(1.0);
  const std::int64_t n = cfg.points.value_or(10);
  if (n < 1 || !(lo >= 0.0) || !(hi >= lo)) throw UsageError("need 0 <= --r-min <= --r-max and --points >= 1");

  struct Row {
    double r;
    MetricAt g;
    double K;
  };
  std::vector<Row> rows;
  for (std::int64_t i = 0; i < n; ++i) {
    const double r = n == 1 ? lo : lo + (hi - lo) * double(i) / double(n - 1);
    Row row{r, metric_at(r, sig), std::numeric_limits<double>::quiet_NaN()};
    try {
      row.K = gaussian_curvature(r, sig);
    } catch (const DegenerateMetric&) {
    }
    rows.push_back(row);
  }
  if (format == "json") {
    json js = json::array();
    for (const auto& row : rows) {
      js.push_back({{"r", row.r},
                    {"g_rr", row.g.g_rr},
                    {"g_thth", row.g.g_thth},
                    {"fiber_g_thth", row.g.fiber_g_thth},
                    {"gaussian_curvature", finite_or_null(row.K)}});
    }
    const json doc = {{"space", std::string(space_of(sig).name)},
                      {"kappa1", sig.kappa1()},
                      {"kappa2", sig.kappa2()},
                      {"degenerate", sig.degenerate()},
                      {"rows", js}};
    emit(cfg.out, doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "r,g_rr,g_thth,fiber_g_thth,K\n";
    for (const auto& row : rows) {
      os << num(row.r) << ',' << num(row.g.g_rr) << ',' << num(row.g.g_thth) << ','
         << num(row.g.fiber_g_thth) << ',' << (std::isfinite(row.K) ? num(row.K) : "") << '\n';
    }
    emit(cfg.out, os.str());
  }
  return kExitOk;
}

template <class T>
void flag(CLI::App* app, const std::string& name, std::optional<T>& dst, const std::string& help) {
  app->add_option_function<T>(name, [&dst](const T& v) { dst = v; }, help);
}

void add_model_flags(CLI::App* app, RunConfig& c) {
  flag(app, "--space", c.space, "space name (see `ckspace spaces`)");
  flag(app, "--kappa1", c.kappa1, "kappa1 in {-1, 0, 1}");
  flag(app, "--kappa2", c.kappa2, "kappa2 in {-1, 0, 1}");
  flag(app, "--coords", c.coords, "beltrami | polar");
  flag(app, "--family", c.family, "free | sw | kc");
  flag(app, "--variant", c.variant, "integrable | superintegrable");
  flag(app, "--z", c.z, "deformation parameter");
  flag(app, "--b1", c.b1, "barrier strength b1");
  flag(app, "--b2", c.b2, "barrier strength b2");
  flag(app, "--beta0", c.beta0, "oscillator constant");
  flag(app, "--k", c.k, "polar Kepler-Coulomb coupling");
  flag(app, "--gamma", c.gamma, "Beltrami Kepler-Coulomb coupling");
  flag(app, "--sign", c.sign, "overall sign of H (+1 or -1; default per space)");
  app->add_option_function<std::vector<double>>("--q", [&c](const std::vector<double>& v) { c.q = v; },
                                                "initial q1 q2")
      ->expected(2);
  app->add_option_function<std::vector<double>>("--p", [&c](const std::vector<double>& v) { c.p = v; },
                                                "initial p1 p2")
      ->expected(2);
  flag(app, "--r", c.r, "initial r");
  flag(app, "--theta", c.theta, "initial theta");
  flag(app, "--pr", c.pr, "initial p_r");
  flag(app, "--ptheta", c.ptheta, "initial p_theta");
}

void add_flow_flags(CLI::App* app, RunConfig& c) {
  flag(app, "--dt", c.dt, "time step (default 1e-3)");
  flag(app, "--steps", c.steps, "number of steps (default 1000)");
  flag(app, "--stride", c.stride, "record every n-th step (default 1)");
  flag(app, "--integrator", c.integrator, "rk4 | implicit-midpoint");
}

void add_output_flags(CLI::App* app, RunConfig& c) {
  flag(app, "--out", c.out, "output path (default stdout)");
  flag(app, "--format", c.format, "csv | json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian systems on the nine Cayley-Klein planes"};
  app.require_subcommand(1);
  std::optional<std::string> config_path;
  RunConfig flags;

  auto* spaces = app.add_subcommand("spaces", "list the nine planes");
  auto* simulate = app.add_subcommand("simulate", "integrate a flow and write its trajectory");
  auto* verify = app.add_subcommand("verify", "run verification suites");
  auto* split = app.add_subcommand("split", "base/fiber split on a degenerate plane");
  auto* geometry = app.add_subcommand("geometry", "polar-chart metric and curvature");

  for (auto* sub : {spaces, simulate, verify, split, geometry}) {
    sub->add_option_function<std::string>("--config", [&](const std::string& v) { config_path = v; },
                                          "JSON config file; flags override it");
    add_output_flags(sub, flags);
  }
  for (auto* sub : {simulate, split}) {
    add_model_flags(sub, flags);
    add_flow_flags(sub, flags);
  }
  flag(geometry, "--space", flags.space, "space name");
  flag(geometry, "--kappa1", flags.kappa1, "kappa1 in {-1, 0, 1}");
  flag(geometry, "--kappa2", flags.kappa2, "kappa2 in {-1, 0, 1}");
  flag(geometry, "--r-min", flags.r_min, "first radius (default 0.1)");
  flag(geometry, "--r-max", flags.r_max, "last radius (default 1.0)");
  flag(geometry, "--points", flags.points, "number of radii (default 10)");
  flag(verify, "--suite", flags.suite,
       "brackets, casimir, conservation, oracle, split, superintegrable, geometry, continuity, "
       "a comma-separated list, or all");
  flag(verify, "--seed", flags.seed, "seed (default 1)");
  flag(verify, "--samples", flags.samples, "samples per signature (default per suite)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig cfg;
    if (config_path) cfg = load_config_file(*config_path);
    cfg.merge(flags);
    if (spaces->parsed()) return cmd_spaces(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (split->parsed()) return cmd_split(cfg);
    return cmd_geometry(cfg);
  } catch (const UsageError& e) {
    std::cerr << "ckspace: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "ckspace: domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ckspace: " << e.what() << "\n";
    return kExitUsage;
  }
}
