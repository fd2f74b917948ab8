#include "run_config.hpp"

#include <fstream>
#include <set>

#include "ckspace/geometry.hpp"

namespace ckspace::cli {

namespace {

template <class T>
void take(std::optional<T>& dst, const std::optional<T>& src) {
  if (src) dst = src;
}

template <class T>
void read(const nlohmann::json& j, const char* key, std::optional<T>& dst) {
  if (!j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError(std::string("config key '") + key + "' has the wrong type");
  }
}

}  // namespace

void RunConfig::merge(const RunConfig& o) {
  take(space, o.space);
  take(kappa1, o.kappa1);
  take(kappa2, o.kappa2);
  take(coords, o.coords);
  take(family, o.family);
  take(variant, o.variant);
  take(z, o.z);
  take(b1, o.b1);
  take(b2, o.b2);
  take(beta0, o.beta0);
  take(k, o.k);
  take(gamma, o.gamma);
  take(sign, o.sign);
  take(q, o.q);
  take(p, o.p);
  take(r, o.r);
  take(theta, o.theta);
  take(pr, o.pr);
  take(ptheta, o.ptheta);
  take(dt, o.dt);
  take(steps, o.steps);
  take(stride, o.stride);
  take(integrator, o.integrator);
  take(seed, o.seed);
  take(samples, o.samples);
  take(suite, o.suite);
  take(out, o.out);
  take(format, o.format);
  take(r_min, o.r_min);
  take(r_max, o.r_max);
  take(points, o.points);
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  static const std::set<std::string> known = {
      "space", "kappa1", "kappa2", "coords", "family", "variant", "z", "b1", "b2", "beta0", "k",
      "gamma", "sign", "q", "p", "r", "theta", "pr", "ptheta", "dt", "steps", "stride",
      "integrator", "seed", "samples", "suite", "out", "format", "r_min", "r_max", "points"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw UsageError("unknown config key '" + key + "'");
  }
  RunConfig c;
  read(j, "space", c.space);
  read(j, "kappa1", c.kappa1);
  read(j, "kappa2", c.kappa2);
  read(j, "coords", c.coords);
  read(j, "family", c.family);
  read(j, "variant", c.variant);
  read(j, "z", c.z);
  read(j, "b1", c.b1);
  read(j, "b2", c.b2);
  read(j, "beta0", c.beta0);
  read(j, "k", c.k);
  read(j, "gamma", c.gamma);
  read(j, "sign", c.sign);
  read(j, "q", c.q);
  read(j, "p", c.p);
  read(j, "r", c.r);
  read(j, "theta", c.theta);
  read(j, "pr", c.pr);
  read(j, "ptheta", c.ptheta);
  read(j, "dt", c.dt);
  read(j, "steps", c.steps);
  read(j, "stride", c.stride);
  read(j, "integrator", c.integrator);
  read(j, "seed", c.seed);
  read(j, "samples", c.samples);
  read(j, "suite", c.suite);
  read(j, "out", c.out);
  read(j, "format", c.format);
  read(j, "r_min", c.r_min);
  read(j, "r_max", c.r_max);
  read(j, "points", c.points);
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  try {
    return config_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
}

CKSignature resolve_signature(const RunConfig& c) {
  if (c.kappa1.has_value() != c.kappa2.has_value()) {
    throw UsageError("--kappa1 and --kappa2 must be given together");
  }
  std::optional<CKSignature> explicit_sig;
  if (c.kappa1) {
    try {
      explicit_sig = CKSignature(*c.kappa1, *c.kappa2);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (c.space) {
    const auto sp = find_space(*c.space);
    if (!sp) throw UsageError("unknown space '" + *c.space + "' (see `ckspace spaces`)");
    if (explicit_sig && !(*explicit_sig == sp->sig)) {
      throw UsageError("--space " + *c.space + " does not match --kappa1/--kappa2");
    }
    return sp->sig;
  }
  if (explicit_sig) return *explicit_sig;
  throw UsageError("no space given (--space NAME or --kappa1/--kappa2)");
}

HamiltonianSpec resolve_spec(const RunConfig& c, CKSignature sig) {
  HamiltonianSpec spec;
  spec.sig = sig;
  try {
    spec.family = parse_family(c.family.value_or("free"));
    spec.variant = parse_variant(c.variant.value_or("integrable"));
    spec.coords = parse_coords(c.coords.value_or("beltrami"));
    ModelParams& m = spec.params;
    m.z = c.z.value_or(0.0);
    m.b1 = c.b1.value_or(0.0);
    m.b2 = c.b2.value_or(0.0);
    m.beta0 = c.beta0.value_or(0.0);
    m.k = c.k.value_or(0.0);
    m.gamma = c.gamma.value_or(0.0);
    m.sign = c.sign.value_or(space_of(sig).default_sign);
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return spec;
}

Phase<double> resolve_state(const RunConfig& c, const HamiltonianSpec& spec) {
  const bool beltrami_given = c.q || c.p;
  const bool polar_given = c.r || c.theta || c.pr || c.ptheta;
  if (beltrami_given && polar_given) {
    throw UsageError("give the initial state as --q/--p or as --r/--theta/--pr/--ptheta, not both");
  }
  const auto pair = [](const std::optional<std::vector<double>>& v, const char* name,
                       std::array<double, 2> fallback) {
    if (!v) return fallback;
    if (v->size() != 2) throw UsageError(std::string("--") + name + " takes two values");
    return std::array<double, 2>{(*v)[0], (*v)[1]};
  };
  if (beltrami_given || (!polar_given && spec.coords == Coords::Beltrami)) {
    const auto q = pair(c.q, "q", {0.5, 1.0});
    const auto p = pair(c.p, "p", {0.0, 0.0});
    const BeltramiState s{q[0], q[1], p[0], p[1]};
    if (spec.coords == Coords::Beltrami) return s.phase();
    return to_polar(s, spec.sig).phase();
  }
  const PolarState s{c.r.value_or(0.5), c.theta.value_or(0.5), c.pr.value_or(0.0),
                     c.ptheta.value_or(0.0)};
  if (spec.coords == Coords::Polar) return s.phase();
  return to_beltrami(s, spec.sig).phase();
}

FlowOptions resolve_flow(const RunConfig& c) {
  FlowOptions o;
  o.dt = c.dt.value_or(1e-3);
  if (!(o.dt > 0.0)) throw UsageError("--dt must be positive");
  const std::int64_t steps = c.steps.value_or(1000);
  if (steps < 0) throw UsageError("--steps must be non-negative");
  o.steps = static_cast<std::size_t>(steps);
  const std::int64_t stride = c.stride.value_or(1);
  if (stride < 1) throw UsageError("--stride must be at least 1");
  o.stride = static_cast<std::size_t>(stride);
  try {
    o.integrator = parse_integrator(c.integrator.value_or("rk4"));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return o;
}

std::string resolve_format(const RunConfig& c, const std::string& fallback) {
  const std::string f = c.format.value_or(fallback);
  if (f != "csv" && f != "json") throw UsageError("unknown format '" + f + "' (csv|json)");
  return f;
}

}  // namespace ckspace::cli
