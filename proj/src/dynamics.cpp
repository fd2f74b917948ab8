#include "ckspace/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace ckspace {

std::string_view to_string(Integrator i) {
  return i == Integrator::RK4 ? "rk4" : "implicit-midpoint";
}

Integrator parse_integrator(std::string_view s) {
  if (s == "rk4") return Integrator::RK4;
  if (s == "implicit-midpoint" || s == "midpoint") return Integrator::ImplicitMidpoint;
  throw std::invalid_argument("unknown integrator '" + std::string(s) +
                              "' (rk4|implicit-midpoint)");
}

std::string_view to_string(TerminationEvent::Kind k) {
  return k == TerminationEvent::Kind::SingularityReached ? "SingularityReached"
                                                         : "NonFiniteState";
}

std::string_view to_string(ClosedFormKind k) {
  switch (k) {
    case ClosedFormKind::FlatQ1:
      return "FlatQ1";
    case ClosedFormKind::FlatQ2:
      return "FlatQ2";
    case ClosedFormKind::NewtonFiber:
      return "NewtonFiber";
    case ClosedFormKind::BaseQ2:
      return "BaseQ2";
  }
  return "?";
}

namespace {

double drift(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const double ref = v.front();
  const double scale = ref != 0.0 ? std::abs(ref) : 1.0;
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x - ref));
  return worst / scale;
}

Phase<double> axpy(const Phase<double>& x, double a, const Phase<double>& k) {
  return {x[0] + a * k[0], x[1] + a * k[1], x[2] + a * k[2], x[3] + a * k[3]};
}

Phase<double> field(const FlowSystem& sys, const Phase<double>& x) {
  return symplectic_flow(sys.gradient(x));
}

}  // namespace

double Trajectory::energy_drift() const { return drift(energy); }
double Trajectory::casimir_drift() const { return drift(casimir); }

Phase<double> step(const FlowSystem& sys, const Phase<double>& x, double dt,
                   Integrator integrator) {
  if (integrator == Integrator::RK4) {
    const auto k1 = field(sys, x);
    const auto k2 = field(sys, axpy(x, 0.5 * dt, k1));
    const auto k3 = field(sys, axpy(x, 0.5 * dt, k2));
    const auto k4 = field(sys, axpy(x, dt, k3));
    Phase<double> out;
    for (std::size_t i = 0; i < 4; ++i) {
      out[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
  }

  // Implicit midpoint by fixed-point iteration.
  Phase<double> y = axpy(x, dt, field(sys, x));
  for (int it = 0; it < kMidpointMaxIter; ++it) {
    Phase<double> mid;
    for (std::size_t i = 0; i < 4; ++i) mid[i] = 0.5 * (x[i] + y[i]);
    const Phase<double> next = axpy(x, dt, field(sys, mid));
    double diff = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < 4; ++i) {
      diff = std::max(diff, std::abs(next[i] - y[i]));
      scale = std::max(scale, std::abs(next[i]));
    }
    y = next;
    if (diff <= kMidpointTol * scale) break;
  }
  return y;
}

Trajectory integrate(const FlowSystem& sys, const Phase<double>& x0, const FlowOptions& opt) {
  if (!(opt.dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
  const std::size_t stride = std::max<std::size_t>(opt.stride, 1);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  Trajectory tr;
  tr.coords = sys.coords;
  const auto record = [&](double t, const Phase<double>& x, double h, double c) {
    tr.times.push_back(t);
    tr.states.push_back(x);
    tr.energy.push_back(h);
    tr.casimir.push_back(c);
  };
  const auto end_with = [&](TerminationEvent::Kind kind, double t, const Phase<double>& x,
                            std::string msg) {
    tr.event = TerminationEvent{kind, t, x, std::move(msg)};
  };

  if (!all_finite(x0)) throw DomainError("integrate: non-finite initial state");
  if (sys.guard) {
    if (auto msg = sys.guard(x0)) throw DomainError("integrate: initial state singular: " + *msg);
  }
  record(0.0, x0, sys.energy(x0), sys.casimir ? sys.casimir(x0) : nan);

  Phase<double> x = x0;
  for (std::size_t n = 1; n <= opt.steps; ++n) {
    const double t_prev = double(n - 1) * opt.dt;
    const double t = double(n) * opt.dt;
    Phase<double> next;
    double h = 0.0;
    double c = nan;
    try {
      next = step(sys, x, opt.dt, opt.integrator);
      if (!all_finite(next)) {
        end_with(TerminationEvent::Kind::NonFiniteState, t_prev, x, "state became non-finite");
        break;
      }
      if (sys.guard) {
        if (auto msg = sys.guard(next)) {
          end_with(TerminationEvent::Kind::SingularityReached, t_prev, x, *msg);
          break;
        }
      }
      h = sys.energy(next);
      if (sys.casimir) c = sys.casimir(next);
    } catch (const DomainError& e) {
      end_with(TerminationEvent::Kind::SingularityReached, t_prev, x, e.what());
      break;
    }
    if (!std::isfinite(h)) {
      end_with(TerminationEvent::Kind::NonFiniteState, t_prev, x, "energy became non-finite");
      break;
    }
    x = next;
    if (n % stride == 0 || n == opt.steps) record(t, x, h, c);
  }
  return tr;
}

namespace {

using J = Jet<double>;

std::optional<std::string> beltrami_guard(const ModelParams& m, const Phase<double>& x) {
  if (m.b1 != 0.0 && std::abs(x[0]) < kFlowGuard) return "|q1| < 1e-6 with b1 != 0";
  if (m.b2 != 0.0 && std::abs(x[1]) < kFlowGuard) return "|q2| < 1e-6 with b2 != 0";
  return std::nullopt;
}

std::optional<std::string> polar_guard(const HamiltonianSpec& spec, const Phase<double>& x) {
  const double k1 = spec.sig.kappa1();
  const double k2 = spec.sig.kappa2();
  if (std::abs(gsin(k1, x[0])) < kFlowGuard) return "|gsin(kappa1, r)| < 1e-6";
  if (spec.params.b1 != 0.0 && std::abs(gsin(k2, x[1])) < kFlowGuard) {
    return "|gsin(kappa2, theta)| < 1e-6 with b1 != 0";
  }
  if (spec.params.b2 != 0.0 && std::abs(gcos(k2, x[1])) < kFlowGuard) {
    return "|gcos(kappa2, theta)| < 1e-6 with b2 != 0";
  }
  if (gcos(k1, x[0]) < kFlowGuard) return "gcos(kappa1, r) < 1e-6 (edge of the polar chart)";
  return std::nullopt;
}

}  // namespace

FlowSystem flow_system(const HamiltonianSpec& spec) {
  FlowSystem sys;
  sys.coords = spec.coords;
  sys.gradient = [spec](const Phase<double>& x) {
    return gradient([&spec](const Phase<J>& s) { return hamiltonian(spec, s); }, x);
  };
  sys.energy = [spec](const Phase<double>& x) { return hamiltonian(spec, x); };
  sys.casimir = [spec](const Phase<double>& x) { return casimir(spec, x); };
  sys.guard = [spec](const Phase<double>& x) {
    return spec.coords == Coords::Polar ? polar_guard(spec, x) : beltrami_guard(spec.params, x);
  };
  return sys;
}

Trajectory hamiltonian_flow(const HamiltonianSpec& spec, const Phase<double>& x0,
                            const FlowOptions& opt) {
  spec.params.validate();
  return integrate(flow_system(spec), x0, opt);
}

FlowSystem base_flow_system(const BaseFiberSplit& split) {
  FlowSystem sys;
  sys.coords = split.spec().coords;
  sys.gradient = [split](const Phase<double>& x) {
    return gradient([&split](const Phase<J>& s) { return split.base(s); }, x);
  };
  sys.energy = [split](const Phase<double>& x) { return split.base(x); };
  const HamiltonianSpec spec = split.spec();
  sys.guard = [spec](const Phase<double>& x) -> std::optional<std::string> {
    if (spec.coords == Coords::Polar) {
      if (std::abs(gsin(double(spec.sig.kappa1()), x[0])) < kFlowGuard) {
        return "|gsin(kappa1, r)| < 1e-6";
      }
      if (gcos(double(spec.sig.kappa1()), x[0]) < kFlowGuard) {
        return "gcos(kappa1, r) < 1e-6 (edge of the polar chart)";
      }
      return std::nullopt;
    }
    return beltrami_guard(spec.params, x);
  };
  return sys;
}

Trajectory base_flow(const BaseFiberSplit& split, const Phase<double>& x0,
                     const FlowOptions& opt) {
  split.spec().params.validate();
  return integrate(base_flow_system(split), x0, opt);
}

double ClosedFormSolution::q_sq(double t) const {
  if (!energy_defined) return q0 * q0;
  const double a = accel * E;
  if (a == 0.0) return q0 * q0 + 2.0 * q0 * qdot0 * t;
  return b_eff / E + a * (t - t0) * (t - t0);
}

ClosedFormSolution closed_form(ClosedFormKind kind, const ModelParams& m, CKSignature sig,
                               const BeltramiState& s0) {
  m.validate();
  const double sign = m.sign;
  const int k1 = sig.kappa1();
  const int k2 = sig.kappa2();
  const auto require = [&](bool ok, const char* what) {
    if (!ok) throw DomainError(std::string("closed_form(") + std::string(to_string(kind)) +
                               "): " + what);
  };

  ClosedFormSolution sol;
  sol.kind = kind;
  double q = 0.0;
  switch (kind) {
    case ClosedFormKind::FlatQ1:
      require(k1 == 0, "needs a flat space (kappa1 = 0)");
      q = s0.q1;
      sol.qdot0 = sign * s0.p1;
      sol.b_eff = m.b1;
      break;
    case ClosedFormKind::FlatQ2:
      require(k1 == 0, "needs a flat space (kappa1 = 0)");
      q = s0.q2;
      sol.qdot0 = sign * k2 * s0.p2;
      sol.b_eff = m.b2;
      sol.accel = double(k2 * k2);
      break;
    case ClosedFormKind::NewtonFiber: {
      require(k2 == 0, "needs a degenerate metric (kappa2 = 0)");
      const double c = k1 * m.z * s0.q2 * s0.q2;
      q = s0.q1;
      sol.qdot0 = sign * s0.p1 * std::exp(c);
      sol.b_eff = m.b1 * std::exp(2.0 * c);
      break;
    }
    case ClosedFormKind::BaseQ2:
      require(k1 == 0 && k2 == 0, "needs the Galilei plane (kappa1 = kappa2 = 0)");
      q = s0.q2;
      sol.qdot0 = sign * s0.p2;
      sol.b_eff = m.b2;
      break;
  }
  sol.q0 = q;

  if (sol.b_eff != 0.0 && std::abs(q) < kBarrierGuard) {
    throw BarrierSingularity("closed_form: initial coordinate at the barrier");
  }
  const double barrier = sol.b_eff != 0.0 ? sol.b_eff / (q * q) : 0.0;

  if (sol.accel == 0.0) {
    // Fiber line at kappa2 = 0: the coordinate is frozen at q(0).
    if (sol.b_eff > 0.0) {
      sol.E = barrier;
    } else {
      sol.energy_defined = false;
    }
    return sol;
  }
  sol.E = sol.qdot0 * sol.qdot0 + barrier;
  require(!(sol.b_eff > 0.0 && sol.E <= 0.0), "E <= 0 with a repulsive barrier");
  if (sol.E != 0.0) sol.t0 = -q * sol.qdot0 / (sol.accel * sol.E);
  return sol;
}

ConicConstants conic_constants(const ModelParams& m, CKSignature sig, const BeltramiState& s0) {
  const auto s1 = closed_form(ClosedFormKind::FlatQ1, m, sig, s0);
  const auto s2 = closed_form(ClosedFormKind::FlatQ2, m, sig, s0);
  if (!s2.energy_defined || s2.E == 0.0 || s1.E == 0.0) {
    throw DomainError("conic_constants: E1 or E2 undefined or zero");
  }
  return {s1.E, s2.E, m.b1, m.b2, sig.kappa2()};
}

double conic_residual(const Trajectory& traj, const ConicConstants& c) {
  const double k4 = double(c.kappa2 * c.kappa2);
  const double rhs = c.b2 * c.E1 / c.E2 - k4 * c.b1 * c.E2 / c.E1;
  double worst = 0.0;
  for (const auto& s : traj.states) {
    const double lhs = c.E1 * s[1] * s[1] - k4 * c.E2 * s[0] * s[0];
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace ckspace
