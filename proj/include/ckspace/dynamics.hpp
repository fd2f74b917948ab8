#pragma once

// Hamiltonian flows with exact (jet) gradients, conserved-quantity logging
// and the closed-form solutions used as trajectory oracles.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ckspace/ck_scalar.hpp"
#include "ckspace/coalgebra.hpp"
#include "ckspace/hamiltonians.hpp"
#include "ckspace/phase.hpp"

namespace ckspace {

enum class Integrator { RK4, ImplicitMidpoint };

std::string_view to_string(Integrator i);
Integrator parse_integrator(std::string_view s);

struct TerminationEvent {
  enum class Kind { SingularityReached, NonFiniteState };
  Kind kind = Kind::SingularityReached;
  double t = 0.0;          ///< time of the last good sample
  Phase<double> last_good{};
  std::string message;
};

std::string_view to_string(TerminationEvent::Kind k);

struct Trajectory {
  Coords coords = Coords::Beltrami;
  std::vector<double> times;
  std::vector<Phase<double>> states;
  std::vector<double> energy;
  std::vector<double> casimir;  ///< NaN when the flow has no tracked Casimir
  std::optional<TerminationEvent> event;

  std::size_t size() const { return times.size(); }
  /// max_i |H_i - H_0| / |H_0| (absolute when H_0 = 0).
  double energy_drift() const;
  double casimir_drift() const;
};

/// A Hamiltonian system as the integrator sees it.
struct FlowSystem {
  std::function<Phase<double>(const Phase<double>&)> gradient;  ///< dH/d(q, p)
  std::function<double(const Phase<double>&)> energy;
  std::function<double(const Phase<double>&)> casimir;  ///< may be empty
  /// Returns a message when the state has reached a singular region.
  std::function<std::optional<std::string>(const Phase<double>&)> guard;
  Coords coords = Coords::Beltrami;
};

struct FlowOptions {
  double dt = 1e-3;
  std::size_t steps = 1000;
  Integrator integrator = Integrator::RK4;
  /// Record every `stride`-th step (the final step is always recorded).
  std::size_t stride = 1;
};

inline constexpr double kFlowGuard = 1e-6;
inline constexpr double kMidpointTol = 1e-12;
inline constexpr int kMidpointMaxIter = 50;

/// One step of the chosen scheme. dt may be negative.
Phase<double> step(const FlowSystem& sys, const Phase<double>& x, double dt, Integrator integrator);

/// Fixed-step integration. Domain errors raised by the Hamiltonian and guard
/// trips end the run with a SingularityReached event; non-finite states with
/// NonFiniteState. The trajectory keeps every good sample.
Trajectory integrate(const FlowSystem& sys, const Phase<double>& x0, const FlowOptions& opt);

/// Flow system of the Hamiltonian in `spec`, logging its matching Casimir.
FlowSystem flow_system(const HamiltonianSpec& spec);

/// Throws std::invalid_argument for dt <= 0; DomainError if x0 lies outside
/// the Hamiltonian's domain.
Trajectory hamiltonian_flow(const HamiltonianSpec& spec, const Phase<double>& x0,
                            const FlowOptions& opt);

/// Flow of the base Hamiltonian in its own time variable. The logged
/// "casimir" column is NaN; the base motion has a single constant, its energy.
FlowSystem base_flow_system(const BaseFiberSplit& split);
Trajectory base_flow(const BaseFiberSplit& split, const Phase<double>& x0, const FlowOptions& opt);

enum class ClosedFormKind { FlatQ1, FlatQ2, NewtonFiber, BaseQ2 };

std::string_view to_string(ClosedFormKind k);

/// q^2(t) = b_eff / E + accel E (t - t0)^2 with E the conserved
/// (velocity^2 + b_eff / q^2).
struct ClosedFormSolution {
  ClosedFormKind kind = ClosedFormKind::FlatQ1;
  double E = 0.0;
  double b_eff = 0.0;
  double t0 = 0.0;
  double accel = 1.0;   ///< kappa2^2 for FlatQ2, 1 otherwise
  bool energy_defined = true;
  double q0 = 0.0;      ///< q at t = 0
  double qdot0 = 0.0;   ///< dq/dt at t = 0

  double q_sq(double t) const;
};

/// Constants of motion from initial data of the free integrable Hamiltonian.
///   FlatQ1, FlatQ2: kappa1 = 0, any kappa2 (q2 part read with j2^4 = kappa2^2);
///   NewtonFiber:   kappa2 = 0, b_eff = b1 exp(2 kappa1 z q2(0)^2);
///   BaseQ2:        kappa1 = kappa2 = 0 base motion in its own time.
/// At kappa2 = 0 FlatQ2 takes E2 = b2 / q2(0)^2; with b2 = 0 E2 is reported
/// undefined and q2^2 stays q2(0)^2. Throws DomainError on a signature the
/// kind does not cover, or E <= 0 with b_eff > 0.
ClosedFormSolution closed_form(ClosedFormKind kind, const ModelParams& m, CKSignature sig,
                               const BeltramiState& s0);

struct ConicConstants {
  double E1 = 0.0;
  double E2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  int kappa2 = 1;
};

/// Constants for the flat trajectory identity. Throws DomainError when E2 is
/// undefined.
ConicConstants conic_constants(const ModelParams& m, CKSignature sig, const BeltramiState& s0);

/// max over samples of |E1 q2^2 - k2^2 E2 q1^2 - (b2 E1/E2 - k2^2 b1 E2/E1)|.
/// Holds along the flat free flow when q1 and q2 share their turning time.
double conic_residual(const Trajectory& traj, const ConicConstants& c);

}  // namespace ckspace
