#pragma once

// Hand-written base and fiber Hamiltonians on the degenerate planes
// (kappa2 = 0), one formula per case, using only <cmath>. They serve as
// independent oracles for the jet-extracted split and share no code with
// the kernels.

#include <cmath>
#include <stdexcept>

#include "ckspace/phase.hpp"

namespace ckspace::reference {

/// sin, identity, sinh; cos, 1, cosh; tan, identity, tanh by kappa1.
inline double s1(int k1, double r) { return k1 > 0 ? std::sin(r) : k1 < 0 ? std::sinh(r) : r; }
inline double c1(int k1, double r) { return k1 > 0 ? std::cos(r) : k1 < 0 ? std::cosh(r) : 1.0; }
inline double t1(int k1, double r) { return k1 > 0 ? std::tan(r) : k1 < 0 ? std::tanh(r) : r; }

struct Split {
  double fiber = 0.0;
  double base = 0.0;
};

/// Free integrable Hamiltonian, Beltrami variables, flat fiber (kappa1 = 0):
/// fiber (p1^2 + b1/q1^2)/2, base (p2^2 + b2/q2^2)/2.
inline Split beltrami_flat(const BeltramiState& s, double b1, double b2) {
  return {0.5 * (s.p1 * s.p1 + b1 / (s.q1 * s.q1)), 0.5 * (s.p2 * s.p2 + b2 / (s.q2 * s.q2))};
}

/// Free integrable Hamiltonian, Beltrami variables, curved fiber (kappa1 = +-1, z != 0):
/// fiber (p1^2 + b1/q1^2) e^{k1 z q2^2} / 2,
/// base (sinh(k1 z q2^2)/(k1 z q2^2) p2^2 + k1 z b2 / sinh(k1 z q2^2)) / 2.
inline Split beltrami_curved(const BeltramiState& s, int k1, double z, double b1, double b2) {
  if (k1 == 0 || z == 0.0) throw std::invalid_argument("beltrami_curved: needs k1 z != 0");
  const double u = k1 * z * s.q2 * s.q2;
  return {0.5 * (s.p1 * s.p1 + b1 / (s.q1 * s.q1)) * std::exp(u),
          0.5 * (std::sinh(u) / u * s.p2 * s.p2 + k1 * z * b2 / std::sinh(u))};
}

enum class Potential { None, Oscillator, Coulomb };

/// Integrable polar Hamiltonian on a Newton plane (kappa1 = +-1):
///   base  (p_r^2/2 + 2 b2/S^2 + g/C) C,   g = 0 | beta0 C T^2 | -k C / T,
///   fiber C / (2 S^2) (p_theta^2 + 4 b1 / theta^2).
inline Split polar_newton_integrable(const PolarState& s, int k1, Potential pot, double b1,
                                     double b2, double beta0, double k) {
  const double S = s1(k1, s.r);
  const double C = c1(k1, s.r);
  const double T = t1(k1, s.r);
  double g = 0.0;
  if (pot == Potential::Oscillator) g = beta0 * C * T * T;
  if (pot == Potential::Coulomb) g = -k * C / T;
  const double base = (0.5 * s.pr * s.pr + 2.0 * b2 / (S * S) + g / C) * C;
  const double fiber =
      C / (2.0 * S * S) * (s.ptheta * s.ptheta + 4.0 * b1 / (s.theta * s.theta));
  return {fiber, base};
}

/// Integrable polar Hamiltonian on the Galilei plane:
///   base p_r^2/2 + 2 b2/r^2 + g(r), g = 0 | beta0 r^2 | -k / r,
///   fiber (p_theta^2 + 4 b1/theta^2) / (2 r^2).
inline Split polar_galilei_integrable(const PolarState& s, Potential pot, double b1, double b2,
                                      double beta0, double k) {
  const double r = s.r;
  double g = 0.0;
  if (pot == Potential::Oscillator) g = beta0 * r * r;
  if (pot == Potential::Coulomb) g = -k / r;
  return {(s.ptheta * s.ptheta + 4.0 * b1 / (s.theta * s.theta)) / (2.0 * r * r),
          0.5 * s.pr * s.pr + 2.0 * b2 / (r * r) + g};
}

/// Superintegrable polar Hamiltonian on a Newton plane:
///   base (p_r^2 + 4 b2 / S^2)/2 + (0 | beta0 T^2 | -k / T),
///   fiber (p_theta^2 + 4 b1/theta^2) / (2 S^2).
inline Split polar_newton_super(const PolarState& s, int k1, Potential pot, double b1,
                                double b2, double beta0, double k) {
  const double S = s1(k1, s.r);
  const double T = t1(k1, s.r);
  double v = 0.0;
  if (pot == Potential::Oscillator) v = beta0 * T * T;
  if (pot == Potential::Coulomb) v = -k / T;
  return {(s.ptheta * s.ptheta + 4.0 * b1 / (s.theta * s.theta)) / (2.0 * S * S),
          0.5 * (s.pr * s.pr + 4.0 * b2 / (S * S)) + v};
}

/// Superintegrable polar Hamiltonian on the Galilei plane:
///   base (p_r^2 + 4 b2/r^2)/2 + (0 | beta0 r^2 | -k / r),
///   fiber (p_theta^2 + 4 b1/theta^2) / (2 r^2).
inline Split polar_galilei_super(const PolarState& s, Potential pot, double b1, double b2,
                                 double beta0, double k) {
  const double r = s.r;
  double v = 0.0;
  if (pot == Potential::Oscillator) v = beta0 * r * r;
  if (pot == Potential::Coulomb) v = -k / r;
  return {(s.ptheta * s.ptheta + 4.0 * b1 / (s.theta * s.theta)) / (2.0 * r * r),
          0.5 * (s.pr * s.pr + 4.0 * b2 / (r * r)) + v};
}

/// Integrable polar Hamiltonian written out term by term before the
/// angular block is collected into the Casimir:
///   C/2 (k2 p_r^2 + p_theta^2 / S^2) + 2 C / S^2 (b1 / S2^2 + k2 b2 / C2^2) + k2 g.
inline double polar_expanded(const PolarState& s, int k1, int k2, Potential pot, double b1,
                             double b2, double beta0, double k) {
  const double S = s1(k1, s.r);
  const double C = c1(k1, s.r);
  const double T = t1(k1, s.r);
  const double S2 = k2 > 0 ? std::sin(s.theta) : k2 < 0 ? std::sinh(s.theta) : s.theta;
  const double C2 = k2 > 0 ? std::cos(s.theta) : k2 < 0 ? std::cosh(s.theta) : 1.0;
  double g = 0.0;
  if (pot == Potential::Oscillator) g = beta0 * C * T * T;
  if (pot == Potential::Coulomb) g = -k * C / T;
  return 0.5 * C * (k2 * s.pr * s.pr + s.ptheta * s.ptheta / (S * S)) +
         2.0 * C / (S * S) * (b1 / (S2 * S2) + k2 * b2 / (C2 * C2)) + k2 * g;
}

}  // namespace ckspace::reference
