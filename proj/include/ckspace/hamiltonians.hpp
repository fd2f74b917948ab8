#pragma once

// Hamiltonian catalog: free, Smorodinsky-Winternitz and Kepler-Coulomb
// systems in Beltrami and polar variables, integrable and superintegrable,
// plus the base/fiber decomposition on degenerate-metric planes.

#include <cmath>
#include <string>
#include <string_view>

#include "ckspace/ck_scalar.hpp"
#include "ckspace/coalgebra.hpp"
#include "ckspace/errors.hpp"
#include "ckspace/phase.hpp"

namespace ckspace {

enum class Family { Free, SW, KC };
enum class Variant { Integrable, Superintegrable };
enum class Coords { Beltrami, Polar };

std::string_view to_string(Family f);
std::string_view to_string(Variant v);
std::string_view to_string(Coords c);
/// Throws std::invalid_argument on unknown names.
Family parse_family(std::string_view s);
Variant parse_variant(std::string_view s);
Coords parse_coords(std::string_view s);

struct HamiltonianSpec {
  Family family = Family::Free;
  Variant variant = Variant::Integrable;
  Coords coords = Coords::Beltrami;
  ModelParams params;
  CKSignature sig;
};

namespace detail {

template <class T>
T kernel_jminus(const BeltramiPoint<T>& s, const Kappa<T>& k) {
  return s.q2 * s.q2 + k.k2_arg * s.q1 * s.q1;
}

template <class T>
T beltrami_super_factor(const BeltramiPoint<T>& s, const ModelParams& m, const Kappa<T>& k,
                        Variant v) {
  if (v == Variant::Integrable) return T(1.0);
  return exp(k.k1 * m.z * kernel_jminus(s, k));
}

}  // namespace detail

/// 1/2 J+ (integrable) or 1/2 J+ exp(k1 z J-) (superintegrable), times sign.
template <class T>
T h_free(const BeltramiPoint<T>& s, const ModelParams& m, const Kappa<T>& k, Variant v) {
  const T h = 0.5 * generators(s, m, k).jplus;
  return double(m.sign) * h * detail::beltrami_super_factor(s, m, k, v);
}

/// 1/2 J+ + k2 beta0 sinh(k1 z J-)/(k1 z); the superintegrable form carries
/// exp(k1 z J-) on both terms.
template <class T>
T h_sw(const BeltramiPoint<T>& s, const ModelParams& m, const Kappa<T>& k, Variant v) {
  T h = 0.5 * generators(s, m, k).jplus;
  if (m.beta0 != 0.0) {
    h += k.k2 * m.beta0 * shz(k.k1 * m.z, detail::kernel_jminus(s, k));
  }
  return double(m.sign) * h * detail::beltrami_super_factor(s, m, k, v);
}

/// Kepler-Coulomb potential factor sqrt(2 k1 z / (e^{2 k1 z J-} - 1)) e^{2 k1 z J-},
/// evaluated as sqrt(1 / (J- expm1c(2 k1 z J-))) e^{2 k1 z J-} so the flat
/// limit sqrt(1/J-) is a plain evaluation.
template <class T>
T kc_potential_factor(const T& jminus, const T& k1z) {
  const T u = 2.0 * k1z * jminus;
  const T denom = jminus * expm1c(u);
  if (!(value_of(denom) > kKernelGuard)) {
    throw DomainError("h_kc: radicand 1/(J- expm1c) is negative or singular (J- = " +
                      std::to_string(value_of(jminus)) + ")");
  }
  return sqrt(1.0 / denom) * exp(u);
}

/// 1/2 J+ - k2 gamma sqrt(...) e^{...}. The superintegrable form multiplies
/// by exp(k1 z J-) as for the other families.
template <class T>
T h_kc(const BeltramiPoint<T>& s, const ModelParams& m, const Kappa<T>& k,
       Variant v = Variant::Integrable) {
  T h = 0.5 * generators(s, m, k).jplus;
  if (m.gamma != 0.0) {
    h -= k.k2 * m.gamma * kc_potential_factor(detail::kernel_jminus(s, k), T(k.k1 * m.z));
  }
  return double(m.sign) * h * detail::beltrami_super_factor(s, m, k, v);
}

namespace detail {

template <class T>
void check_kernel(const T& v, const char* what) {
  if (std::abs(value_of(v)) < kKernelGuard) {
    throw DomainError(std::string(what) + " below guard 1e-12");
  }
}

}  // namespace detail

/// p_theta^2 + 4 b1 / S2(theta)^2 + 4 k2 b2 / C2(theta)^2; independent of (r, p_r).
template <class T>
T casimir_polar(const PolarPoint<T>& s, const ModelParams& m, const Kappa<T>& k) {
  T c = s.ptheta * s.ptheta;
  if (m.b1 != 0.0) {
    const T s2 = gsin(k.k2_arg, s.theta);
    detail::check_kernel(s2, "casimir_polar: |gsin(kappa2, theta)|");
    c += 4.0 * m.b1 / (s2 * s2);
  }
  if (m.b2 != 0.0) {
    const T c2 = gcos(k.k2_arg, s.theta);
    detail::check_kernel(c2, "casimir_polar: |gcos(kappa2, theta)|");
    c += 4.0 * k.k2 * m.b2 / (c2 * c2);
  }
  return c;
}

/// Radial potential of the superintegrable polar Hamiltonian:
/// 0, beta0 T1^2, -k / T1 for Free, SW, KC.
template <class T>
T polar_potential_super(const T& r, const ModelParams& m, const Kappa<T>& k, Family f) {
  switch (f) {
    case Family::Free:
      return T(0.0);
    case Family::SW: {
      const T t1 = gtan(k.k1, r);
      return m.beta0 * t1 * t1;
    }
    case Family::KC: {
      const T s1 = gsin(k.k1, r);
      detail::check_kernel(s1, "polar_potential: |gsin(kappa1, r)|");
      return -m.k * gcos(k.k1, r) / s1;
    }
  }
  return T(0.0);
}

/// Radial potential g(r) of the integrable polar Hamiltonian:
/// 0, beta0 C1 T1^2, -k C1 / T1 for Free, SW, KC.
template <class T>
T polar_potential(const T& r, const ModelParams& m, const Kappa<T>& k, Family f) {
  return gcos(k.k1, r) * polar_potential_super(r, m, k, f);
}

/// Polar Hamiltonian, times sign. Superintegrable:
///   k2 p_r^2 / 2 + C_polar / (2 S1^2) + k2 g(r) / C1;
/// integrable is that expression multiplied by C1,
///   k2 C1 p_r^2 / 2 + C1 / (2 S1^2) C_polar + k2 g(r).
template <class T>
T h_polar(const PolarPoint<T>& s, const ModelParams& m, const Kappa<T>& k, Family f, Variant v) {
  const T s1 = gsin(k.k1, s.r);
  detail::check_kernel(s1, "h_polar: |gsin(kappa1, r)|");
  T h = k.k2 * 0.5 * s.pr * s.pr + casimir_polar(s, m, k) / (2.0 * s1 * s1);
  if (f != Family::Free) h += k.k2 * polar_potential_super(s.r, m, k, f);
  if (v == Variant::Integrable) h = gcos(k.k1, s.r) * h;
  return double(m.sign) * h;
}

/// Hamiltonian described by `spec` on a phase point of its coordinate system.
template <class T>
T hamiltonian(const HamiltonianSpec& spec, const Phase<T>& x, const Kappa<T>& k) {
  const ModelParams& m = spec.params;
  if (spec.coords == Coords::Polar) {
    return h_polar(PolarPoint<T>::from(x), m, k, spec.family, spec.variant);
  }
  const auto s = BeltramiPoint<T>::from(x);
  switch (spec.family) {
    case Family::Free:
      return h_free(s, m, k, spec.variant);
    case Family::SW:
      return h_sw(s, m, k, spec.variant);
    case Family::KC:
      return h_kc(s, m, k, spec.variant);
  }
  return T(0.0);
}

template <class T>
T hamiltonian(const HamiltonianSpec& spec, const Phase<T>& x) {
  return hamiltonian(spec, x, Kappa<T>::of(spec.sig));
}

/// Casimir conserved by `spec`'s flow: two-particle Casimir in Beltrami
/// variables, C_polar in polar variables.
template <class T>
T casimir(const HamiltonianSpec& spec, const Phase<T>& x, const Kappa<T>& k) {
  if (spec.coords == Coords::Polar) return casimir_polar(PolarPoint<T>::from(x), spec.params, k);
  return casimir_two_particle(BeltramiPoint<T>::from(x), spec.params, k);
}

template <class T>
T casimir(const HamiltonianSpec& spec, const Phase<T>& x) {
  return casimir(spec, x, Kappa<T>::of(spec.sig));
}

/// How kappa2 enters kernel arguments when it is lifted to a jet.
enum class SplitRule {
  /// Kernel arguments see kappa2 = 0 exactly (sin(j2 theta)/j2 -> theta,
  /// sinh(j1^2 j2^2 z q1^2)/(...) -> 1); only explicit kappa2 factors carry
  /// the infinitesimal. Reproduces the closed-form base/fiber Hamiltonians.
  Nilpotent,
  /// Full first-order Taylor coefficient in kappa2, including the kappa2
  /// dependence of kernel arguments.
  Taylor,
};

/// Fiber (order-0) and base (kappa2-linear) parts of a Hamiltonian on a
/// degenerate plane, read off from one jet evaluation with kappa2 = 0 + eta.
class BaseFiberSplit {
 public:
  /// Throws DomainError unless spec.sig.kappa2() == 0.
  explicit BaseFiberSplit(HamiltonianSpec spec, SplitRule rule = SplitRule::Nilpotent);

  const HamiltonianSpec& spec() const { return spec_; }
  SplitRule rule() const { return rule_; }

  template <class T>
  Jet<T> lifted(const Phase<T>& x) const {
    using U = Jet<T>;
    Phase<U> xs;
    for (std::size_t i = 0; i < 4; ++i) xs[i] = constant(x[i]);
    Kappa<U> k;
    k.k1 = U(double(spec_.sig.kappa1()));
    k.k2 = U(T(0.0), T(1.0));
    k.k2_arg = (rule_ == SplitRule::Nilpotent) ? U(0.0) : k.k2;
    return hamiltonian(spec_, xs, k);
  }

  template <class T>
  T fiber(const Phase<T>& x) const {
    return lifted(x).val;
  }
  template <class T>
  T base(const Phase<T>& x) const {
    return lifted(x).der;
  }

  /// Casimir of the fiber motion (kappa2 = 0 part of the full Casimir).
  template <class T>
  T fiber_casimir(const Phase<T>& x) const {
    return casimir(spec_, x, Kappa<T>::of(spec_.sig));
  }

 private:
  HamiltonianSpec spec_;
  SplitRule rule_;
};

inline BaseFiberSplit split_base_fiber(const HamiltonianSpec& spec,
                                       SplitRule rule = SplitRule::Nilpotent) {
  return BaseFiberSplit(spec, rule);
}

}  // namespace ckspace
