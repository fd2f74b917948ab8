#pragma once

// Signature-aware scalar kernels.
//
// Every expression that contains a contraction parameter j (with j^2 one of
// +1, 0, -1) is written through kappa = j^2 and the kernels below. The
// kappa = 0 branch of each kernel is the analytic contraction limit; the
// nilpotent parameter itself is never represented as a number.
//
// Kernels are templates over the scalar type so the same code evaluates on
// doubles and on (nested) jets. kappa is itself a scalar of that type: a jet
// kappa extracts kappa-linear coefficients.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "ckspace/errors.hpp"
#include "ckspace/jet.hpp"

namespace ckspace {

/// (kappa1, kappa2) = (j1^2, j2^2), each in {+1, 0, -1}.
class CKSignature {
 public:
  constexpr CKSignature() = default;
  /// Throws std::invalid_argument unless both components are in {+1,0,-1}.
  CKSignature(int kappa1, int kappa2);

  constexpr int kappa1() const { return k1_; }
  constexpr int kappa2() const { return k2_; }
  constexpr bool degenerate() const { return k2_ == 0; }

  friend constexpr bool operator==(CKSignature, CKSignature) = default;

 private:
  int k1_ = 1;
  int k2_ = 1;
};

struct SpaceInfo {
  std::string_view name;
  std::string_view title;
  CKSignature sig;
  /// -1 on the three Lorentzian spaces, where the Hamiltonian is flipped.
  int default_sign;
};

/// The nine Cayley-Klein planes, in a fixed order.
const std::array<SpaceInfo, 9>& all_spaces();
std::optional<SpaceInfo> find_space(std::string_view name);
const SpaceInfo& space_of(CKSignature sig);

/// Evaluation-time curvature parameters.
///
/// `k2` multiplies explicit kappa2 prefactors and polynomial occurrences;
/// `k2_arg` is what kernel arguments see (sin(j2 theta)/j2, sinh(j1^2 j2^2 z
/// q1^2)/..., ...). The two coincide for ordinary evaluation. They differ
/// only when the base/fiber split lifts kappa2 to a jet under the nilpotent
/// rule, where kernel arguments keep the order-0 value.
template <class T>
struct Kappa {
  T k1;
  T k2;
  T k2_arg;

  static Kappa of(CKSignature sig) {
    return {T(double(sig.kappa1())), T(double(sig.kappa2())),
            T(double(sig.kappa2()))};
  }
  static Kappa real(double k1, double k2) { return {T(k1), T(k2), T(k2)}; }
};

/// Re-expresses curvature parameters in a wider scalar type (e.g. T -> Jet<T>).
template <class U, class T>
Kappa<U> kappa_cast(const Kappa<T>& k) {
  return {U(k.k1), U(k.k2), U(k.k2_arg)};
}

namespace detail {

// Truncated series are used at kappa == 0 exactly; they carry the kappa
// derivatives of nested jets to third order.
template <class T>
T gsin_series(const T& kappa, const T& x) {
  const T u = kappa * x * x;
  return x * (1.0 - u / 6.0 + u * u / 120.0 - u * u * u / 5040.0);
}

template <class T>
T gcos_series(const T& kappa, const T& x) {
  const T u = kappa * x * x;
  return 1.0 - u / 2.0 + u * u / 24.0 - u * u * u / 720.0;
}

}  // namespace detail

/// S_kappa(x) = sin(j x)/j: sin, identity, sinh for kappa = +1, 0, -1.
template <class T>
T gsin(const T& kappa, const T& x) {
  const double k = value_of(kappa);
  if (k > 0) {
    const T s = sqrt(kappa);
    return sin(s * x) / s;
  }
  if (k < 0) {
    const T s = sqrt(-kappa);
    return sinh(s * x) / s;
  }
  if constexpr (is_jet_v<T>) {
    return detail::gsin_series(kappa, x);
  } else {
    return x;
  }
}

/// C_kappa(x) = cos(j x): cos, 1, cosh for kappa = +1, 0, -1.
template <class T>
T gcos(const T& kappa, const T& x) {
  const double k = value_of(kappa);
  if (k > 0) return cos(sqrt(kappa) * x);
  if (k < 0) return cosh(sqrt(-kappa) * x);
  if constexpr (is_jet_v<T>) {
    return detail::gcos_series(kappa, x);
  } else {
    return T(1.0);
  }
}

/// gsin/gcos; throws DomainError when |gcos| is below `guard`.
template <class T>
T gtan(const T& kappa, const T& x, double guard = kKernelGuard) {
  const T c = gcos(kappa, x);
  if (std::abs(value_of(c)) < guard) {
    throw DomainError("gtan: |gcos(kappa, x)| below guard " +
                      std::to_string(guard));
  }
  return gsin(kappa, x) / c;
}

template <class T>
  requires is_jet_v<T>
T gsin(double kappa, const T& x) {
  return gsin(T(kappa), x);
}
template <class T>
  requires is_jet_v<T>
T gcos(double kappa, const T& x) {
  return gcos(T(kappa), x);
}
template <class T>
  requires is_jet_v<T>
T gtan(double kappa, const T& x, double guard = kKernelGuard) {
  return gtan(T(kappa), x, guard);
}

/// Below this |u| sinhc and expm1c switch to their Taylor series.
inline constexpr double kSeriesSwitch = 1e-4;

/// sinh(u)/u, equal to 1 at u = 0.
template <class T>
T sinhc(const T& u) {
  if (std::abs(value_of(u)) < kSeriesSwitch) {
    const T u2 = u * u;
    return 1.0 + u2 / 6.0 + u2 * u2 / 120.0;
  }
  return sinh(u) / u;
}

/// sinh(a x)/a, equal to x at a = 0.
template <class T>
T shz(const T& a, const T& x) {
  return x * sinhc(a * x);
}

/// (e^u - 1)/u, equal to 1 at u = 0.
template <class T>
T expm1c(const T& u) {
  if (std::abs(value_of(u)) < kSeriesSwitch) {
    return 1.0 + u * (1.0 / 2.0 + u * (1.0 / 6.0 + u * (1.0 / 24.0 + u / 120.0)));
  }
  return expm1(u) / u;
}

}  // namespace ckspace
