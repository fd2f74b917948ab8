#pragma once

// Canonical phase-space points and the exact-derivative bracket engine.

#include <array>
#include <cmath>
#include <cstddef>

#include "ckspace/jet.hpp"

namespace ckspace {

/// (coordinate1, coordinate2, momentum1, momentum2).
template <class T>
using Phase = std::array<T, 4>;

template <class T>
struct BeltramiPoint {
  T q1{}, q2{}, p1{}, p2{};

  static BeltramiPoint from(const Phase<T>& s) { return {s[0], s[1], s[2], s[3]}; }
  Phase<T> phase() const { return {q1, q2, p1, p2}; }
};

template <class T>
struct PolarPoint {
  T r{}, theta{}, pr{}, ptheta{};

  static PolarPoint from(const Phase<T>& s) { return {s[0], s[1], s[2], s[3]}; }
  Phase<T> phase() const { return {r, theta, pr, ptheta}; }
};

using BeltramiState = BeltramiPoint<double>;
using PolarState = PolarPoint<double>;

inline bool all_finite(const Phase<double>& s) {
  for (double v : s) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

/// Exact gradient of a scalar phase function by forward jets, one pass per
/// component. `f` must accept Phase<Jet<T>>.
template <class T, class F>
Phase<T> gradient(F&& f, const Phase<T>& s) {
  Phase<T> grad{};
  for (std::size_t i = 0; i < 4; ++i) {
    Phase<Jet<T>> lifted;
    for (std::size_t j = 0; j < 4; ++j) {
      lifted[j] = (i == j) ? variable(s[j]) : constant(s[j]);
    }
    grad[i] = f(lifted).der;
  }
  return grad;
}

/// Hamiltonian vector field (dq/dt, dp/dt) = (dH/dp, -dH/dq).
inline Phase<double> symplectic_flow(const Phase<double>& grad) {
  return {grad[2], grad[3], -grad[0], -grad[1]};
}

/// Canonical bracket {f, g} = sum_i df/dq_i dg/dp_i - df/dp_i dg/dq_i.
template <class T, class F, class G>
T poisson_bracket(F&& f, G&& g, const Phase<T>& s) {
  const auto df = gradient(f, s);
  const auto dg = gradient(g, s);
  return (df[0] * dg[2] - df[2] * dg[0]) + (df[1] * dg[3] - df[3] * dg[1]);
}

}  // namespace ckspace
