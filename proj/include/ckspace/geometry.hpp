#pragma once

// Beltrami <-> polar charts on the Cayley-Klein planes, the polar metric and
// its Gaussian curvature.
//
// The radial and angular coordinates are fixed by
//   gcos(k1, r) = exp(-k1 (x^2 + k2 y^2) / 2),
//   gsin(k2, theta)^2 = [(1 - exp(-k1 k2 y^2)) / k2] / [1 - exp(-k1 (x^2 + k2 y^2))].
// Both are solved through the auxiliary amplitudes
//   S1^2 = (x^2 + k2 y^2) expm1c(-k1 (x^2 + k2 y^2)),  C1 = exp(-k1 (x^2 + k2 y^2) / 2),
//   X = x sqrt(expm1c(-k1 x^2) exp(-k1 k2 y^2)),        Y = y sqrt(expm1c(-k1 k2 y^2)),
// which satisfy C1^2 + k1 S1^2 = 1 and X^2 + k2 Y^2 = S1^2, so r and theta
// are generalized arguments of (C1, S1) and (X, Y). The convention
// x = sqrt(2) q2, y = sqrt(2) q1 links the chart to the realization
// variables. Charts do not depend on the deformation parameter z.

#include <cmath>
#include <utility>

#include "ckspace/ck_scalar.hpp"
#include "ckspace/errors.hpp"
#include "ckspace/phase.hpp"

namespace ckspace {

struct MetricAt {
  double g_rr = 0.0;
  double g_thth = 0.0;
  double fiber_g_thth = 0.0;  ///< S1^2 / C1, the angular part without kappa2
};

template <class T>
struct PlanePoint {
  T a{}, b{};
};

namespace detail {

/// Generalized argument: the angle t with gcos(kappa, t) : gsin(kappa, t) =
/// c : s (c > 0 required unless kappa = +1).
template <class T>
T garg(int kappa, const T& c, const T& s) {
  if (kappa > 0) return atan2(s, c);
  if (!(value_of(c) > 0.0)) throw ChartDomainError("chart: point outside the polar chart (C <= 0)");
  if (kappa == 0) return s / c;
  if (!(std::abs(value_of(s)) < value_of(c))) {
    throw ChartDomainError("chart: point on or beyond the light cone");
  }
  return atanh(s / c);
}

/// Solves w expm1c(-kappa w) = v for w >= 0, i.e. (1 - e^{-kappa w}) / kappa = v.
template <class T>
T solve_expm1c(double kappa, const T& v) {
  if (kappa == 0.0) return v;
  const T arg = -kappa * v;
  if (!(value_of(arg) > -1.0)) throw ChartDomainError("chart: polar point has no Beltrami preimage");
  return -log1p(arg) / kappa;
}

inline double sgn(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace detail

/// (x, y) -> (r, theta). Throws ChartDomainError outside the chart
/// (x^2 + k2 y^2 < 0, x <= 0 for k2 <= 0, light cone).
template <class T>
PlanePoint<T> beltrami_to_polar(const T& x, const T& y, CKSignature sig) {
  const int k1 = sig.kappa1();
  const int k2 = sig.kappa2();
  if (value_of(x) == 0.0 && value_of(y) == 0.0) return {T(0.0), T(0.0)};
  const T rho2 = x * x + double(k2) * y * y;
  if (!(value_of(rho2) > 0.0)) {
    throw ChartDomainError("beltrami_to_polar: x^2 + kappa2 y^2 <= 0 away from the origin");
  }
  const T c1 = exp(-0.5 * k1 * rho2);
  const T s1 = sqrt(rho2 * expm1c(T(-double(k1) * rho2)));
  const T r = detail::garg(k1, c1, s1);

  const T yy = double(k1 * k2) * y * y;
  const T big_x = x * sqrt(expm1c(T(-double(k1) * x * x)) * exp(-yy));
  const T big_y = y * sqrt(expm1c(-yy));
  const T theta = detail::garg(k2, big_x, big_y);
  return {r, theta};
}

/// (r, theta) -> (x, y); inverse of beltrami_to_polar on the chart.
template <class T>
PlanePoint<T> polar_to_beltrami(const T& r, const T& theta, CKSignature sig) {
  const int k1 = sig.kappa1();
  const int k2 = sig.kappa2();
  if (value_of(r) < 0.0) throw ChartDomainError("polar_to_beltrami: r < 0");
  const T kk1{double(k1)};
  const T kk2{double(k2)};
  const T s1 = gsin(kk1, r);
  const T c1 = gcos(kk1, r);
  if (!(value_of(c1) > 0.0)) throw ChartDomainError("polar_to_beltrami: gcos(kappa1, r) <= 0");
  const T big_x = gcos(kk2, theta) * s1;
  const T big_y = gsin(kk2, theta) * s1;

  const T y2 = detail::solve_expm1c(double(k1 * k2), big_y * big_y);
  const T v = big_x * big_x * exp(double(k1 * k2) * y2);
  const T x2 = detail::solve_expm1c(double(k1), v);
  const double sx = detail::sgn(value_of(big_x));
  const double sy = detail::sgn(value_of(big_y));
  // sqrt of an exact zero has no derivative; the origin maps to itself.
  const T x = value_of(x2) > 0.0 ? sx * sqrt(x2) : T(0.0);
  const T y = value_of(y2) > 0.0 ? sy * sqrt(y2) : T(0.0);
  return {x, y};
}

/// Point transformation (x, y, p_x, p_y) -> (r, theta, p_r, p_theta) with
/// momenta lifted canonically: (p_r, p_theta) = J^T (p_x, p_y),
/// J = d(x, y)/d(r, theta).
template <class T>
Phase<T> plane_to_polar(const Phase<T>& xp, CKSignature sig) {
  const auto [r, theta] = beltrami_to_polar(xp[0], xp[1], sig);
  const T s1 = gsin(T(double(sig.kappa1())), r);
  if (std::abs(value_of(s1)) < kKernelGuard) {
    throw JacobianSingular("plane_to_polar: gsin(kappa1, r) = 0 (chart origin)");
  }
  const auto dr = polar_to_beltrami(variable(r), constant(theta), sig);
  const auto dt = polar_to_beltrami(constant(r), variable(theta), sig);
  const T pr = dr.a.der * xp[2] + dr.b.der * xp[3];
  const T pt = dt.a.der * xp[2] + dt.b.der * xp[3];
  return {r, theta, pr, pt};
}

/// Inverse of plane_to_polar: (p_x, p_y) = K^T (p_r, p_theta),
/// K = d(r, theta)/d(x, y).
template <class T>
Phase<T> polar_to_plane(const Phase<T>& rp, CKSignature sig) {
  const T s1 = gsin(T(double(sig.kappa1())), rp[0]);
  if (std::abs(value_of(s1)) < kKernelGuard) {
    throw JacobianSingular("polar_to_plane: gsin(kappa1, r) = 0 (chart origin)");
  }
  const auto [x, y] = polar_to_beltrami(rp[0], rp[1], sig);
  const auto dx = beltrami_to_polar(variable(x), constant(y), sig);
  const auto dy = beltrami_to_polar(constant(x), variable(y), sig);
  const T px = dx.a.der * rp[2] + dx.b.der * rp[3];
  const T py = dy.a.der * rp[2] + dy.b.der * rp[3];
  return {x, y, px, py};
}

/// Realization variables <-> plane variables: x = sqrt(2) q2, y = sqrt(2) q1,
/// p_x = p2 / sqrt(2), p_y = p1 / sqrt(2).
template <class T>
Phase<T> beltrami_state_to_plane(const BeltramiPoint<T>& s) {
  const double r2 = std::sqrt(2.0);
  return {r2 * s.q2, r2 * s.q1, s.p2 / r2, s.p1 / r2};
}

template <class T>
BeltramiPoint<T> plane_to_beltrami_state(const Phase<T>& xp) {
  const double r2 = std::sqrt(2.0);
  return {xp[1] / r2, xp[0] / r2, xp[3] * r2, xp[2] * r2};
}

template <class T>
PolarPoint<T> to_polar(const BeltramiPoint<T>& s, CKSignature sig) {
  return PolarPoint<T>::from(plane_to_polar(beltrami_state_to_plane(s), sig));
}

template <class T>
BeltramiPoint<T> to_beltrami(const PolarPoint<T>& s, CKSignature sig) {
  return plane_to_beltrami_state(polar_to_plane(s.phase(), sig));
}

/// ds^2 = dr^2 / C1 + k2 (S1^2 / C1) dtheta^2. Throws ChartDomainError when
/// gcos(k1, r) is not positive.
MetricAt metric_at(double r, CKSignature sig);

/// Gaussian curvature of the polar metric from central differences (step
/// 1e-4, one Richardson level). Throws DegenerateMetric for k2 = 0.
double gaussian_curvature(double r, CKSignature sig);

}  // namespace ckspace
