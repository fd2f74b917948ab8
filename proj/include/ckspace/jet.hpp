#pragma once

// First-order jets a + b*eta with eta^2 = 0.
//
// Jet<T> is closed under arithmetic and the elementary functions below, and
// nests: Jet<Jet<double>> carries two independent infinitesimals, which is
// how mixed derivatives (e.g. the phase-space gradient of a kappa2
// coefficient) are taken.

#include <cmath>
#include <ostream>
#include <type_traits>

namespace ckspace {

template <class T>
struct Jet {
  T val{};
  T der{};

  constexpr Jet() = default;
  constexpr Jet(T v) : val(v), der{} {}  // NOLINT(google-explicit-constructor)
  constexpr Jet(T v, T d) : val(v), der(d) {}

  // Allows Jet<Jet<double>> x = 2.0;
  template <class U>
    requires(std::is_arithmetic_v<U> && !std::is_same_v<T, U>)
  constexpr Jet(U v) : val(T(v)), der{} {}  // NOLINT(google-explicit-constructor)

  constexpr Jet& operator+=(const Jet& o) {
    val += o.val;
    der += o.der;
    return *this;
  }
  constexpr Jet& operator-=(const Jet& o) {
    val -= o.val;
    der -= o.der;
    return *this;
  }
  constexpr Jet& operator*=(const Jet& o) {
    der = der * o.val + val * o.der;
    val *= o.val;
    return *this;
  }
  constexpr Jet& operator/=(const Jet& o) {
    const T v = val / o.val;
    der = (der - v * o.der) / o.val;
    val = v;
    return *this;
  }
};

template <class T>
struct is_jet : std::false_type {};
template <class T>
struct is_jet<Jet<T>> : std::true_type {};
template <class T>
inline constexpr bool is_jet_v = is_jet<T>::value;

// Innermost real value; branch decisions are made on this.
constexpr double value_of(double x) { return x; }
constexpr double value_of(long double x) { return double(x); }
// Class-type scalars (e.g. a binary128 wrapper) convert explicitly.
template <class T>
  requires(std::is_class_v<T> && std::is_constructible_v<double, T>)
constexpr double value_of(const T& x) {
  return static_cast<double>(x);
}
template <class T>
constexpr double value_of(const Jet<T>& x) {
  return value_of(x.val);
}

template <class T>
constexpr Jet<T> operator+(Jet<T> a, const Jet<T>& b) {
  return a += b;
}
template <class T>
constexpr Jet<T> operator-(Jet<T> a, const Jet<T>& b) {
  return a -= b;
}
template <class T>
constexpr Jet<T> operator*(Jet<T> a, const Jet<T>& b) {
  return a *= b;
}
template <class T>
constexpr Jet<T> operator/(Jet<T> a, const Jet<T>& b) {
  return a /= b;
}
template <class T>
constexpr Jet<T> operator-(const Jet<T>& a) {
  return {-a.val, -a.der};
}
template <class T>
constexpr Jet<T> operator+(const Jet<T>& a) {
  return a;
}

// Mixed arithmetic with plain doubles.
template <class T>
constexpr Jet<T> operator+(const Jet<T>& a, double b) {
  return {a.val + b, a.der};
}
template <class T>
constexpr Jet<T> operator+(double a, const Jet<T>& b) {
  return {a + b.val, b.der};
}
template <class T>
constexpr Jet<T> operator-(const Jet<T>& a, double b) {
  return {a.val - b, a.der};
}
template <class T>
constexpr Jet<T> operator-(double a, const Jet<T>& b) {
  return {a - b.val, -b.der};
}
template <class T>
constexpr Jet<T> operator*(const Jet<T>& a, double b) {
  return {a.val * b, a.der * b};
}
template <class T>
constexpr Jet<T> operator*(double a, const Jet<T>& b) {
  return {a * b.val, a * b.der};
}
template <class T>
constexpr Jet<T> operator/(const Jet<T>& a, double b) {
  return {a.val / b, a.der / b};
}
template <class T>
constexpr Jet<T> operator/(double a, const Jet<T>& b) {
  const T v = a / b.val;
  return {v, -v * b.der / b.val};
}

template <class T>
constexpr bool operator==(const Jet<T>& a, const Jet<T>& b) {
  return a.val == b.val && a.der == b.der;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Jet<T>& j) {
  return os << '(' << j.val << " + " << j.der << " eta)";
}

// Elementary functions. Each follows f(a + b eta) = f(a) + b f'(a) eta and
// recurses into T, so nested jets differentiate to second order.
using std::acos;
using std::acosh;
using std::asin;
using std::asinh;
using std::atan;
using std::atan2;
using std::atanh;
using std::cos;
using std::cosh;
using std::exp;
using std::expm1;
using std::log;
using std::log1p;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tan;

template <class T>
Jet<T> sin(const Jet<T>& x) {
  return {sin(x.val), x.der * cos(x.val)};
}
template <class T>
Jet<T> cos(const Jet<T>& x) {
  return {cos(x.val), -x.der * sin(x.val)};
}
template <class T>
Jet<T> tan(const Jet<T>& x) {
  const T t = tan(x.val);
  return {t, x.der * (1.0 + t * t)};
}
template <class T>
Jet<T> sinh(const Jet<T>& x) {
  return {sinh(x.val), x.der * cosh(x.val)};
}
template <class T>
Jet<T> cosh(const Jet<T>& x) {
  return {cosh(x.val), x.der * sinh(x.val)};
}
template <class T>
Jet<T> exp(const Jet<T>& x) {
  const T e = exp(x.val);
  return {e, x.der * e};
}
template <class T>
Jet<T> expm1(const Jet<T>& x) {
  return {expm1(x.val), x.der * exp(x.val)};
}
template <class T>
Jet<T> log(const Jet<T>& x) {
  return {log(x.val), x.der / x.val};
}
template <class T>
Jet<T> log1p(const Jet<T>& x) {
  return {log1p(x.val), x.der / (1.0 + x.val)};
}
template <class T>
Jet<T> sqrt(const Jet<T>& x) {
  const T s = sqrt(x.val);
  return {s, x.der / (2.0 * s)};
}
template <class T>
Jet<T> asin(const Jet<T>& x) {
  return {asin(x.val), x.der / sqrt(1.0 - x.val * x.val)};
}
template <class T>
Jet<T> acos(const Jet<T>& x) {
  return {acos(x.val), -x.der / sqrt(1.0 - x.val * x.val)};
}
template <class T>
Jet<T> atan(const Jet<T>& x) {
  return {atan(x.val), x.der / (1.0 + x.val * x.val)};
}
template <class T>
Jet<T> asinh(const Jet<T>& x) {
  return {asinh(x.val), x.der / sqrt(x.val * x.val + 1.0)};
}
template <class T>
Jet<T> acosh(const Jet<T>& x) {
  return {acosh(x.val), x.der / sqrt(x.val * x.val - 1.0)};
}

template <class T>
Jet<T> atanh(const Jet<T>& x) {
  return {atanh(x.val), x.der / (1.0 - x.val * x.val)};
}
template <class T>
Jet<T> atan2(const Jet<T>& y, const Jet<T>& x) {
  const T r2 = x.val * x.val + y.val * y.val;
  return {atan2(y.val, x.val), (x.val * y.der - y.val * x.der) / r2};
}

// Seeds: variable(x) lifts x with unit derivative, constant(x) with zero.
template <class T>
constexpr Jet<T> variable(const T& x) {
  return {x, T(1.0)};
}
template <class T>
constexpr Jet<T> constant(const T& x) {
  return {x, T(0.0)};
}

}  // namespace ckspace
