#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ckspace/ck_scalar.hpp"
#include "ckspace/sampling.hpp"

using namespace ckspace;
using doctest::Approx;

namespace {

// Reference values from an independent evaluation (Python math module).
constexpr double kSinh1 = 1.1752011936438014;
constexpr double kCosh1 = 1.5430806348152437;
constexpr double kShzHalf = 2.3504023872876028;

constexpr double kKappas[] = {1.0, 0.0, -1.0};

}  // namespace

TEST_CASE("signature validation and space table") {
  CHECK_THROWS_AS(CKSignature(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(CKSignature(0, -2), std::invalid_argument);
  CHECK(all_spaces().size() == 9);
  for (const auto& s : all_spaces()) {
    CHECK(space_of(s.sig).name == s.name);
    CHECK(find_space(s.name)->sig == s.sig);
  }
  CHECK(find_space("galilei")->sig.degenerate());
  CHECK(find_space("minkowski")->default_sign == -1);
  CHECK(find_space("anti-de-sitter")->sig == CKSignature(1, -1));
  CHECK_FALSE(find_space("torus").has_value());
}

TEST_CASE("gsin / gcos / gtan examples") {
  CHECK(gsin(0.0, 2.5) == 2.5);
  CHECK(gsin(1.0, std::numbers::pi / 2) == Approx(1.0).epsilon(1e-15));
  CHECK(gsin(-1.0, 1.0) == Approx(kSinh1).epsilon(1e-15));
  CHECK(gcos(0.0, 7.3) == 1.0);
  CHECK(gtan(0.0, 0.4) == 0.4);
  CHECK(gcos(-1.0, 1.0) == Approx(kCosh1).epsilon(1e-15));
  CHECK_THROWS_AS(gtan(1.0, std::numbers::pi / 2), DomainError);
}

TEST_CASE("sinhc / shz / expm1c examples") {
  CHECK(sinhc(0.0) == 1.0);
  CHECK(sinhc(1.0) == Approx(kSinh1).epsilon(1e-15));
  CHECK(std::abs(sinhc(1e-9) - 1.0) < 1e-17);
  CHECK(shz(0.0, 3.7) == 3.7);
  CHECK(shz(1.0, 1.0) == Approx(kSinh1).epsilon(1e-15));
  CHECK(shz(-0.5, 2.0) == Approx(kShzHalf).epsilon(1e-15));
  CHECK(expm1c(0.0) == 1.0);
  CHECK(expm1c(1.0) == Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
}

TEST_CASE("series branches join the closed forms") {
  for (double u : {0.99e-4, -0.99e-4, 1.01e-4, -1.01e-4, 3e-5}) {
    CHECK(std::abs(sinhc(u) - std::sinh(u) / u) < 1e-15);
    CHECK(std::abs(expm1c(u) - std::expm1(u) / u) < 1e-15);
  }
}

TEST_CASE("parity is exact") {
  Sampler rng(11);
  for (int i = 0; i < 200; ++i) {
    const double x = rng.uniform(-3.0, 3.0);
    for (double k : kKappas) {
      CHECK(gsin(k, -x) == -gsin(k, x));
      CHECK(gcos(k, -x) == gcos(k, x));
    }
    const double u = rng.uniform(-2.0, 2.0);
    CHECK(sinhc(-u) == sinhc(u));
    CHECK(sinhc(u) >= 1.0);
  }
}

TEST_CASE("generalized Pythagorean identity") {
  Sampler rng(12);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(-3.0, 3.0);
    for (double k : kKappas) {
      const double c = gcos(k, x);
      const double s = gsin(k, x);
      worst = std::max(worst, std::abs(c * c + k * s * s - 1.0) / std::max(1.0, c * c));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("kappa continuity") {
  Sampler rng(13);
  for (int i = 0; i < 500; ++i) {
    const double x = rng.uniform(-3.0, 3.0);
    for (double d : {1e-6, -1e-6}) {
      CHECK(std::abs(gsin(d, x) - x) <= std::abs(d) * std::abs(x * x * x) / 6.0 * 1.1);
      CHECK(std::abs(gcos(d, x) - 1.0) <= std::abs(d) * x * x / 2.0 * 1.1 + 1e-16);
      CHECK(std::abs(gtan(d, x) - x) < 1e-5);
      CHECK(std::abs(shz(d, x) - x) < 1e-5);
    }
  }
}

TEST_CASE("jet arithmetic") {
  const Jet<double> a{2.0, 3.0};
  const Jet<double> b{5.0, -1.0};
  CHECK((a + b) == Jet<double>{7.0, 2.0});
  CHECK((a * b) == Jet<double>{10.0, 13.0});
  CHECK((a / b).der == Approx((3.0 * 5.0 - 2.0 * -1.0) / 25.0));
  CHECK((1.0 / a).der == Approx(-3.0 / 4.0));

  // A constant lift stays constant through every kernel.
  const auto c = constant(0.7);
  for (double k : kKappas) {
    CHECK(gsin(k, c).der == 0.0);
    CHECK(gcos(k, c).der == 0.0);
    CHECK(gtan(k, c).der == 0.0);
  }
  CHECK(sinhc(c).der == 0.0);
  CHECK(expm1c(c).der == 0.0);
  CHECK(shz(constant(0.3), c).der == 0.0);
}

TEST_CASE("jet chain rule against closed-form derivatives") {
  double worst = 0.0;
  for (int i = 0; i <= 60; ++i) {
    const double x = -3.0 + 0.1 * i;
    const auto v = variable(x);
    worst = std::max(worst, std::abs(gsin(1.0, v).der - std::cos(x)));
    worst = std::max(worst, std::abs(gsin(0.0, v).der - 1.0));
    worst = std::max(worst, std::abs(gsin(-1.0, v).der - std::cosh(x)) / std::cosh(x));
    worst = std::max(worst, std::abs(gcos(1.0, v).der + std::sin(x)));
    worst = std::max(worst, std::abs(gcos(0.0, v).der));
    worst = std::max(worst, std::abs(gcos(-1.0, v).der - std::sinh(x)) / std::cosh(x));
    if (std::abs(std::cos(x)) > 0.1) {
      const double sec2 = 1.0 / (std::cos(x) * std::cos(x));
      worst = std::max(worst, std::abs(gtan(1.0, v).der - sec2) / sec2);
    }
    if (std::abs(x) > 1e-3) {
      const double ds = (x * std::cosh(x) - std::sinh(x)) / (x * x);
      worst = std::max(worst, std::abs(sinhc(v).der - ds));
      const double de = (x * std::exp(x) - std::expm1(x)) / (x * x);
      worst = std::max(worst, std::abs(expm1c(v).der - de) / std::exp(x));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("nested jets take second derivatives") {
  using JJ = Jet<Jet<double>>;
  const double x = 0.6;
  const JJ v{Jet<double>{x, 1.0}, Jet<double>{1.0, 0.0}};
  const JJ s = gsin(JJ(1.0), v);
  CHECK(s.der.der == Approx(-std::sin(x)).epsilon(1e-14));
  const JJ e = exp(v * v);
  CHECK(e.der.der == Approx((2.0 + 4.0 * x * x) * std::exp(x * x)).epsilon(1e-14));
}

TEST_CASE("a jet kappa at zero carries the kappa derivative") {
  // d/dkappa sin(sqrt(kappa) x)/sqrt(kappa) at kappa = 0 is -x^3/6.
  const double x = 1.3;
  const Jet<double> kappa{0.0, 1.0};
  CHECK(gsin(kappa, Jet<double>(x)).der == Approx(-x * x * x / 6.0));
  CHECK(gcos(kappa, Jet<double>(x)).der == Approx(-x * x / 2.0));
  // ...and agrees with the derivative taken at small nonzero kappa.
  const double h = 1e-6;
  const double fd = (gsin(h, x) - gsin(-h, x)) / (2.0 * h);
  CHECK(gsin(kappa, Jet<double>(x)).der == Approx(fd).epsilon(1e-8));
}
