#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ckspace/hamiltonians.hpp"
#include "ckspace/reference.hpp"
#include "ckspace/sampling.hpp"

using namespace ckspace;
using doctest::Approx;
namespace ref = ckspace::reference;

namespace {

constexpr double kPi = std::numbers::pi;

HamiltonianSpec make(Family f, Variant v, Coords c, CKSignature sig, ModelParams m = {}) {
  return {f, v, c, m, sig};
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

ref::Potential potential_of(Family f) {
  return f == Family::SW ? ref::Potential::Oscillator
         : f == Family::KC ? ref::Potential::Coulomb
                           : ref::Potential::None;
}

PolarState random_polar(Sampler& rng, int k1, int k2) {
  PolarState s;
  s.r = rng.uniform(0.3, k1 > 0 ? 1.3 : 1.5);
  s.theta = k2 < 0 ? rng.uniform(0.2, 1.2) : rng.uniform(0.2, 1.3);
  s.pr = rng.uniform(-1.0, 1.0);
  s.ptheta = rng.uniform(-1.0, 1.0);
  return s;
}

}  // namespace

TEST_CASE("name parsing round-trips") {
  for (auto f : {Family::Free, Family::SW, Family::KC}) CHECK(parse_family(to_string(f)) == f);
  for (auto v : {Variant::Integrable, Variant::Superintegrable}) {
    CHECK(parse_variant(to_string(v)) == v);
  }
  for (auto c : {Coords::Beltrami, Coords::Polar}) CHECK(parse_coords(to_string(c)) == c);
  CHECK_THROWS_AS(parse_family("harmonic"), std::invalid_argument);
}

TEST_CASE("Beltrami Hamiltonian examples") {
  ModelParams m;
  m.b1 = m.b2 = 1.0;
  const BeltramiState s{1.0, 1.0, 0.0, 0.0};
  CHECK(h_free(s, m, Kappa<double>::of(CKSignature(0, 1)), Variant::Integrable) == 1.0);
  CHECK(h_free(s, m, Kappa<double>::of(CKSignature(0, 0)), Variant::Integrable) == 0.5);
  ModelParams none;
  none.z = 0.6;
  for (const auto& sp : all_spaces()) {
    CHECK(h_free(BeltramiState{0.7, 1.4, 0.0, 0.0}, none, Kappa<double>::of(sp.sig),
                 Variant::Superintegrable) == 0.0);
  }

  ModelParams sw;
  sw.beta0 = 1.0;
  CHECK(h_sw(s, sw, Kappa<double>::of(CKSignature(0, 1)), Variant::Integrable) == 2.0);
  ModelParams kc;
  kc.gamma = 1.0;
  CHECK(h_kc(s, kc, Kappa<double>::of(CKSignature(0, 1))) ==
        Approx(-std::sqrt(0.5)).epsilon(1e-15));

  // Potentials sit at order kappa2.
  Sampler rng(31);
  ModelParams full;
  full.z = 0.4;
  full.b1 = 0.3;
  full.beta0 = 2.0;
  full.gamma = 1.5;
  for (int i = 0; i < 50; ++i) {
    const BeltramiState x{rng.uniform(0.5, 2), rng.uniform(0.5, 2), rng.uniform(-1, 1),
                          rng.uniform(-1, 1)};
    for (int k1 : {1, 0, -1}) {
      const auto k = Kappa<double>::of(CKSignature(k1, 0));
      const double half_jplus = 0.5 * generators(x, full, k).jplus;
      CHECK(h_sw(x, full, k, Variant::Integrable) == half_jplus);
      CHECK(h_kc(x, full, k) == half_jplus);
    }
  }
}

TEST_CASE("KC radicand guard") {
  ModelParams m;
  m.gamma = 1.0;
  m.z = 1.0;
  // kappa2 = -1 with |q1| > |q2| makes J- negative.
  CHECK_THROWS_AS(h_kc(BeltramiState{2.0, 1.0, 0.0, 0.0}, m, Kappa<double>::of(CKSignature(1, -1))),
                  DomainError);
}

TEST_CASE("polar Hamiltonian examples") {
  ModelParams m;
  const auto gal = Kappa<double>::of(CKSignature(0, 0));
  CHECK(h_polar(PolarState{1.0, 0.3, 1.0, 0.0}, m, gal, Family::Free, Variant::Integrable) ==
        0.0);  // the radial kinetic term is the base part, invisible at kappa2 = 0
  const auto base = split_base_fiber(
      make(Family::Free, Variant::Integrable, Coords::Polar, CKSignature(0, 0), m));
  CHECK(base.base(Phase<double>{1.0, 0.3, 1.0, 0.0}) == 0.5);
  m.b1 = 1.0;
  CHECK(h_polar(PolarState{2.0, 1.0, 0.0, 1.0}, m, gal, Family::Free, Variant::Integrable) ==
        Approx(0.625).epsilon(1e-15));

  ModelParams sw;
  sw.b1 = sw.b2 = sw.beta0 = 1.0;
  const double h = h_polar(PolarState{kPi / 4, kPi / 4, 0.0, 0.0}, sw,
                           Kappa<double>::of(CKSignature(1, 1)), Family::SW,
                           Variant::Superintegrable);
  CHECK(h == Approx(17.0).epsilon(1e-14));
}

TEST_CASE("polar Casimir examples") {
  ModelParams m;
  m.b1 = 1.0;
  CHECK(casimir_polar(PolarState{0.5, 1.0, 0.0, 2.0}, m, Kappa<double>::of(CKSignature(1, 0))) ==
        8.0);
  ModelParams none;
  CHECK(casimir_polar(PolarState{0.5, 0.4, 0.3, 1.7}, none,
                      Kappa<double>::of(CKSignature(1, -1))) == 1.7 * 1.7);
  m.b2 = 1.0;
  CHECK(casimir_polar(PolarState{0.5, kPi / 4, 0.0, 0.0}, m,
                      Kappa<double>::of(CKSignature(1, 1))) == Approx(16.0).epsilon(1e-14));
  CHECK_THROWS_AS(casimir_polar(PolarState{0.5, 0.0, 0.0, 0.0}, m,
                                Kappa<double>::of(CKSignature(1, 1))),
                  DomainError);
}

TEST_CASE("polar form equals the term-by-term expansion") {
  Sampler rng(32);
  double worst = 0.0;
  for (const auto& sp : all_spaces()) {
    const int k1 = sp.sig.kappa1();
    const int k2 = sp.sig.kappa2();
    for (auto f : {Family::Free, Family::SW, Family::KC}) {
      for (int i = 0; i < 100; ++i) {
        ModelParams m;
        m.b1 = rng.uniform(0, 1);
        m.b2 = rng.uniform(0, 1);
        m.beta0 = rng.uniform(-1, 1);
        m.k = rng.uniform(-1, 1);
        const auto s = random_polar(rng, k1, k2);
        const double h = h_polar(s, m, Kappa<double>::of(sp.sig), f, Variant::Integrable);
        const double e = ref::polar_expanded(s, k1, k2, potential_of(f), m.b1, m.b2, m.beta0, m.k);
        worst = std::max(worst, rel(h, e));
      }
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("superintegrable form times C1 is the integrable form") {
  Sampler rng(33);
  for (const auto& sp : all_spaces()) {
    const auto k = Kappa<double>::of(sp.sig);
    for (auto f : {Family::Free, Family::SW, Family::KC}) {
      for (int i = 0; i < 100; ++i) {
        ModelParams m;
        m.b1 = rng.uniform(0, 1);
        m.b2 = rng.uniform(0, 1);
        m.beta0 = rng.uniform(-1, 1);
        m.k = rng.uniform(-1, 1);
        m.sign = sp.default_sign;
        const auto s = random_polar(rng, sp.sig.kappa1(), sp.sig.kappa2());
        const double hs = h_polar(s, m, k, f, Variant::Superintegrable);
        const double hi = h_polar(s, m, k, f, Variant::Integrable);
        CHECK(std::abs(hs * gcos(double(sp.sig.kappa1()), s.r) - hi) < 1e-13);
      }
    }
  }
}

TEST_CASE("every Hamiltonian commutes with its Casimir") {
  Sampler rng(34);
  double worst = 0.0;
  for (const auto& sp : all_spaces()) {
    for (auto f : {Family::Free, Family::SW, Family::KC}) {
      for (auto v : {Variant::Integrable, Variant::Superintegrable}) {
        for (auto c : {Coords::Beltrami, Coords::Polar}) {
          for (int i = 0; i < 20; ++i) {
            ModelParams m;
            m.z = rng.uniform(-1, 1);
            m.b1 = rng.uniform(0, 1);
            m.b2 = rng.uniform(0, 1);
            m.beta0 = rng.uniform(-1, 1);
            m.k = rng.uniform(-1, 1);
            m.gamma = rng.uniform(-1, 1);
            m.sign = sp.default_sign;
            const auto spec = make(f, v, c, sp.sig, m);
            Phase<Extended> x;
            if (c == Coords::Beltrami) {
              // J- > 0 keeps the KC radicand real on the Lorentzian planes.
              const double q2 = rng.uniform(1.0, 2.0);
              x = {Extended(rng.uniform(0.5, 0.9 * q2)), Extended(q2),
                   Extended(rng.uniform(-1, 1)), Extended(rng.uniform(-1, 1))};
            } else {
              const auto s = random_polar(rng, sp.sig.kappa1(), sp.sig.kappa2());
              x = {Extended(s.r), Extended(s.theta), Extended(s.pr), Extended(s.ptheta)};
            }
            using JX = Jet<Extended>;
            const auto h = [&](const Phase<JX>& y) { return hamiltonian(spec, y); };
            const auto cas = [&](const Phase<JX>& y) { return casimir(spec, y); };
            worst = std::max(worst, double(std::abs(poisson_bracket(h, cas, x))));
          }
        }
      }
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("base/fiber split rejects non-degenerate planes") {
  CHECK_THROWS_AS(split_base_fiber(make(Family::Free, Variant::Integrable, Coords::Beltrami,
                                        CKSignature(1, 1))),
                  DomainError);
  CHECK_NOTHROW(split_base_fiber(make(Family::Free, Variant::Integrable, Coords::Beltrami,
                                      CKSignature(-1, 0))));
}

TEST_CASE("split: fiber + eta base reproduces the lifted Hamiltonian") {
  // On a degenerate plane the order-0 part is the plain Hamiltonian.
  Sampler rng(35);
  for (int k1 : {1, 0, -1}) {
    ModelParams m;
    m.z = 0.5;
    m.b1 = 0.7;
    m.b2 = 0.4;
    m.beta0 = 1.1;
    m.gamma = 0.8;
    for (auto f : {Family::Free, Family::SW, Family::KC}) {
      const auto spec = make(f, Variant::Integrable, Coords::Beltrami, CKSignature(k1, 0), m);
      const auto split = split_base_fiber(spec);
      const Phase<double> x{rng.uniform(0.5, 2), rng.uniform(0.5, 2), rng.uniform(-1, 1),
                            rng.uniform(-1, 1)};
      CHECK(split.fiber(x) == hamiltonian(spec, x));
    }
  }
}

TEST_CASE("split: Beltrami free system matches the closed forms") {
  Sampler rng(36);
  double worst = 0.0;
  for (int k1 : {1, 0, -1}) {
    for (int i = 0; i < 500; ++i) {
      ModelParams m;
      m.z = rng.signed_uniform(0.1, 1.0);
      m.b1 = rng.uniform(0, 1);
      m.b2 = rng.uniform(0, 1);
      const BeltramiState s{rng.uniform(0.5, 2), rng.uniform(0.5, 2), rng.uniform(-1, 1),
                            rng.uniform(-1, 1)};
      const auto split = split_base_fiber(
          make(Family::Free, Variant::Integrable, Coords::Beltrami, CKSignature(k1, 0), m));
      const auto want = k1 == 0 ? ref::beltrami_flat(s, m.b1, m.b2)
                                : ref::beltrami_curved(s, k1, m.z, m.b1, m.b2);
      worst = std::max({worst, rel(split.fiber(s.phase()), want.fiber),
                        rel(split.base(s.phase()), want.base)});
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("split: polar systems match the closed forms") {
  Sampler rng(37);
  for (int k1 : {1, 0, -1}) {
    for (auto f : {Family::Free, Family::SW, Family::KC}) {
      for (auto v : {Variant::Integrable, Variant::Superintegrable}) {
        double worst = 0.0;
        for (int i = 0; i < 500; ++i) {
          ModelParams m;
          m.b1 = rng.uniform(0, 1);
          m.b2 = rng.uniform(0, 1);
          m.beta0 = rng.uniform(-1, 1);
          m.k = rng.uniform(-1, 1);
          const auto s = random_polar(rng, k1, 0);
          const auto split =
              split_base_fiber(make(f, v, Coords::Polar, CKSignature(k1, 0), m));
          const auto p = potential_of(f);
          ref::Split want;
          if (v == Variant::Integrable) {
            want = k1 == 0 ? ref::polar_galilei_integrable(s, p, m.b1, m.b2, m.beta0, m.k)
                           : ref::polar_newton_integrable(s, k1, p, m.b1, m.b2, m.beta0, m.k);
          } else {
            want = k1 == 0 ? ref::polar_galilei_super(s, p, m.b1, m.b2, m.beta0, m.k)
                           : ref::polar_newton_super(s, k1, p, m.b1, m.b2, m.beta0, m.k);
          }
          worst = std::max({worst, rel(split.fiber(s.phase()), want.fiber),
                            rel(split.base(s.phase()), want.base)});
        }
        INFO("k1=" << k1 << " family=" << to_string(f) << " variant=" << to_string(v));
        CHECK(worst < 1e-12);
      }
    }
  }
}

TEST_CASE("split: SW and KC share the fiber Hamiltonian") {
  ModelParams m;
  m.b1 = 0.6;
  m.b2 = 0.2;
  m.beta0 = 1.3;
  m.k = 0.9;
  const Phase<double> x{0.8, 0.5, 0.3, -0.4};
  for (int k1 : {1, 0, -1}) {
    const auto sw = split_base_fiber(
        make(Family::SW, Variant::Superintegrable, Coords::Polar, CKSignature(k1, 0), m));
    const auto kc = split_base_fiber(
        make(Family::KC, Variant::Superintegrable, Coords::Polar, CKSignature(k1, 0), m));
    CHECK(sw.fiber(x) == kc.fiber(x));
    CHECK(sw.base(x) != kc.base(x));
  }
}

TEST_CASE("split: the Taylor rule adds the theta-kernel term to the polar base") {
  // gsin(kappa2, theta)^-2 = theta^-2 (1 + kappa2 theta^2 / 3 + ...), so the
  // full kappa2 coefficient carries an extra 2 b1 C1 / (3 S1^2).
  ModelParams m;
  m.b1 = 0.9;
  const Phase<double> x{0.7, 0.6, 0.2, 0.5};
  for (int k1 : {1, -1}) {
    const auto spec = make(Family::Free, Variant::Integrable, Coords::Polar, CKSignature(k1, 0), m);
    const auto nil = split_base_fiber(spec, SplitRule::Nilpotent);
    const auto tay = split_base_fiber(spec, SplitRule::Taylor);
    const double S = ref::s1(k1, x[0]);
    const double C = ref::c1(k1, x[0]);
    CHECK(tay.base(x) - nil.base(x) == Approx(2.0 * m.b1 * C / (3.0 * S * S)).epsilon(1e-12));
    CHECK(tay.fiber(x) == nil.fiber(x));
  }
  // In Beltrami variables the kernel arguments enter at second order only.
  ModelParams mb;
  mb.z = 0.7;
  mb.b1 = 0.5;
  mb.b2 = 0.3;
  const Phase<double> y{1.1, 0.9, 0.4, -0.2};
  const auto spec = make(Family::Free, Variant::Integrable, Coords::Beltrami, CKSignature(1, 0), mb);
  CHECK(split_base_fiber(spec, SplitRule::Taylor).base(y) ==
        Approx(split_base_fiber(spec, SplitRule::Nilpotent).base(y)).epsilon(1e-14));
}

// The gap is the kappa-slope times 1e-6, and the kappa2-slope is the base
// Hamiltonian itself (2 b2 / S1^2, beta0 J- e^{k1 z J-}, ...). The box keeps
// those slopes O(1): |z| <= 1/4, q in [0.5, 1.5], J- >= 0.19 q2^2, r >= 0.5.
TEST_CASE("z -> 0 and kappa continuity of the Hamiltonians") {
  Sampler rng(38);
  double zgap = 0.0;
  double kgap = 0.0;
  for (int i = 0; i < 200; ++i) {
    ModelParams m;
    m.b1 = m.b2 = 0.5;
    m.beta0 = 0.7;
    m.gamma = 0.6;
    m.k = -0.4;
    m.z = rng.uniform(-0.25, 0.25);
    const double q2 = rng.uniform(1.0, 1.5);
    const Phase<double> x{rng.uniform(0.5, 0.9 * q2), q2, rng.uniform(-1, 1), rng.uniform(-1, 1)};
    for (const auto& sp : all_spaces()) {
      for (auto f : {Family::Free, Family::SW, Family::KC}) {
        auto spec0 = make(f, Variant::Superintegrable, Coords::Beltrami, sp.sig, m);
        spec0.params.z = 0.0;
        auto spec8 = spec0;
        spec8.params.z = 1e-8;
        zgap = std::max(zgap, std::abs(hamiltonian(spec8, x) - hamiltonian(spec0, x)));
      }
    }
    const PolarState ps{rng.uniform(0.5, 1.0), rng.uniform(0.3, 1.0), rng.uniform(-1, 1),
                        rng.uniform(-1, 1)};
    for (auto f : {Family::Free, Family::SW, Family::KC}) {
      for (auto v : {Variant::Integrable, Variant::Superintegrable}) {
        const auto sb = make(f, v, Coords::Beltrami, CKSignature(1, 1), m);
        const auto sp = make(f, v, Coords::Polar, CKSignature(1, 1), m);
        for (int k : {1, 0, -1}) {
          for (double d : {1e-6, -1e-6}) {
            const auto gap = [&](const HamiltonianSpec& spec, const Phase<double>& y) {
              return std::max(std::abs(hamiltonian(spec, y, Kappa<double>::real(d, k)) -
                                       hamiltonian(spec, y, Kappa<double>::real(0, k))),
                              std::abs(hamiltonian(spec, y, Kappa<double>::real(k, d)) -
                                       hamiltonian(spec, y, Kappa<double>::real(k, 0))));
            };
            kgap = std::max({kgap, gap(sb, x), gap(sp, ps.phase())});
          }
        }
      }
    }
  }
  CHECK(zgap < 1e-6);
  CHECK(kgap < 1e-5);
}
