#include "ckspace/geometry.hpp"

namespace ckspace {

MetricAt metric_at(double r, CKSignature sig) {
  const double k1 = sig.kappa1();
  const double c1 = gcos(k1, r);
  if (!(c1 > kKernelGuard)) throw ChartDomainError("metric_at: gcos(kappa1, r) <= 1e-12");
  const double s1 = gsin(k1, r);
  MetricAt g;
  g.g_rr = 1.0 / c1;
  g.fiber_g_thth = s1 * s1 / c1;
  g.g_thth = sig.kappa2() * g.fiber_g_thth;
  return g;
}

namespace {

constexpr double kCurvatureStep = 1e-4;

template <class F>
double d1(F&& f, double r, double h) {
  return (f(r + h) - f(r - h)) / (2.0 * h);
}

template <class F>
double d2(F&& f, double r, double h) {
  return (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h);
}

// One Richardson level for a second-order central difference.
template <class D>
double richardson(D&& d, double h) {
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

}  // namespace

double gaussian_curvature(double r, CKSignature sig) {
  if (sig.degenerate()) {
    throw DegenerateMetric("gaussian_curvature: metric is degenerate for kappa2 = 0");
  }
  const auto e = [&](double t) { return metric_at(t, sig).g_rr; };
  const auto g = [&](double t) { return metric_at(t, sig).g_thth; };
  const auto eg = [&](double t) { return e(t) * g(t); };
  const double h = kCurvatureStep;

  const double g1 = richardson([&](double s) { return d1(g, r, s); }, h);
  const double g2 = richardson([&](double s) { return d2(g, r, s); }, h);
  const double eg0 = eg(r);
  const double eg1 = richardson([&](double s) { return d1(eg, r, s); }, h);
  // K = -G''/(2EG) + G'(EG)'/(4 (EG)^2) for ds^2 = E(r) dr^2 + G(r) dtheta^2;
  // valid for either sign of G.
  return -g2 / (2.0 * eg0) + g1 * eg1 / (4.0 * eg0 * eg0);
}

}  // namespace ckspace
