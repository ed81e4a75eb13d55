#include <cmath>
#include <limits>

#include "polarcalc/logconcave.hpp"
#include "polarcalc/numeric.hpp"

namespace polarcalc::logconcave {

double ball_body_gauge(const LogConcaveFn& f, const Vector& x, double p) {
  const int n = f.dim();
  if (x.size() != n) throw Error(ErrorCode::DimMismatch, "point dimension differs from function dimension");
  if (p <= 0.0) p = n;
  const double f0 = f(Vector::Zero(n));
  if (!(f0 > 0.0)) throw Error(ErrorCode::ZeroAtOrigin, "Ball body of a function vanishing at 0");
  const double len = x.norm();
  if (len == 0.0) return 0.0;

  auto ray = [&](double r) { return r > 0.0 ? std::pow(r, p - 1.0) * f(r * x) : (p == 1.0 ? f0 : 0.0); };
  // Beyond `far` the function is below e^{-40} sup f (or zero).
  const double far = 2.0 * f.bounding_radius() * std::sqrt(static_cast<double>(n)) / len;
  double integral = 0.0;
  if (f(far * x) == 0.0) {
    // Compact support along the ray: locate its end so the quadrature never
    // straddles the jump.
    double lo = 0.0;
    double hi = far;
    for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (f(mid * x) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    integral = numeric::integrate(ray, 0.0, lo, 1e-10);
  } else {
    integral = numeric::integrate(ray, 0.0, far, 1e-10);
    // Quadrature of an underflowed tail never meets a relative tolerance.
    if (f(far * x) > 1e-200) {
      integral += numeric::integrate(ray, far, std::numeric_limits<double>::infinity(), 1e-10);
    }
  }
  if (!(integral > 0.0)) throw Error(ErrorCode::DegenerateInstance, "radial integral vanished");
  if (!std::isfinite(integral)) throw Error(ErrorCode::NotIntegrable, "radial integral diverges");
  return std::pow(p * integral / f0, -1.0 / p);
}

ConvexBody ball_body(const LogConcaveFn& f, double p) {
  const int n = f.dim();
  if (p <= 0.0) p = n;
  const double f0 = f(Vector::Zero(n));
  if (!(f0 > 0.0)) throw Error(ErrorCode::ZeroAtOrigin, "Ball body of a function vanishing at 0");
  auto fp = std::make_shared<const LogConcaveFn>(f);
  geometry::GaugeOracle g;
  g.dim = n;
  g.gauge = [fp, p](const Vector& x) { return ball_body_gauge(*fp, x, p); };
  // rho(u)^p <= (sup f / f(0)) (R^p + negligible tail).
  g.bounding_radius =
      1.05 * std::pow(sup_norm(f) / f0, 1.0 / p) * f.bounding_radius() * std::sqrt(static_cast<double>(n));
  double inner = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (double s : {-1.0, 1.0}) {
      Vector e = Vector::Zero(n);
      e(i) = s;
      inner = std::min(inner, 1.0 / g.gauge(e));
    }
  }
  g.inner_radius = inner / std::sqrt(static_cast<double>(n));
  g.description = "ball_body(" + f.description() + ")";
  return ConvexBody(std::move(g));
}

}  // namespace polarcalc::logconcave
