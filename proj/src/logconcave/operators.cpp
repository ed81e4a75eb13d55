#include <cmath>
#include <limits>

#include "polarcalc/logconcave.hpp"
#include "polarcalc/numeric.hpp"
#include "polarcalc/volume.hpp"

namespace polarcalc::logconcave {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_dim(const LogConcaveFn& f, const LogConcaveFn& g) {
  if (f.dim() != g.dim()) throw Error(ErrorCode::DimMismatch, "functions of different dimension");
}

bool same_exponent(const LogConcaveFn& f, const LogConcaveFn& g) { return f.exponent() == g.exponent(); }

}  // namespace

LogConcaveFn asplund_numeric(const LogConcaveFn& f, const LogConcaveFn& g) {
  require_same_dim(f, g);
  auto fp = std::make_shared<const LogConcaveFn>(f);
  auto gp = std::make_shared<const LogConcaveFn>(g);
  const int n = f.dim();
  const double extent = f.bounding_radius() + g.bounding_radius();
  auto potential = [fp, gp, n, extent](const Vector& x) {
    GridSearch s;
    s.center = Vector::Zero(n);
    s.radius = extent;
    s.points = n == 1 ? 65 : 17;
    const GridMax m = grid_maximize([&](const Vector& y) { return -fp->potential(y) - gp->potential(x - y); }, s);
    return std::isfinite(m.value) ? -m.value : kInf;
  };
  return LogConcaveFn::from_potential(n, potential, extent, "asplund(" + f.description() + ", " + g.description() + ")",
                                      sup_norm(f) * sup_norm(g));
}

LogConcaveFn asplund(const LogConcaveFn& f, const LogConcaveFn& g) {
  require_same_dim(f, g);
  if (f.family() == g.family()) {
    switch (f.family()) {
      case Family::Indicator:
        return LogConcaveFn::indicator(geometry::lp_sum(*f.body(), *g.body(), Exponent::finite(1.0)));
      case Family::ExpNegSupportPow:
        if (same_exponent(f, g)) {
          return LogConcaveFn::exp_neg_support_pow(geometry::lp_intersection(*f.body(), *g.body(), f.exponent()),
                                                   f.exponent());
        }
        break;
      case Family::ExpNegGaugePow:
        if (same_exponent(f, g)) {
          return LogConcaveFn::exp_neg_gauge_pow(
              geometry::lp_sum(*f.body(), *g.body(), f.exponent().conjugate()), f.exponent());
        }
        break;
      case Family::Gaussian:
        return LogConcaveFn::gaussian(f.dim(), f.variance() + g.variance());
      case Family::Grid:
        break;
    }
  }
  return asplund_numeric(f, g);
}

Estimate convolution_at(const LogConcaveFn& f, const LogConcaveFn& g, const Vector& x, std::uint64_t samples,
                        std::uint64_t seed) {
  require_same_dim(f, g);
  const int n = f.dim();
  if (x.size() != n) throw Error(ErrorCode::DimMismatch, "convolution point dimension");
  if (f.family() == Family::Gaussian && g.family() == Family::Gaussian) {
    const double a = f.variance();
    const double b = g.variance();
    return {std::pow(2.0 * M_PI * a * b / (a + b), 0.5 * n) * std::exp(-x.squaredNorm() / (2.0 * (a + b))), 0.0};
  }
  if (f.family() == Family::Indicator && g.family() == Family::Indicator) {
    const auto* pk = f.body()->as_polytope();
    const auto* pl = g.body()->as_polytope();
    if (pk && pl && n <= 3) {
      const auto overlap = geometry::intersect(*pk, pl->negated().translated(x));
      if (!overlap) return {0.0, 0.0};
      return {overlap->mass_properties().volume, 0.0};
    }
  }
  const double r = f.bounding_radius();
  auto parts = numeric::run_shards<numeric::MomentAccumulator>(
      seed, samples, [&](numeric::Rng& rng, std::uint64_t count, int) {
        numeric::MomentAccumulator acc;
        for (std::uint64_t i = 0; i < count; ++i) {
          const Vector y = numeric::random_in_cube(rng, n, r);
          const double fy = f(y);
          acc.add(fy > 0.0 ? fy * g(x - y) : 0.0, 0.0);
        }
        return acc;
      });
  numeric::MomentAccumulator total;
  for (const auto& p : parts) total.merge(p);
  return std::pow(2.0 * r, n) * total.mean_a();
}

LogConcaveFn polar_fn_numeric(const LogConcaveFn& f) {
  const int n = f.dim();
  auto fp = std::make_shared<const LogConcaveFn>(f);
  const double extent = f.bounding_radius();
  auto potential = [fp, n, extent](const Vector& x) {
    GridSearch s;
    s.center = Vector::Zero(n);
    s.radius = extent;
    s.points = n == 1 ? 65 : 17;
    return legendre([&](const Vector& y) { return fp->potential(y); }, x, s);
  };
  // f° >= e^{-40} forces <x, y> - v(y) <= 40 for every y; with y on a small
  // ball around 0 where v <= v(0) + 1 this bounds |x|.
  const double v0 = f.potential(Vector::Zero(n));
  if (!std::isfinite(v0)) throw Error(ErrorCode::ZeroAtOrigin, "polar of a function vanishing at 0");
  double rho = kInf;
  for (int i = 0; i < n; ++i) {
    for (double sgn : {-1.0, 1.0}) {
      Vector e = Vector::Zero(n);
      e(i) = sgn;
      auto inside = [&](const Vector& y) { return fp->potential(y) <= v0 + 1.0; };
      rho = std::min(rho, 1.0 / geometry::gauge_by_bisection(inside, e, extent));
    }
  }
  rho /= std::sqrt(static_cast<double>(n));
  const double radius = (40.0 + std::abs(v0) + 1.0) / rho;
  return LogConcaveFn::from_potential(n, potential, radius, "polar(" + f.description() + ")");
}

LogConcaveFn polar_fn(const LogConcaveFn& f) {
  switch (f.family()) {
    case Family::Indicator:
      if (!f.body()->contains_origin_interior()) {
        throw Error(ErrorCode::OriginNotInterior, "polar of an indicator needs 0 in the interior");
      }
      return LogConcaveFn::exp_neg_support_pow(*f.body(), Exponent::finite(1.0));
    case Family::ExpNegSupportPow: {
      const Exponent p = f.exponent();
      if (p.is_one()) return LogConcaveFn::indicator(*f.body());
      return LogConcaveFn::exp_neg_gauge_pow(geometry::scale(*f.body(), std::pow(p.value(), p.reciprocal())),
                                             p.conjugate());
    }
    case Family::ExpNegGaugePow: {
      const Exponent p = f.exponent();
      if (p.is_one()) return LogConcaveFn::indicator(geometry::polar(*f.body()));
      return LogConcaveFn::exp_neg_gauge_pow(geometry::polar(*f.body()), p.conjugate());
    }
    case Family::Gaussian:
      return LogConcaveFn::gaussian(f.dim(), 1.0 / f.variance());
    case Family::Grid:
      break;
  }
  return polar_fn_numeric(f);
}

}  // namespace polarcalc::logconcave
