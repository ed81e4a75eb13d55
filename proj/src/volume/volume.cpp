#include <algorithm>
#include <cmath>

#include "polarcalc/numeric.hpp"
#include "polarcalc/volume.hpp"

namespace polarcalc::volume {

using geometry::ConvexBody;

std::string to_string(Method m) {
  switch (m) {
    case Method::Exact:
      return "exact";
    case Method::MC:
      return "mc";
    case Method::GammaRoute:
      return "gamma";
  }
  return "unknown";
}

nlohmann::json to_json(const VolumeEstimate& v) {
  return {{"value", v.value}, {"stderr", v.sigma}, {"method", to_string(v.method)}, {"samples", v.samples}};
}

VolumeEstimate volume_exact(const geometry::Polytope& p) {
  return {p.mass_properties().volume, 0.0, Method::Exact, 0};
}

double cube_radius(const ConvexBody& k) {
  const int n = k.dim();
  double r = 0.0;
  for (int i = 0; i < n; ++i) {
    Vector e = Vector::Zero(n);
    e(i) = 1.0;
    r = std::max({r, k.support(e), k.support(-e)});
  }
  return r;
}

VolumeEstimate volume_mc(const ConvexBody& k, std::uint64_t samples, std::uint64_t seed) {
  const int n = k.dim();
  const double r = cube_radius(k);
  auto counts = numeric::run_shards<std::uint64_t>(
      seed, samples, [&](numeric::Rng& rng, std::uint64_t count, int) {
        std::uint64_t hits = 0;
        for (std::uint64_t i = 0; i < count; ++i) {
          if (k.contains(numeric::random_in_cube(rng, n, r))) ++hits;
        }
        return hits;
      });
  std::uint64_t hits = 0;
  for (auto c : counts) hits += c;
  const double frac = static_cast<double>(hits) / static_cast<double>(samples);
  const double cube = std::pow(2.0 * r, n);
  const double se = std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples)) * cube;
  return {frac * cube, se, Method::MC, samples};
}

namespace {

// Mean of g(u) over uniform directions, with its standard error.
Estimate sphere_mean(int n, std::uint64_t directions, std::uint64_t seed,
                     const std::function<double(const Vector&)>& g) {
  if (n == 1) {
    // The sphere is {-1, 1}; the average is exact.
    const double a = g(Vector::Constant(1, 1.0));
    const double b = g(Vector::Constant(1, -1.0));
    return {0.5 * (a + b), 0.0};
  }
  auto parts = numeric::run_shards<numeric::MomentAccumulator>(
      seed, directions, [&](numeric::Rng& rng, std::uint64_t count, int) {
        numeric::MomentAccumulator acc;
        for (std::uint64_t i = 0; i < count; ++i) acc.add(g(numeric::random_direction(rng, n)), 0.0);
        return acc;
      });
  numeric::MomentAccumulator total;
  for (const auto& p : parts) total.merge(p);
  return total.mean_a();
}

}  // namespace

VolumeEstimate volume_polar_gamma(const ConvexBody& k, std::uint64_t directions, std::uint64_t seed) {
  if (!k.contains_origin_interior()) {
    throw Error(ErrorCode::OriginNotInterior, "Gamma route needs the origin in the interior");
  }
  const int n = k.dim();
  const Estimate m = sphere_mean(n, directions, seed, [&](const Vector& u) { return std::pow(k.support(u), -n); });
  const double c = numeric::sphere_area(n) / n;
  return {c * m.value, c * m.sigma, Method::GammaRoute, n == 1 ? 2 : directions};
}

VolumeEstimate gamma_route_integral(const ConvexBody& k, Exponent p, std::uint64_t directions,
                                    std::uint64_t seed) {
  VolumeEstimate v = volume_polar_gamma(k, directions, seed);
  const double g = p.is_infinite() ? 1.0 : std::tgamma(1.0 + k.dim() / p.value());
  v.value *= g;
  v.sigma *= g;
  return v;
}

VolumeEstimate volume_radial(const ConvexBody& k, std::uint64_t directions, std::uint64_t seed) {
  if (!k.contains_origin_interior()) {
    throw Error(ErrorCode::OriginNotInterior, "radial volume needs the origin in the interior");
  }
  const int n = k.dim();
  const Estimate m = sphere_mean(n, directions, seed, [&](const Vector& u) { return std::pow(k.gauge(u), -n); });
  const double c = numeric::sphere_area(n) / n;
  return {c * m.value, c * m.sigma, Method::GammaRoute, n == 1 ? 2 : directions};
}

VolumeEstimate volume(const ConvexBody& k, std::uint64_t samples, std::uint64_t seed) {
  const int n = k.dim();
  if (const auto* p = k.as_polytope(); p && n <= 3) return volume_exact(*p);
  if (const auto* b = k.as_ball()) {
    return {numeric::unit_ball_volume(n) * std::pow(b->radius, n), 0.0, Method::Exact, 0};
  }
  if (k.contains_origin_interior()) return volume_radial(k, samples, seed);
  return volume_mc(k, samples, seed);
}

VolumeEstimate volume_alternate(const ConvexBody& k, std::uint64_t samples, std::uint64_t seed) {
  const std::uint64_t alt_seed = derive_seed(seed, 0xa17);
  const int n = k.dim();
  const bool exact = (k.as_polytope() && n <= 3) || k.as_ball();
  if (exact || k.contains_origin_interior()) return volume_mc(k, samples, alt_seed);
  return {0.0, 0.0, Method::MC, 0};
}

double gamma_ratio(int n, Exponent p) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (p.is_infinite()) return 1.0;
  const double a = static_cast<double>(n) / p.value();
  if (2.0 * a < 160.0) {
    const double g = std::tgamma(1.0 + a);
    return g * g / std::tgamma(1.0 + 2.0 * a);
  }
  return std::exp(2.0 * std::lgamma(1.0 + a) - std::lgamma(1.0 + 2.0 * a));
}

}  // namespace polarcalc::volume
