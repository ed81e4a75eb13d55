#pragma once

// Volumes along three routes: exact (polytopes, n <= 3), hit-or-miss Monte
// Carlo in the bounding cube, and the radial / Gamma route
//   |K| = (|S^{n-1}| / n) E_u[ ||u||_K^{-n} ],
//   int e^{-h_K^p} = Gamma(1 + n/p) |K°|.

#include <cstdint>
#include <string>

#include "json.hpp"

#include "polarcalc/core.hpp"
#include "polarcalc/geometry.hpp"

namespace polarcalc::volume {

enum class Method { Exact, MC, GammaRoute };

std::string to_string(Method m);

struct VolumeEstimate {
  double value = 0.0;
  double sigma = 0.0;
  Method method = Method::Exact;
  std::uint64_t samples = 0;

  Estimate estimate() const { return {value, sigma}; }
};

nlohmann::json to_json(const VolumeEstimate& v);

/// Throws DimensionTooLarge for n > 3.
VolumeEstimate volume_exact(const geometry::Polytope& p);

/// Half-width of the smallest origin-centred cube containing K, from the
/// support function in the coordinate directions.
double cube_radius(const geometry::ConvexBody& k);

/// Hit-or-miss in [-R, R]^n, R = cube_radius(K), with binomial standard error.
VolumeEstimate volume_mc(const geometry::ConvexBody& k, std::uint64_t samples, std::uint64_t seed);

/// |K°| from spherical sampling of h_K(u)^{-n}; the radial integral of
/// e^{-r^p h_K(u)^p} is done in closed form, so p only enters through
/// gamma_route_integral. Throws OriginNotInterior.
VolumeEstimate volume_polar_gamma(const geometry::ConvexBody& k, std::uint64_t directions,
                                  std::uint64_t seed);

/// int_{R^n} e^{-h_K(x)^p} dx via the same spherical sampling.
VolumeEstimate gamma_route_integral(const geometry::ConvexBody& k, Exponent p,
                                    std::uint64_t directions, std::uint64_t seed);

/// |K| by the radial formula with the gauge of K (0 must be interior).
VolumeEstimate volume_radial(const geometry::ConvexBody& k, std::uint64_t directions,
                             std::uint64_t seed);

/// Best available route: exact for polytopes in n <= 3 and balls, radial
/// sampling when 0 is interior, hit-or-miss otherwise.
VolumeEstimate volume(const geometry::ConvexBody& k, std::uint64_t samples, std::uint64_t seed);

/// A second, independent route for cross-checking `volume`; nullopt-like
/// (samples == 0) when no second route exists.
VolumeEstimate volume_alternate(const geometry::ConvexBody& k, std::uint64_t samples,
                                std::uint64_t seed);

/// Gamma(1 + n/p)^2 / Gamma(1 + 2n/p); 1/C(2n, n) at p = 1 and 1 at p = inf.
double gamma_ratio(int n, Exponent p);

}  // namespace polarcalc::volume
