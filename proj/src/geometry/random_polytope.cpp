#include <random>

#include "polarcalc/geometry.hpp"
#include "polarcalc/numeric.hpp"

namespace polarcalc::geometry {

Polytope random_polytope(int n, int m, std::uint64_t seed) {
  if (n < 1 || n > 4) throw Error(ErrorCode::InvalidArgument, "random polytopes need 1 <= n <= 4");
  if (m < n + 1) throw Error(ErrorCode::InvalidArgument, "random polytopes need m >= n + 1 points");

  constexpr int kAttempts = 64;
  numeric::Rng rng(derive_seed(seed, 0x9e11));
  std::uniform_real_distribution<double> radius(0.5, 1.5);
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<Vector> pts;
    pts.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) pts.push_back(numeric::random_direction(rng, n) * radius(rng));
    try {
      return Polytope::from_vertices(pts);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateInstance) throw;
    }
  }
  throw Error(ErrorCode::DegenerateInstance, "random polytope stayed degenerate after resampling");
}

}  // namespace polarcalc::geometry
