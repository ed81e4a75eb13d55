#include <random>

#include "polarcalc/harness.hpp"
#include "polarcalc/numeric.hpp"

namespace polarcalc::harness {
namespace {

using geometry::Polytope;

// Random polytope containing the origin in its interior; retries with
// derived seeds.
Polytope polytope_around_origin(int n, int m, std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    Polytope p = geometry::random_polytope(n, m, derive_seed(seed, attempt));
    if (p.origin_interior()) return p;
  }
  throw Error(ErrorCode::DegenerateInstance, "no random polytope around the origin");
}

ConvexBody centred_polytope(int n, int m, std::uint64_t seed) {
  return geometry::center(ConvexBody(geometry::random_polytope(n, m, seed)), 200000, seed);
}

nlohmann::json describe(const std::string& recipe, int n, int m, std::uint64_t seed, const ConvexBody& k,
                        const ConvexBody& l) {
  return {{"recipe", recipe}, {"n", n},  {"m", m}, {"seed", seed}, {"K", geometry::to_json(k)},
          {"L", geometry::to_json(l)}};
}

}  // namespace

BodyPair centered_polar_pair(int n, int m, std::uint64_t seed) {
  const ConvexBody p = centred_polytope(n, m, derive_seed(seed, 1));
  const ConvexBody q = centred_polytope(n, m, derive_seed(seed, 2));
  ConvexBody k = geometry::polar(p);
  ConvexBody l = geometry::polar(q);
  nlohmann::json d = describe("centered_polar_pair", n, m, seed, k, l);
  return {std::move(k), std::move(l), std::move(d)};
}

BodyPair general_pair(int n, int m, std::uint64_t seed) {
  ConvexBody k(polytope_around_origin(n, m, derive_seed(seed, 1)));
  ConvexBody l(polytope_around_origin(n, m, derive_seed(seed, 2)));
  nlohmann::json d = describe("general_pair", n, m, seed, k, l);
  return {std::move(k), std::move(l), std::move(d)};
}

BodyPair centered_pair(int n, int m, std::uint64_t seed) {
  ConvexBody k = centred_polytope(n, m, derive_seed(seed, 1));
  ConvexBody l = centred_polytope(n, m, derive_seed(seed, 2));
  nlohmann::json d = describe("centered_pair", n, m, seed, k, l);
  return {std::move(k), std::move(l), std::move(d)};
}

ConvexBody simplex(int n, bool centered) {
  std::vector<Vector> v{Vector::Zero(n)};
  for (int i = 0; i < n; ++i) {
    Vector e = Vector::Zero(n);
    e(i) = 1.0;
    v.push_back(e);
  }
  Polytope s = Polytope::from_vertices(v);
  if (centered) s = s.translated(Vector::Constant(n, -1.0 / (n + 1)));
  return ConvexBody(s);
}

ConvexBody symmetric_body(int n, int m, std::uint64_t seed) {
  const Polytope p = geometry::random_polytope(n, m, seed);
  std::vector<Vector> pts = p.vertices();
  for (const auto& v : p.vertices()) pts.push_back(-v);
  return ConvexBody(Polytope::from_vertices(pts));
}

FunctionPair function_pair(FunctionFamily family, int n, std::uint64_t seed) {
  numeric::Rng rng(derive_seed(seed, 0xf0));
  std::uniform_real_distribution<double> variance(0.5, 2.0);
  switch (family) {
    case FunctionFamily::Gaussian: {
      const double a = variance(rng);
      const double b = variance(rng);
      return {LogConcaveFn::gaussian(n, a), LogConcaveFn::gaussian(n, b),
              {{"recipe", "gaussian_pair"}, {"n", n}, {"seed", seed}, {"variance_f", a}, {"variance_g", b}}};
    }
    case FunctionFamily::Indicator: {
      BodyPair pair = centered_pair(n, 2 * n + 4, seed);
      pair.instance["recipe"] = "indicator_pair";
      return {LogConcaveFn::indicator(pair.k), LogConcaveFn::indicator(geometry::negate(pair.l)),
              std::move(pair.instance)};
    }
    case FunctionFamily::ExpNegSupport: {
      BodyPair pair = centered_polar_pair(n, 2 * n + 4, seed);
      pair.instance["recipe"] = "exp_neg_support_pair";
      const Exponent one = Exponent::finite(1.0);
      return {LogConcaveFn::exp_neg_support_pow(pair.k, one), LogConcaveFn::exp_neg_support_pow(pair.l, one),
              std::move(pair.instance)};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown function family");
}

}  // namespace polarcalc::harness
