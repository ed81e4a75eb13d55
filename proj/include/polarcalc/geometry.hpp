#pragma once

// Convex bodies, support functions and gauges, polar duality and the
// l_p sum / intersection algebra.
//
// A body is a tagged union. Polytopes carry both a V- and an H-representation
// and every operation on polytopes that stays polyhedral is computed exactly.
// Everything else degrades to an oracle: a support function or a gauge, with
// the missing one recovered by convex minimisation through the identity
//   ||x||_K = 1 / min { h_K(u) : <x, u> = 1 }   (0 in int K)
// and its mirror image for the support function.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "polarcalc/core.hpp"

namespace polarcalc::geometry {

/// Half-space <normal, x> <= offset with a unit normal.
struct Facet {
  Vector normal;
  double offset = 0.0;
};

struct Hull {
  std::vector<Vector> vertices;
  std::vector<Facet> facets;
};

/// Vertices and facets of conv(points). Dimensions 1-4. Throws
/// DegenerateInstance when the points do not span R^n.
Hull convex_hull(const std::vector<Vector>& points);

/// Volume and centroid of a polytope; exact for n <= 3.
struct MassProperties {
  double volume = 0.0;
  Vector centroid;
};

class Polytope {
 public:
  /// Convex hull of the given points (non-vertices are dropped).
  static Polytope from_vertices(const std::vector<Vector>& points);
  /// Bounded intersection of half-spaces. `interior` must be a strict interior point.
  static Polytope from_halfspaces(const std::vector<Facet>& halfspaces, const Vector& interior);

  int dim() const { return dim_; }
  const std::vector<Vector>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  double support(const Vector& u) const;
  /// max_i <a_i, x> / b_i. Caller guarantees the origin is interior.
  double gauge(const Vector& x) const;
  bool contains(const Vector& x, double tol = 1e-12) const;

  /// Largest r with rB centred at the origin inside the polytope (<= 0 if the
  /// origin is not interior).
  double inner_radius() const;
  double bounding_radius() const;
  Vector vertex_centroid() const;
  bool origin_interior() const { return inner_radius() > tolerance(); }
  double tolerance() const;

  /// Polar body; vertices a_i / b_i, facets <v_j, x> <= 1.
  Polytope polar() const;
  Polytope translated(const Vector& z) const;
  Polytope scaled(double lambda) const;
  Polytope negated() const;

  /// Exact volume and centroid via cone decomposition from the vertex
  /// centroid over the facets; recursive on facet dimension. Throws
  /// DimensionTooLarge for n > 3.
  MassProperties mass_properties() const;

 private:
  Polytope(int dim, std::vector<Vector> vertices, std::vector<Facet> facets);
  int dim_ = 0;
  std::vector<Vector> vertices_;
  std::vector<Facet> facets_;
};

/// Intersection of two polytopes; empty optional when the intersection has
/// empty interior.
std::optional<Polytope> intersect(const Polytope& k, const Polytope& l);

struct EuclideanBall {
  Vector center;
  double radius = 1.0;
};

using ScalarField = std::function<double(const Vector&)>;

/// Body known through its support function. `gauge` may be empty, in which
/// case it is recovered numerically.
struct SupportOracle {
  int dim = 0;
  ScalarField support;
  ScalarField gauge;
  /// Optional membership test; otherwise derived from the gauge about an interior point.
  std::function<bool(const Vector&)> member;
  double bounding_radius = 0.0;
  /// Radius of a Euclidean ball centred at the origin contained in the body; 0 if none known.
  double inner_radius = 0.0;
  Vector interior_point;
  std::string description;
};

/// Body known through its gauge (0 is interior). `support` may be empty.
struct GaugeOracle {
  int dim = 0;
  ScalarField gauge;
  ScalarField support;
  double bounding_radius = 0.0;
  double inner_radius = 0.0;
  std::string description;
};

class ConvexBody {
 public:
  using Variant = std::variant<Polytope, EuclideanBall, SupportOracle, GaugeOracle>;

  ConvexBody(Polytope p) : body_(std::move(p)) {}
  ConvexBody(EuclideanBall b);
  ConvexBody(SupportOracle s) : body_(std::move(s)) {}
  ConvexBody(GaugeOracle g) : body_(std::move(g)) {}

  static ConvexBody ball(int n, double radius);

  int dim() const;
  double support(const Vector& u) const;
  /// Minkowski gauge; throws OriginNotInterior unless 0 is interior.
  double gauge(const Vector& x) const;
  bool contains(const Vector& x) const;

  bool contains_origin_interior() const { return inner_radius() > 0.0; }
  double bounding_radius() const;
  double inner_radius() const;
  /// A point in the interior of the body.
  Vector interior_point() const;

  const Polytope* as_polytope() const { return std::get_if<Polytope>(&body_); }
  const EuclideanBall* as_ball() const { return std::get_if<EuclideanBall>(&body_); }
  const Variant& variant() const { return body_; }
  /// "polytope", "ball", "support-oracle" or "gauge-oracle".
  std::string kind() const;
  std::string description() const;

 private:
  Variant body_;
};

double support(const ConvexBody& k, const Vector& u);
double gauge(const ConvexBody& k, const Vector& x);
ConvexBody polar(const ConvexBody& k);

/// Body with support (h_K^p + h_L^p)^{1/p} (max at p = inf). p = 1 is the
/// Minkowski sum, p = inf the convex hull of the union. Finite p > 1 needs the
/// origin in the interior of both bodies.
ConvexBody lp_sum(const ConvexBody& k, const ConvexBody& l, Exponent p);
/// (K° +_q L°)° with 1/p + 1/q = 1.
ConvexBody lp_intersection(const ConvexBody& k, const ConvexBody& l, Exponent p);

ConvexBody negate(const ConvexBody& k);
ConvexBody translate(const ConvexBody& k, const Vector& z);
ConvexBody scale(const ConvexBody& k, double lambda);

/// Barycenter; exact for polytopes in n <= 3 and for balls, Monte Carlo
/// (hit-or-miss in the bounding cube) otherwise.
VectorEstimate barycenter(const ConvexBody& k, std::uint64_t trials = 200000,
                          std::uint64_t seed = 0);
/// translate(K, -barycenter(K)).
ConvexBody center(const ConvexBody& k, std::uint64_t trials = 200000, std::uint64_t seed = 0);

/// Convex hull of m points u_i * r_i with u_i uniform on the sphere and
/// r_i uniform in [0.5, 1.5]. Resamples degenerate draws.
Polytope random_polytope(int n, int m, std::uint64_t seed);

// Independent evaluators used to cross-check the duality route.

/// inf over x1 + x2 = u of (h_K^p(x1) + h_L^p(x2))^{1/p}, minimised directly
/// over the split (n-dimensional convex minimisation).
double support_inf_convolution(const ConvexBody& k, const ConvexBody& l, Exponent p,
                               const Vector& u);
/// Gauge of the l_p intersection from its inf-convolution definition:
/// 1 / inf { (h_K^p(x1) + h_L^p(x2))^{1/p} : <x, x1 + x2> = 1 }, organised by
/// the share s = <x, x1> and evaluated with support functions only.
double gauge_lp_intersection_direct(const ConvexBody& k, const ConvexBody& l, Exponent p,
                                    const Vector& x);

/// {"dim": n, "vertices": [[...], ...]}
nlohmann::json to_json(const Polytope& p);
Polytope polytope_from_json(const nlohmann::json& j);
/// Polytopes use the polytope schema; balls {"dim", "ball": {"center", "radius"}};
/// oracles carry only their description.
nlohmann::json to_json(const ConvexBody& k);
ConvexBody body_from_json(const nlohmann::json& j);

/// Gauge from a support function: 1 / min { h(u) : <x, u> = 1 }. The same
/// formula with a gauge in place of h yields the support function.
double dual_by_minimization(const ScalarField& h, const Vector& x);

/// Gauge of a star body about the origin by bisection of the ray through x.
double gauge_by_bisection(const std::function<bool(const Vector&)>& member, const Vector& x,
                          double bounding_radius);

/// Orthonormal basis of the orthogonal complement of u (n-1 columns).
Matrix complement_basis(const Vector& u);

}  // namespace polarcalc::geometry
