#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "polarcalc/geometry.hpp"
#include "polarcalc/numeric.hpp"

namespace polarcalc::geometry {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_same_dim(const ConvexBody& k, const ConvexBody& l) {
  if (k.dim() != l.dim()) throw Error(ErrorCode::DimMismatch, "bodies of different dimension");
}

double ball_gauge(const EuclideanBall& b, const Vector& x) {
  const double xx = x.squaredNorm();
  if (xx == 0.0) return 0.0;
  const double xc = x.dot(b.center);
  const double a = b.center.squaredNorm() - b.radius * b.radius;
  const double s = std::sqrt(std::max(0.0, xc * xc - a * xx));
  // mu = 1/gauge solves mu^2 |x|^2 - 2 mu <x,c> + |c|^2 - r^2 = 0.
  return xx / (xc + s);
}

using BodyPtr = std::shared_ptr<const ConvexBody>;

}  // namespace

double dual_by_minimization(const ScalarField& h, const Vector& x) {
  const double len2 = x.squaredNorm();
  if (len2 == 0.0) return 0.0;
  const Vector base = x / len2;
  const int n = static_cast<int>(x.size());
  double best;
  if (n == 1) {
    best = h(base);
  } else {
    const Matrix basis = complement_basis(x);
    auto restricted = [&](const Vector& w) { return h(base + basis * w); };
    best = numeric::minimize_convex(restricted, Vector::Zero(n - 1), std::sqrt(1.0 / len2), 1e-12).value;
  }
  if (!(best > 0.0)) throw Error(ErrorCode::OriginNotInterior, "dual function is not positive");
  return 1.0 / best;
}

double gauge_by_bisection(const std::function<bool(const Vector&)>& member, const Vector& x,
                          double bounding_radius) {
  const double len = x.norm();
  if (len == 0.0) return 0.0;
  double lo = 0.0;
  double hi = 2.0 * bounding_radius / len;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (member(mid * x)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double mu = 0.5 * (lo + hi);
  if (!(mu > 0.0)) throw Error(ErrorCode::OriginNotInterior, "ray leaves the body immediately");
  return 1.0 / mu;
}

ConvexBody::ConvexBody(EuclideanBall b) : body_(std::move(b)) {
  const auto& ball = std::get<EuclideanBall>(body_);
  if (!(ball.radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "ball radius must be positive");
}

ConvexBody ConvexBody::ball(int n, double radius) {
  return ConvexBody(EuclideanBall{Vector::Zero(n), radius});
}

int ConvexBody::dim() const {
  return std::visit(Overloaded{[](const Polytope& p) { return p.dim(); },
                               [](const EuclideanBall& b) { return static_cast<int>(b.center.size()); },
                               [](const SupportOracle& s) { return s.dim; },
                               [](const GaugeOracle& g) { return g.dim; }},
                    body_);
}

double ConvexBody::support(const Vector& u) const {
  return std::visit(
      Overloaded{[&](const Polytope& p) { return p.support(u); },
                 [&](const EuclideanBall& b) { return b.center.dot(u) + b.radius * u.norm(); },
                 [&](const SupportOracle& s) { return s.support(u); },
                 [&](const GaugeOracle& g) {
                   if (g.support) return g.support(u);
                   return dual_by_minimization(g.gauge, u);
                 }},
      body_);
}

double ConvexBody::gauge(const Vector& x) const {
  if (!contains_origin_interior()) {
    throw Error(ErrorCode::OriginNotInterior, "gauge of a body without the origin in its interior");
  }
  return std::visit(Overloaded{[&](const Polytope& p) { return p.gauge(x); },
                               [&](const EuclideanBall& b) { return ball_gauge(b, x); },
                               [&](const SupportOracle& s) {
                                 if (s.gauge) return s.gauge(x);
                                 return dual_by_minimization(s.support, x);
                               },
                               [&](const GaugeOracle& g) { return g.gauge(x); }},
                    body_);
}

bool ConvexBody::contains(const Vector& x) const {
  constexpr double kTol = 1e-12;
  return std::visit(
      Overloaded{[&](const Polytope& p) { return p.contains(x); },
                 [&](const EuclideanBall& b) { return (x - b.center).norm() <= b.radius * (1.0 + kTol); },
                 [&](const SupportOracle& s) {
                   if (s.member) return s.member(x);
                   if (s.inner_radius > 0.0) return gauge(x) <= 1.0 + kTol;
                   const Vector c = s.interior_point;
                   auto shifted = [&](const Vector& u) { return s.support(u) - c.dot(u); };
                   return dual_by_minimization(shifted, x - c) <= 1.0 + kTol;
                 },
                 [&](const GaugeOracle& g) { return g.gauge(x) <= 1.0 + kTol; }},
      body_);
}

double ConvexBody::bounding_radius() const {
  return std::visit(Overloaded{[](const Polytope& p) { return p.bounding_radius(); },
                               [](const EuclideanBall& b) { return b.center.norm() + b.radius; },
                               [](const SupportOracle& s) { return s.bounding_radius; },
                               [](const GaugeOracle& g) { return g.bounding_radius; }},
                    body_);
}

double ConvexBody::inner_radius() const {
  return std::visit(
      Overloaded{[](const Polytope& p) { return p.origin_interior() ? p.inner_radius() : 0.0; },
                 [](const EuclideanBall& b) { return std::max(0.0, b.radius - b.center.norm()); },
                 [](const SupportOracle& s) { return s.inner_radius; },
                 [](const GaugeOracle& g) { return g.inner_radius; }},
      body_);
}

Vector ConvexBody::interior_point() const {
  return std::visit(Overloaded{[](const Polytope& p) { return p.vertex_centroid(); },
                               [](const EuclideanBall& b) { return Vector(b.center); },
                               [](const SupportOracle& s) {
                                 return s.inner_radius > 0.0 ? Vector(Vector::Zero(s.dim))
                                                             : s.interior_point;
                               },
                               [](const GaugeOracle& g) { return Vector(Vector::Zero(g.dim)); }},
                    body_);
}

std::string ConvexBody::kind() const {
  return std::visit(Overloaded{[](const Polytope&) { return std::string("polytope"); },
                               [](const EuclideanBall&) { return std::string("ball"); },
                               [](const SupportOracle&) { return std::string("support-oracle"); },
                               [](const GaugeOracle&) { return std::string("gauge-oracle"); }},
                    body_);
}

std::string ConvexBody::description() const {
  return std::visit(
      Overloaded{[](const Polytope& p) { return "polytope(" + std::to_string(p.vertices().size()) + " vertices)"; },
                 [](const EuclideanBall& b) { return "ball(r=" + std::to_string(b.radius) + ")"; },
                 [](const SupportOracle& s) { return s.description; },
                 [](const GaugeOracle& g) { return g.description; }},
      body_);
}

double support(const ConvexBody& k, const Vector& u) { return k.support(u); }
double gauge(const ConvexBody& k, const Vector& x) { return k.gauge(x); }

ConvexBody polar(const ConvexBody& k) {
  if (!k.contains_origin_interior()) {
    throw Error(ErrorCode::OriginNotInterior, "polar of " + k.description());
  }
  if (const auto* p = k.as_polytope()) return ConvexBody(p->polar());
  if (const auto* b = k.as_ball(); b && b->center.isZero(0.0)) {
    return ConvexBody(EuclideanBall{b->center, 1.0 / b->radius});
  }
  auto body = std::make_shared<const ConvexBody>(k);
  const int n = k.dim();
  const std::string desc = "polar(" + k.description() + ")";
  if (std::holds_alternative<GaugeOracle>(k.variant())) {
    SupportOracle s;
    s.dim = n;
    s.support = [body](const Vector& u) { return body->gauge(u); };
    s.gauge = [body](const Vector& x) { return body->support(x); };
    s.bounding_radius = 1.0 / k.inner_radius();
    s.inner_radius = 1.0 / k.bounding_radius();
    s.interior_point = Vector::Zero(n);
    s.description = desc;
    return ConvexBody(std::move(s));
  }
  GaugeOracle g;
  g.dim = n;
  g.gauge = [body](const Vector& x) { return body->support(x); };
  g.support = [body](const Vector& u) { return body->gauge(u); };
  g.bounding_radius = 1.0 / k.inner_radius();
  g.inner_radius = 1.0 / k.bounding_radius();
  g.description = desc;
  return ConvexBody(std::move(g));
}

ConvexBody lp_sum(const ConvexBody& k, const ConvexBody& l, Exponent p) {
  require_same_dim(k, l);
  const int n = k.dim();
  const auto* pk = k.as_polytope();
  const auto* pl = l.as_polytope();
  const auto* bk = k.as_ball();
  const auto* bl = l.as_ball();

  if (p.is_one()) {
    if (pk && pl) {
      std::vector<Vector> sums;
      sums.reserve(pk->vertices().size() * pl->vertices().size());
      for (const auto& v : pk->vertices())
        for (const auto& w : pl->vertices()) sums.push_back(v + w);
      return ConvexBody(Polytope::from_vertices(sums));
    }
    if (bk && bl) return ConvexBody(EuclideanBall{bk->center + bl->center, bk->radius + bl->radius});
  } else if (p.is_infinite()) {
    if (pk && pl) {
      std::vector<Vector> pts = pk->vertices();
      pts.insert(pts.end(), pl->vertices().begin(), pl->vertices().end());
      return ConvexBody(Polytope::from_vertices(pts));
    }
  } else {
    if (!k.contains_origin_interior() || !l.contains_origin_interior()) {
      throw Error(ErrorCode::OriginNotInterior, "l_p sums with 1 < p < inf need the origin in both bodies");
    }
    if (bk && bl && bk->center.isZero(0.0) && bl->center.isZero(0.0)) {
      return ConvexBody(EuclideanBall{Vector::Zero(n), p.mean(bk->radius, bl->radius)});
    }
  }

  auto kp = std::make_shared<const ConvexBody>(k);
  auto lp = std::make_shared<const ConvexBody>(l);
  SupportOracle s;
  s.dim = n;
  s.support = [kp, lp, p](const Vector& u) {
    const double a = kp->support(u);
    const double b = lp->support(u);
    if (p.is_one()) return a + b;
    if (p.is_infinite()) return std::max(a, b);
    return p.mean(std::max(a, 0.0), std::max(b, 0.0));
  };
  s.bounding_radius = p.mean(k.bounding_radius(), l.bounding_radius());
  if (p.is_one()) {
    s.interior_point = k.interior_point() + l.interior_point();
    s.inner_radius = (k.contains_origin_interior() && l.contains_origin_interior())
                         ? k.inner_radius() + l.inner_radius()
                         : 0.0;
  } else if (p.is_infinite()) {
    s.interior_point = k.interior_point();
    s.inner_radius = std::max(k.inner_radius(), l.inner_radius());
  } else {
    s.interior_point = Vector::Zero(n);
    s.inner_radius = p.mean(k.inner_radius(), l.inner_radius());
  }
  s.description = "lp_sum(" + k.description() + ", " + l.description() + ", p=" + p.to_string() + ")";
  return ConvexBody(std::move(s));
}

ConvexBody lp_intersection(const ConvexBody& k, const ConvexBody& l, Exponent p) {
  require_same_dim(k, l);
  if (!k.contains_origin_interior() || !l.contains_origin_interior()) {
    throw Error(ErrorCode::OriginNotInterior, "l_p intersection needs the origin in both interiors");
  }
  return polar(lp_sum(polar(k), polar(l), p.conjugate()));
}

ConvexBody negate(const ConvexBody& k) {
  if (const auto* p = k.as_polytope()) return ConvexBody(p->negated());
  if (const auto* b = k.as_ball()) return ConvexBody(EuclideanBall{-b->center, b->radius});
  auto body = std::make_shared<const ConvexBody>(k);
  if (const auto* g = std::get_if<GaugeOracle>(&k.variant())) {
    GaugeOracle out = *g;
    out.gauge = [body](const Vector& x) { return body->gauge(-x); };
    out.support = [body](const Vector& u) { return body->support(-u); };
    out.description = "-" + g->description;
    return ConvexBody(std::move(out));
  }
  const auto& s = std::get<SupportOracle>(k.variant());
  SupportOracle out = s;
  out.support = [body](const Vector& u) { return body->support(-u); };
  out.gauge = s.gauge ? ScalarField([body](const Vector& x) { return body->gauge(-x); }) : ScalarField();
  out.member = [body](const Vector& x) { return body->contains(-x); };
  out.interior_point = -s.interior_point;
  out.description = "-" + s.description;
  return ConvexBody(std::move(out));
}

ConvexBody translate(const ConvexBody& k, const Vector& z) {
  if (z.size() != k.dim()) throw Error(ErrorCode::DimMismatch, "translation vector dimension");
  if (const auto* p = k.as_polytope()) return ConvexBody(p->translated(z));
  if (const auto* b = k.as_ball()) return ConvexBody(EuclideanBall{b->center + z, b->radius});
  auto body = std::make_shared<const ConvexBody>(k);
  SupportOracle out;
  out.dim = k.dim();
  out.support = [body, z](const Vector& u) { return body->support(u) + z.dot(u); };
  out.member = [body, z](const Vector& x) { return body->contains(x - z); };
  out.bounding_radius = k.bounding_radius() + z.norm();
  out.inner_radius = std::max(0.0, k.inner_radius() - z.norm());
  out.interior_point = k.interior_point() + z;
  if (out.inner_radius > 0.0) {
    const double radius = out.bounding_radius;
    auto member = out.member;
    out.gauge = [member, radius](const Vector& x) { return gauge_by_bisection(member, x, radius); };
  }
  out.description = "translate(" + k.description() + ")";
  return ConvexBody(std::move(out));
}

ConvexBody scale(const ConvexBody& k, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  if (const auto* p = k.as_polytope()) return ConvexBody(p->scaled(lambda));
  if (const auto* b = k.as_ball()) return ConvexBody(EuclideanBall{lambda * b->center, lambda * b->radius});
  auto body = std::make_shared<const ConvexBody>(k);
  if (const auto* g = std::get_if<GaugeOracle>(&k.variant())) {
    GaugeOracle out = *g;
    out.gauge = [body, lambda](const Vector& x) { return body->gauge(x) / lambda; };
    out.support = [body, lambda](const Vector& u) { return lambda * body->support(u); };
    out.bounding_radius *= lambda;
    out.inner_radius *= lambda;
    return ConvexBody(std::move(out));
  }
  const auto& s = std::get<SupportOracle>(k.variant());
  SupportOracle out = s;
  out.support = [body, lambda](const Vector& u) { return lambda * body->support(u); };
  if (s.gauge) out.gauge = [body, lambda](const Vector& x) { return body->gauge(x) / lambda; };
  out.member = [body, lambda](const Vector& x) { return body->contains(x / lambda); };
  out.bounding_radius *= lambda;
  out.inner_radius *= lambda;
  out.interior_point = lambda * s.interior_point;
  return ConvexBody(std::move(out));
}

VectorEstimate barycenter(const ConvexBody& k, std::uint64_t trials, std::uint64_t seed) {
  const int n = k.dim();
  if (const auto* p = k.as_polytope(); p && n <= 3) {
    return {p->mass_properties().centroid, Vector::Zero(n)};
  }
  if (const auto* b = k.as_ball()) return {b->center, Vector::Zero(n)};

  struct Tally {
    std::uint64_t hits = 0;
    Vector sum, sum_sq;
  };
  const double r = k.bounding_radius();
  auto shards = numeric::run_shards<Tally>(
      seed, trials, [&](numeric::Rng& rng, std::uint64_t count, int) {
        Tally t{0, Vector::Zero(n), Vector::Zero(n)};
        for (std::uint64_t i = 0; i < count; ++i) {
          const Vector x = numeric::random_in_cube(rng, n, r);
          if (k.contains(x)) {
            ++t.hits;
            t.sum += x;
            t.sum_sq += x.cwiseProduct(x);
          }
        }
        return t;
      });
  Tally total{0, Vector::Zero(n), Vector::Zero(n)};
  for (const auto& t : shards) {
    total.hits += t.hits;
    total.sum += t.sum;
    total.sum_sq += t.sum_sq;
  }
  if (total.hits < 2) throw Error(ErrorCode::DegenerateInstance, "no Monte Carlo hits inside the body");
  const double h = static_cast<double>(total.hits);
  Vector mean = total.sum / h;
  Vector var = (total.sum_sq / h - mean.cwiseProduct(mean)).cwiseMax(0.0) * (h / (h - 1.0));
  return {mean, (var / h).cwiseSqrt()};
}

ConvexBody center(const ConvexBody& k, std::uint64_t trials, std::uint64_t seed) {
  return translate(k, -barycenter(k, trials, seed).value);
}

double support_inf_convolution(const ConvexBody& k, const ConvexBody& l, Exponent p, const Vector& u) {
  require_same_dim(k, l);
  auto split = [&](const Vector& x1) {
    const double a = std::max(0.0, k.support(x1));
    const double b = std::max(0.0, l.support(u - x1));
    return p.mean(a, b);
  };
  const double scale = std::max(u.norm(), 1e-12);
  return numeric::minimize_convex(split, 0.5 * u, scale, 1e-12).value;
}

double gauge_lp_intersection_direct(const ConvexBody& k, const ConvexBody& l, Exponent p, const Vector& x) {
  require_same_dim(k, l);
  if (x.isZero(0.0)) return 0.0;
  // inf { h(y) : <x, y> = 1 }, attained on the affine hyperplane.
  auto hyperplane_min = [&](const ConvexBody& body) {
    const Vector base = x / x.squaredNorm();
    const int n = static_cast<int>(x.size());
    if (n == 1) return body.support(base);
    const Matrix basis = complement_basis(x);
    auto restricted = [&](const Vector& w) { return body.support(base + basis * w); };
    return numeric::minimize_convex(restricted, Vector::Zero(n - 1), base.norm(), 1e-13).value;
  };
  const double ak = hyperplane_min(k);
  const double al = hyperplane_min(l);
  if (!(ak > 0.0) || !(al > 0.0)) throw Error(ErrorCode::OriginNotInterior, "direct l_p intersection gauge");
  // Shares outside [0, 1] only increase the objective.
  auto share = [&](double s) { return p.mean(s * ak, (1.0 - s) * al); };
  const double best = numeric::minimize_convex_interval(share, 0.0, 1.0).value;
  return 1.0 / best;
}

nlohmann::json to_json(const Polytope& p) {
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : p.vertices()) {
    nlohmann::json row = nlohmann::json::array();
    for (int i = 0; i < v.size(); ++i) row.push_back(v(i));
    verts.push_back(row);
  }
  return {{"dim", p.dim()}, {"vertices", verts}};
}

Polytope polytope_from_json(const nlohmann::json& j) {
  if (!j.contains("dim") || !j.contains("vertices")) {
    throw Error(ErrorCode::InvalidArgument, "polytope JSON needs \"dim\" and \"vertices\"");
  }
  const int n = j.at("dim").get<int>();
  std::vector<Vector> pts;
  for (const auto& row : j.at("vertices")) {
    if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::DimMismatch, "vertex length differs from dim");
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = row.at(static_cast<std::size_t>(i)).get<double>();
    pts.push_back(v);
  }
  return Polytope::from_vertices(pts);
}

nlohmann::json to_json(const ConvexBody& k) {
  if (const auto* p = k.as_polytope()) return to_json(*p);
  if (const auto* b = k.as_ball()) {
    std::vector<double> c(b->center.data(), b->center.data() + b->center.size());
    return {{"dim", k.dim()}, {"ball", {{"center", c}, {"radius", b->radius}}}};
  }
  return {{"dim", k.dim()}, {"oracle", k.description()}};
}

ConvexBody body_from_json(const nlohmann::json& j) {
  if (j.contains("vertices")) return ConvexBody(polytope_from_json(j));
  if (j.contains("ball")) {
    const int n = j.at("dim").get<int>();
    const auto& b = j.at("ball");
    Vector c = Vector::Zero(n);
    if (b.contains("center")) {
      const auto cv = b.at("center").get<std::vector<double>>();
      if (static_cast<int>(cv.size()) != n) throw Error(ErrorCode::DimMismatch, "ball center length");
      for (int i = 0; i < n; ++i) c(i) = cv[static_cast<std::size_t>(i)];
    }
    return ConvexBody(EuclideanBall{c, b.at("radius").get<double>()});
  }
  throw Error(ErrorCode::InvalidArgument, "body JSON is neither a polytope nor a ball");
}

}  // namespace polarcalc::geometry
