#include <algorithm>
#include <cmath>
#include <limits>

#include "polarcalc/geometry.hpp"
#include "polarcalc/numeric.hpp"

namespace polarcalc::geometry {

Polytope::Polytope(int dim, std::vector<Vector> vertices, std::vector<Facet> facets)
    : dim_(dim), vertices_(std::move(vertices)), facets_(std::move(facets)) {}

Polytope Polytope::from_vertices(const std::vector<Vector>& points) {
  Hull h = convex_hull(points);
  const int n = static_cast<int>(points.front().size());
  return Polytope(n, std::move(h.vertices), std::move(h.facets));
}

Polytope Polytope::from_halfspaces(const std::vector<Facet>& halfspaces, const Vector& interior) {
  const int n = static_cast<int>(interior.size());
  std::vector<Vector> duals;
  duals.reserve(halfspaces.size());
  for (const auto& h : halfspaces) {
    const double slack = h.offset - h.normal.dot(interior);
    if (slack <= 1e-12) {
      throw Error(ErrorCode::InvalidArgument, "interior point is not strictly inside every half-space");
    }
    duals.push_back(h.normal / slack);
  }
  Hull dual;
  try {
    dual = convex_hull(duals);
  } catch (const Error&) {
    throw Error(ErrorCode::DegenerateInstance, "half-space intersection is unbounded");
  }
  std::vector<Vector> vertices;
  for (const auto& f : dual.facets) {
    if (f.offset <= 1e-12) throw Error(ErrorCode::DegenerateInstance, "half-space intersection is unbounded");
    vertices.push_back(f.normal / f.offset + interior);
  }
  (void)n;
  return from_vertices(vertices);
}

double Polytope::support(const Vector& u) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) best = std::max(best, v.dot(u));
  return best;
}

double Polytope::gauge(const Vector& x) const {
  double best = 0.0;
  for (const auto& f : facets_) best = std::max(best, f.normal.dot(x) / f.offset);
  return best;
}

bool Polytope::contains(const Vector& x, double tol) const {
  const double slack = tol * (1.0 + bounding_radius());
  for (const auto& f : facets_) {
    if (f.normal.dot(x) > f.offset + slack) return false;
  }
  return true;
}

double Polytope::inner_radius() const {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& f : facets_) r = std::min(r, f.offset);
  return r;
}

double Polytope::bounding_radius() const {
  double r = 0.0;
  for (const auto& v : vertices_) r = std::max(r, v.norm());
  return r;
}

Vector Polytope::vertex_centroid() const {
  Vector c = Vector::Zero(dim_);
  for (const auto& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

double Polytope::tolerance() const { return 1e-10 * (1.0 + bounding_radius()); }

Polytope Polytope::polar() const {
  if (!origin_interior()) {
    throw Error(ErrorCode::OriginNotInterior, "polar of a polytope without the origin in its interior");
  }
  std::vector<Vector> verts;
  verts.reserve(facets_.size());
  for (const auto& f : facets_) verts.push_back(f.normal / f.offset);
  std::vector<Facet> facets;
  facets.reserve(vertices_.size());
  for (const auto& v : vertices_) {
    const double len = v.norm();
    facets.push_back({v / len, 1.0 / len});
  }
  return Polytope(dim_, std::move(verts), std::move(facets));
}

Polytope Polytope::translated(const Vector& z) const {
  if (z.size() != dim_) throw Error(ErrorCode::DimMismatch, "translation vector dimension");
  std::vector<Vector> verts = vertices_;
  for (auto& v : verts) v += z;
  std::vector<Facet> facets = facets_;
  for (auto& f : facets) f.offset += f.normal.dot(z);
  return Polytope(dim_, std::move(verts), std::move(facets));
}

Polytope Polytope::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  std::vector<Vector> verts = vertices_;
  for (auto& v : verts) v *= lambda;
  std::vector<Facet> facets = facets_;
  for (auto& f : facets) f.offset *= lambda;
  return Polytope(dim_, std::move(verts), std::move(facets));
}

Polytope Polytope::negated() const {
  std::vector<Vector> verts = vertices_;
  for (auto& v : verts) v = -v;
  std::vector<Facet> facets = facets_;
  for (auto& f : facets) f.normal = -f.normal;
  return Polytope(dim_, std::move(verts), std::move(facets));
}

Matrix complement_basis(const Vector& u) {
  const int n = static_cast<int>(u.size());
  Eigen::MatrixXd a(n, 1);
  a.col(0) = u;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(n - 1);
}

namespace {

MassProperties mass_of(const Hull& h, int k) {
  if (k == 1) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& v : h.vertices) {
      lo = std::min(lo, v(0));
      hi = std::max(hi, v(0));
    }
    return {hi - lo, Vector::Constant(1, 0.5 * (lo + hi))};
  }
  Vector c0 = Vector::Zero(k);
  double scale = 0.0;
  for (const auto& v : h.vertices) {
    c0 += v;
    scale = std::max(scale, v.cwiseAbs().maxCoeff());
  }
  c0 /= static_cast<double>(h.vertices.size());
  const double tol = 1e-7 * (1.0 + scale);

  double volume = 0.0;
  Vector moment = Vector::Zero(k);
  for (const auto& f : h.facets) {
    std::vector<Vector> on_facet;
    for (const auto& v : h.vertices) {
      if (std::abs(f.normal.dot(v) - f.offset) <= tol) on_facet.push_back(v);
    }
    const double height = f.offset - f.normal.dot(c0);
    double area = 0.0;
    Vector facet_centroid;
    if (k == 2) {
      if (on_facet.size() < 2) continue;
      area = (on_facet[0] - on_facet[1]).norm();
      facet_centroid = 0.5 * (on_facet[0] + on_facet[1]);
    } else {
      const Matrix basis = complement_basis(f.normal);
      std::vector<Vector> local;
      for (const auto& v : on_facet) local.push_back(basis.transpose() * (v - on_facet[0]));
      Hull sub;
      try {
        sub = convex_hull(local);
      } catch (const Error&) {
        continue;  // numerically flat facet contributes nothing
      }
      const MassProperties m = mass_of(sub, k - 1);
      area = m.volume;
      facet_centroid = on_facet[0] + basis * m.centroid;
    }
    const double cone = height * area / k;
    const Vector cone_centroid = c0 + (static_cast<double>(k) / (k + 1)) * (facet_centroid - c0);
    volume += cone;
    moment += cone * cone_centroid;
  }
  return {volume, moment / volume};
}

}  // namespace

MassProperties Polytope::mass_properties() const {
  if (dim_ > 3) {
    throw Error(ErrorCode::DimensionTooLarge, "exact volume is limited to n <= 3");
  }
  return mass_of(Hull{vertices_, facets_}, dim_);
}

std::optional<Polytope> intersect(const Polytope& k, const Polytope& l) {
  if (k.dim() != l.dim()) throw Error(ErrorCode::DimMismatch, "intersection of bodies of different dimension");
  std::vector<Facet> hs = k.facets();
  hs.insert(hs.end(), l.facets().begin(), l.facets().end());

  auto depth = [&](const Vector& x) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& f : hs) worst = std::max(worst, f.normal.dot(x) - f.offset);
    return worst;
  };
  const double tol = 1e-9 * (1.0 + std::max(k.bounding_radius(), l.bounding_radius()));

  std::vector<Vector> candidates = {Vector::Zero(k.dim()), k.vertex_centroid(), l.vertex_centroid(),
                                    0.5 * (k.vertex_centroid() + l.vertex_centroid())};
  Vector best = candidates.front();
  double best_depth = depth(best);
  for (const auto& c : candidates) {
    const double d = depth(c);
    if (d < best_depth) {
      best_depth = d;
      best = c;
    }
  }
  // Move towards the deepest point when no candidate is comfortably inside.
  if (best_depth > -1e-3 * (1.0 + k.bounding_radius())) {
    const auto m = numeric::minimize_convex(depth, best, std::max(k.bounding_radius(), 1e-3), 1e-10);
    if (m.value < best_depth) {
      best_depth = m.value;
      best = m.argmin;
    }
  }
  if (best_depth > -tol) return std::nullopt;
  return Polytope::from_halfspaces(hs, best);
}

}  // namespace polarcalc::geometry
