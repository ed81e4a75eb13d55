// Convex hulls in dimensions 1-4.
//
// 2-D uses Andrew's monotone chain. In 3-D and 4-D facets are enumerated
// directly: every n-subset of affinely independent points spans a candidate
// hyperplane, kept when all points lie on one side. Vertices are the points
// whose incident facet normals have full rank. Cost is O(C(m, n) m), which is
// fine at the sizes used here (m up to a few hundred in 3-D).

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polarcalc/geometry.hpp"

namespace polarcalc::geometry {
namespace {

double scale_of(const std::vector<Vector>& pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return std::max(s, 1e-300);
}

std::vector<Vector> dedupe(const std::vector<Vector>& pts, double tol) {
  std::vector<Vector> out;
  for (const auto& p : pts) {
    bool seen = false;
    for (const auto& q : out) {
      if ((p - q).cwiseAbs().maxCoeff() <= tol) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(p);
  }
  return out;
}

void require_full_rank(const std::vector<Vector>& pts, int n, double tol) {
  if (static_cast<int>(pts.size()) < n + 1) {
    throw Error(ErrorCode::DegenerateInstance, "fewer than n+1 distinct points");
  }
  Eigen::MatrixXd diffs(n, static_cast<Eigen::Index>(pts.size() - 1));
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.col(static_cast<Eigen::Index>(i - 1)) = pts[i] - pts[0];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(diffs);
  lu.setThreshold(tol);
  if (lu.rank() < n) {
    throw Error(ErrorCode::DegenerateInstance, "points do not span the ambient space");
  }
}

Hull hull_1d(const std::vector<Vector>& pts, double tol) {
  auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(),
                                      [](const Vector& a, const Vector& b) { return a(0) < b(0); });
  if ((*hi)(0) - (*lo)(0) <= tol) {
    throw Error(ErrorCode::DegenerateInstance, "interval of zero length");
  }
  Hull h;
  h.vertices = {*lo, *hi};
  h.facets = {{Vector::Constant(1, 1.0), (*hi)(0)}, {Vector::Constant(1, -1.0), -(*lo)(0)}};
  return h;
}

double cross2(const Vector& o, const Vector& a, const Vector& b) {
  return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

Hull hull_2d(std::vector<Vector> pts, double tol) {
  std::sort(pts.begin(), pts.end(), [](const Vector& a, const Vector& b) {
    return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
  });
  const double area_tol = tol * scale_of(pts);
  std::vector<Vector> chain(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross2(chain[k - 2], chain[k - 1], pts[i]) <= area_tol) --k;
    chain[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(chain[k - 2], chain[k - 1], pts[i]) <= area_tol) --k;
    chain[k++] = pts[i];
  }
  chain.resize(k > 0 ? k - 1 : 0);
  if (chain.size() < 3) throw Error(ErrorCode::DegenerateInstance, "collinear points");

  Hull h;
  h.vertices = chain;  // counter-clockwise
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Vector& a = chain[i];
    const Vector& b = chain[(i + 1) % chain.size()];
    Vector normal(2);
    normal << (b(1) - a(1)), -(b(0) - a(0));
    normal.normalize();
    h.facets.push_back({normal, normal.dot(a)});
  }
  return h;
}

// Normal of the hyperplane through n points in R^n (generalised cross product).
Vector hyperplane_normal(const std::vector<const Vector*>& sel, int n) {
  if (n == 3) {
    const Eigen::Vector3d a = (*sel[1] - *sel[0]).head<3>();
    const Eigen::Vector3d b = (*sel[2] - *sel[0]).head<3>();
    const Eigen::Vector3d c = a.cross(b);
    Vector out(3);
    out << c(0), c(1), c(2);
    return out;
  }
  Eigen::Matrix<double, 3, 4> rows;
  for (int r = 1; r < 4; ++r) rows.row(r - 1) = (*sel[static_cast<std::size_t>(r)] - *sel[0]).transpose().head<4>();
  Vector normal(4);
  for (int j = 0; j < 4; ++j) {
    Eigen::Matrix3d minor;
    for (int c = 0, cc = 0; c < 4; ++c) {
      if (c == j) continue;
      minor.col(cc++) = rows.col(c);
    }
    normal(j) = ((j % 2) ? -1.0 : 1.0) * minor.determinant();
  }
  return normal;
}

Hull hull_nd(const std::vector<Vector>& pts, int n, double tol) {
  const std::size_t m = pts.size();
  const double s = scale_of(pts);
  Hull h;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<const Vector*> sel(static_cast<std::size_t>(n));

  auto already_have = [&](const Vector& normal, double offset) {
    for (const auto& f : h.facets) {
      if ((f.normal - normal).cwiseAbs().maxCoeff() < 1e-8 && std::abs(f.offset - offset) < 1e-8 * s) {
        return true;
      }
    }
    return false;
  };

  while (true) {
    for (int i = 0; i < n; ++i) sel[static_cast<std::size_t>(i)] = &pts[idx[static_cast<std::size_t>(i)]];
    Vector normal = hyperplane_normal(sel, n);
    const double len = normal.norm();
    if (len > tol * std::pow(s, n - 1)) {
      normal /= len;
      const double offset = normal.dot(*sel[0]);
      bool above = false;
      bool below = false;
      for (std::size_t j = 0; j < m && !(above && below); ++j) {
        const double d = normal.dot(pts[j]) - offset;
        if (d > tol * s) above = true;
        if (d < -tol * s) below = true;
      }
      if (!(above && below)) {
        if (above) {
          normal = -normal;
        }
        const double off = above ? -offset : offset;
        if (!already_have(normal, off)) h.facets.push_back({normal, off});
      }
    }
    // next combination
    int i = n - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - static_cast<std::size_t>(n - i)) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }

  for (const auto& p : pts) {
    Eigen::MatrixXd normals(n, 0);
    for (const auto& f : h.facets) {
      if (std::abs(f.normal.dot(p) - f.offset) <= 1e3 * tol * s) {
        normals.conservativeResize(n, normals.cols() + 1);
        normals.col(normals.cols() - 1) = f.normal;
      }
    }
    if (normals.cols() < n) continue;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(normals);
    lu.setThreshold(1e-9);
    if (lu.rank() == n) h.vertices.push_back(p);
  }
  if (static_cast<int>(h.vertices.size()) < n + 1) {
    throw Error(ErrorCode::DegenerateInstance, "hull has too few vertices");
  }
  return h;
}

}  // namespace

Hull convex_hull(const std::vector<Vector>& points) {
  if (points.empty()) throw Error(ErrorCode::DegenerateInstance, "no points");
  const int n = static_cast<int>(points.front().size());
  if (n < 1 || n > 4) throw Error(ErrorCode::DimensionTooLarge, "hulls are supported for n <= 4");
  for (const auto& p : points) {
    if (p.size() != n) throw Error(ErrorCode::DimMismatch, "points of mixed dimension");
    if (!p.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
  }
  constexpr double kTol = 1e-10;
  const double s = scale_of(points);
  auto pts = dedupe(points, kTol * s);
  if (n == 1) return hull_1d(pts, kTol * s);
  require_full_rank(pts, n, kTol * s);
  if (n == 2) return hull_2d(std::move(pts), kTol * s);
  return hull_nd(pts, n, kTol);
}

}  // namespace polarcalc::geometry
