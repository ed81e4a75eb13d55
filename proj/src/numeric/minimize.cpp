#include <algorithm>
#include <cmath>
#include <limits>

#include "polarcalc/numeric.hpp"

namespace polarcalc::numeric {
namespace {

constexpr double kInvPhi = 0.6180339887498949;

struct Bracket {
  double lo, hi;
};

// Grows a bracket [lo, hi] around a minimiser of a convex function.
Bracket bracket_minimum(const std::function<double(double)>& f, double x0, double step) {
  double f0 = f(x0);
  double fr = f(x0 + step);
  double fl = f(x0 - step);
  if (fr >= f0 && fl >= f0) return {x0 - step, x0 + step};

  const double dir = fr < fl ? 1.0 : -1.0;
  double prev = x0;
  double cur = x0 + dir * step;
  double fcur = dir > 0 ? fr : fl;
  double fprev = f0;
  double h = step;
  for (int i = 0; i < 200; ++i) {
    h *= 2.0;
    const double next = cur + dir * h;
    const double fnext = f(next);
    if (fnext >= fcur) {
      return dir > 0 ? Bracket{prev, next} : Bracket{next, prev};
    }
    prev = cur;
    fprev = fcur;
    cur = next;
    fcur = fnext;
  }
  (void)fprev;
  return dir > 0 ? Bracket{prev, cur} : Bracket{cur, prev};
}

}  // namespace

Minimum minimize_convex_1d(const std::function<double(double)>& f, double start, double scale,
                           double rel_tol) {
  const double step = scale > 0 ? scale : 1.0;
  auto [a, b] = bracket_minimum(f, start, step);
  const double tol = rel_tol * step;

  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 400; ++it) {
    const double width = b - a;
    if (width <= tol || width <= 4.0 * std::numeric_limits<double>::epsilon() *
                                         std::max(std::abs(a), std::abs(b))) {
      break;
    }
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  Minimum m;
  m.argmin = Vector::Constant(1, fc <= fd ? c : d);
  m.value = std::min(fc, fd);
  const double mid = 0.5 * (a + b);
  const double fm = f(mid);
  if (fm < m.value) {
    m.value = fm;
    m.argmin(0) = mid;
  }
  return m;
}

Minimum minimize_convex_interval(const std::function<double(double)>& f, double lo, double hi,
                                 double rel_tol) {
  double a = lo;
  double b = hi;
  const double tol = rel_tol * std::max(hi - lo, 1e-300);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  Minimum m;
  m.argmin = Vector::Constant(1, fc <= fd ? c : d);
  m.value = std::min(fc, fd);
  for (double end : {lo, hi}) {
    const double fe = f(end);
    if (fe < m.value) {
      m.value = fe;
      m.argmin(0) = end;
    }
  }
  return m;
}

namespace {

Minimum nested(const std::function<double(const Vector&)>& f, Vector& point, int coord,
               double scale, double rel_tol) {
  const int n = static_cast<int>(point.size());
  if (coord == n - 1) {
    auto g = [&](double t) {
      point(coord) = t;
      return f(point);
    };
    Minimum m = minimize_convex_1d(g, point(coord), scale, rel_tol);
    point(coord) = m.argmin(0);
    m.argmin = point;
    return m;
  }
  Vector best = point;
  double best_value = std::numeric_limits<double>::infinity();
  auto g = [&](double t) {
    point(coord) = t;
    Minimum inner = nested(f, point, coord + 1, scale, rel_tol);
    if (inner.value < best_value) {
      best_value = inner.value;
      best = inner.argmin;
    }
    return inner.value;
  };
  minimize_convex_1d(g, point(coord), scale, rel_tol);
  point = best;
  return {best, best_value};
}

}  // namespace

Minimum minimize_convex(const std::function<double(const Vector&)>& f, const Vector& start,
                        double scale, double rel_tol) {
  if (start.size() == 0) return {start, f(start)};
  Vector point = start;
  return nested(f, point, 0, scale, rel_tol);
}

}  // namespace polarcalc::numeric
