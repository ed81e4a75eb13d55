#include <algorithm>
#include <cmath>
#include <limits>

#include "polarcalc/logconcave.hpp"
#include "polarcalc/numeric.hpp"

namespace polarcalc::logconcave {

GridMax grid_maximize(const ScalarField& phi, const GridSearch& search) {
  const int n = static_cast<int>(search.center.size());
  const int m = std::max(3, search.points);
  const int rounds = 1 + std::max(2, search.rounds);

  GridMax best;
  best.argmax = search.center;
  best.value = -std::numeric_limits<double>::infinity();
  Vector center = search.center;
  double half = search.radius;
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::vector<int> best_idx(static_cast<std::size_t>(n), 0);

  for (int round = 0; round < rounds; ++round) {
    const double h = 2.0 * half / (m - 1);
    std::fill(idx.begin(), idx.end(), 0);
    Vector y(n);
    while (true) {
      for (int i = 0; i < n; ++i) y(i) = center(i) - half + h * idx[static_cast<std::size_t>(i)];
      const double v = phi(y);
      if (v > best.value) {
        best.value = v;
        best.argmax = y;
        if (round == 0) best_idx = idx;
      }
      int k = 0;
      while (k < n && ++idx[static_cast<std::size_t>(k)] == m) idx[static_cast<std::size_t>(k++)] = 0;
      if (k == n) break;
    }
    if (round == 0) {
      if (!std::isfinite(best.value)) return best;
      best.on_boundary = std::any_of(best_idx.begin(), best_idx.end(), [m](int i) { return i == 0 || i == m - 1; });
    }
    center = best.argmax;
    half = 0.5 * half;
  }
  if (n <= 2) {
    // Grid rounds can stall beside a sharp ridge; nested golden section
    // follows it. Keep whichever incumbent is better.
    const auto polished = numeric::minimize_convex([&](const Vector& y) { return -phi(y); }, best.argmax,
                                                   2.0 * search.radius / (m - 1), 1e-10);
    if (-polished.value > best.value) {
      best.value = -polished.value;
      best.argmax = polished.argmin;
    }
  }
  return best;
}

double legendre(const ScalarField& v, const Vector& x, const GridSearch& search) {
  if (x.size() != search.center.size()) throw Error(ErrorCode::DimMismatch, "Legendre point dimension");
  const GridMax m = grid_maximize([&](const Vector& y) { return x.dot(y) - v(y); }, search);
  if (!std::isfinite(m.value)) throw Error(ErrorCode::UnboundedConjugate, "potential is +inf on the whole search grid");
  if (m.on_boundary) {
    throw Error(ErrorCode::UnboundedConjugate, "supremum not attained inside the search region");
  }
  return m.value;
}

}  // namespace polarcalc::logconcave
