#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "polarcalc/numeric.hpp"

namespace polarcalc::numeric {

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double* error_estimate) {
  if (a == b) {
    if (error_estimate) *error_estimate = 0.0;
    return 0.0;
  }
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, 20, rel_tol, &err);
  if (error_estimate) *error_estimate = err;
  return value;
}

double integrate_pieces(const std::function<double(double)>& f, std::vector<double> breaks,
                        double rel_tol) {
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    total += integrate(f, breaks[i], breaks[i + 1], rel_tol);
  }
  return total;
}

double sphere_area(int n) {
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

double unit_ball_volume(int n) {
  return std::pow(M_PI, 0.5 * n) / std::tgamma(1.0 + 0.5 * n);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

}  // namespace polarcalc::numeric
