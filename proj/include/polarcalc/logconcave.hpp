#pragma once

// Log-concave functions f = e^{-v} and their calculus: Asplund product,
// convolution, polar function / Legendre transform, entropy, level sets and
// Ball bodies.
//
// The closed-form families carry a body and an exponent so that operators
// stay exact whenever the result is again in a family; everything else is
// an evaluation oracle for the potential v = -log f.

#include <cstdint>
#include <memory>
#include <string>

#include "json.hpp"

#include "polarcalc/core.hpp"
#include "polarcalc/geometry.hpp"

namespace polarcalc::logconcave {

using geometry::ConvexBody;
using geometry::ScalarField;

enum class Family {
  Indicator,         // chi_K
  ExpNegSupportPow,  // e^{-h_K^p}
  ExpNegGaugePow,    // e^{-||x||_K^p / p}
  Gaussian,          // e^{-|x|^2 / (2 sigma^2)}
  Grid,              // numeric oracle
};

std::string to_string(Family f);

class LogConcaveFn {
 public:
  static LogConcaveFn indicator(ConvexBody k);
  /// Needs 0 in int K and finite p.
  static LogConcaveFn exp_neg_support_pow(ConvexBody k, Exponent p);
  /// Needs 0 in int K and finite p.
  static LogConcaveFn exp_neg_gauge_pow(ConvexBody k, Exponent p);
  static LogConcaveFn gaussian(int n, double variance);
  /// f = e^{-v} for a convex v (may return +inf). `radius` bounds the
  /// super-level set {f >= e^{-40} sup f}; `sup` is sup f when known (< 0 if not).
  static LogConcaveFn from_potential(int n, ScalarField v, double radius, std::string description,
                                     double sup = -1.0);

  int dim() const { return dim_; }
  Family family() const { return family_; }
  double operator()(const Vector& x) const;
  /// -log f(x); +inf where f vanishes.
  double potential(const Vector& x) const;

  /// Body of the closed-form families (null for Gaussian and Grid).
  const ConvexBody* body() const { return body_.get(); }
  Exponent exponent() const { return p_; }
  double variance() const { return variance_; }
  /// Radius of a centred cube containing {f >= e^{-40} sup f}.
  double bounding_radius() const { return radius_; }
  std::string description() const;

 private:
  LogConcaveFn() = default;
  int dim_ = 0;
  Family family_ = Family::Grid;
  std::shared_ptr<const ConvexBody> body_;
  Exponent p_ = Exponent::finite(1.0);
  double variance_ = 1.0;
  double radius_ = 0.0;
  double sup_ = -1.0;
  ScalarField potential_;
  std::string description_;

  friend double sup_norm(const LogConcaveFn& f);
};

/// Parameters of the multi-resolution grid search for concave maxima.
struct GridSearch {
  Vector center;
  double radius = 1.0;
  int points = 17;
  /// Refinement rounds after the first full grid (at least two are run).
  int rounds = 40;
};

/// Maximiser of a concave function (may return -inf) over the cube
/// center +- radius; the window halves around the incumbent each round.
struct GridMax {
  Vector argmax;
  double value = 0.0;
  /// True when the first-round incumbent sits on the boundary of the cube.
  bool on_boundary = false;
};
GridMax grid_maximize(const ScalarField& phi, const GridSearch& search);

double sup_norm(const LogConcaveFn& f);

/// int f: closed form for the families, Monte Carlo over the bounding cube otherwise.
Estimate integral(const LogConcaveFn& f, std::uint64_t samples = 200000, std::uint64_t seed = 0);

/// int x f / int f.
VectorEstimate barycenter_fn(const LogConcaveFn& f, std::uint64_t samples = 200000,
                             std::uint64_t seed = 0);

/// -int f log f / int f, with 0 log 0 = 0. Radial quadrature for the
/// homogeneous families, Monte Carlo otherwise.
Estimate entropy(const LogConcaveFn& f, std::uint64_t samples = 200000, std::uint64_t seed = 0);

/// f * g in closed form where the families allow it, else a lazily
/// evaluated sup-convolution (see asplund_numeric).
LogConcaveFn asplund(const LogConcaveFn& f, const LogConcaveFn& g);
/// sup_y f(y) g(x - y) by grid search over y, never using closed forms.
LogConcaveFn asplund_numeric(const LogConcaveFn& f, const LogConcaveFn& g);

/// int f(y) g(x - y) dy. Exact for Gaussian pairs and for indicator pairs of
/// polytopes in n <= 3; Monte Carlo otherwise.
Estimate convolution_at(const LogConcaveFn& f, const LogConcaveFn& g, const Vector& x,
                        std::uint64_t samples = 200000, std::uint64_t seed = 0);

/// sup_y <x, y> - v(y). Throws UnboundedConjugate when the first-round
/// maximiser lies on the boundary of the search cube.
double legendre(const ScalarField& v, const Vector& x, const GridSearch& search);

/// f°(x) = e^{-L(-log f)(x)}.
LogConcaveFn polar_fn(const LogConcaveFn& f);
/// Polar through the Legendre grid search only.
LogConcaveFn polar_fn_numeric(const LogConcaveFn& f);

struct EpigraphLevelSet {
  double t = 1.0;
  ConvexBody body;
};

/// K_t = {x : f(x) >= t ||f||_inf}. Throws EmptyLevelSet for t > 1.
EpigraphLevelSet level_set(const LogConcaveFn& f, double t);

/// Gauge of K_p(f) = {x : int_0^inf f(rx) r^{p-1} dr >= f(0)/p}; p <= 0 means p = n.
double ball_body_gauge(const LogConcaveFn& f, const Vector& x, double p = 0.0);
/// K_f as a body (gauge oracle). Throws ZeroAtOrigin if f(0) = 0.
ConvexBody ball_body(const LogConcaveFn& f, double p = 0.0);

/// {"family", "dim", "p", "body"} (plus "variance" for Gaussians).
nlohmann::json to_json(const LogConcaveFn& f);
LogConcaveFn fn_from_json(const nlohmann::json& j);

}  // namespace polarcalc::logconcave
