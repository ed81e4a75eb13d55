#pragma once

// Shared vocabulary: small vectors, error codes, symbolic exponents and
// estimates with a standard error attached.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace polarcalc {

// Ambient dimension is at most 4; the projection-section check works in 2n.
inline constexpr int kMaxDim = 8;

using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

enum class ErrorCode {
  OriginNotInterior,
  BadExponent,
  DegenerateInstance,
  DimensionTooLarge,
  DimMismatch,
  NotIntegrable,
  UnboundedConjugate,
  ZeroAtOrigin,
  EmptyLevelSet,
  HypothesisViolated,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Exponent p in [1, inf]. Infinity is a separate state, never a large float.
class Exponent {
 public:
  static Exponent finite(double p);
  static Exponent infinity() { return Exponent(1.0, true); }
  /// Accepts a decimal number or the literal "inf".
  static Exponent parse(std::string_view token);

  bool is_infinite() const noexcept { return infinite_; }
  bool is_one() const noexcept { return !infinite_ && value_ == 1.0; }
  /// Throws BadExponent for the infinite exponent.
  double value() const;
  /// 1/p, with 1/inf = 0.
  double reciprocal() const noexcept { return infinite_ ? 0.0 : 1.0 / value_; }
  /// Hoelder conjugate q with 1/p + 1/q = 1.
  Exponent conjugate() const;
  /// (a^p + b^p)^(1/p) for non-negative a, b; max(a, b) at infinity.
  double mean(double a, double b) const;
  std::string to_string() const;

  bool operator==(const Exponent& other) const noexcept {
    return infinite_ == other.infinite_ && (infinite_ || value_ == other.value_);
  }
  /// Ordering with infinity as the largest element.
  bool operator<(const Exponent& other) const noexcept;

 private:
  Exponent(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

/// A scalar with its standard error (zero when computed exactly).
struct Estimate {
  double value = 0.0;
  double sigma = 0.0;
};

/// A vector-valued estimate with per-coordinate standard errors.
struct VectorEstimate {
  Vector value;
  Vector sigma;
};

inline Estimate operator*(const Estimate& a, const Estimate& b) {
  // First-order propagation for independent factors.
  const double s = std::sqrt(a.sigma * a.sigma * b.value * b.value +
                             b.sigma * b.sigma * a.value * a.value);
  return {a.value * b.value, s};
}

inline Estimate operator*(double c, const Estimate& a) {
  return {c * a.value, std::abs(c) * a.sigma};
}

/// Deterministic sub-seed derivation (splitmix64 finaliser).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

inline Vector zero_vector(int n) { return Vector::Zero(n); }

inline Vector make_vector(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace polarcalc
