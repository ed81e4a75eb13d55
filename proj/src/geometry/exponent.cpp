#include <charconv>
#include <cmath>
#include <sstream>

#include "polarcalc/core.hpp"

namespace polarcalc {

Exponent Exponent::finite(double p) {
  if (!std::isfinite(p) || p < 1.0) {
    throw Error(ErrorCode::BadExponent, "exponent must satisfy p >= 1, got " + std::to_string(p));
  }
  return Exponent(p, false);
}

Exponent Exponent::parse(std::string_view token) {
  if (token == "inf" || token == "Inf" || token == "INF" || token == "infinity") {
    return infinity();
  }
  double p = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, p);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::BadExponent, "cannot parse exponent '" + std::string(token) + "'");
  }
  return finite(p);
}

double Exponent::value() const {
  if (infinite_) throw Error(ErrorCode::BadExponent, "numeric value of the infinite exponent");
  return value_;
}

Exponent Exponent::conjugate() const {
  if (infinite_) return finite(1.0);
  if (value_ == 1.0) return infinity();
  return finite(value_ / (value_ - 1.0));
}

double Exponent::mean(double a, double b) const {
  if (infinite_) return std::max(a, b);
  if (value_ == 1.0) return a + b;
  const double m = std::max(a, b);
  if (m <= 0.0) return 0.0;
  // Scaled to avoid overflow for large p.
  return m * std::pow(std::pow(a / m, value_) + std::pow(b / m, value_), 1.0 / value_);
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os << value_;
  return os.str();
}

bool Exponent::operator<(const Exponent& other) const noexcept {
  if (infinite_) return false;
  if (other.infinite_) return true;
  return value_ < other.value_;
}

}  // namespace polarcalc
