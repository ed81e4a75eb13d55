#include "polarcalc/core.hpp"

namespace polarcalc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OriginNotInterior: return "OriginNotInterior";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::DegenerateInstance: return "DegenerateInstance";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotIntegrable: return "NotIntegrable";
    case ErrorCode::UnboundedConjugate: return "UnboundedConjugate";
    case ErrorCode::ZeroAtOrigin: return "ZeroAtOrigin";
    case ErrorCode::EmptyLevelSet: return "EmptyLevelSet";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace polarcalc
