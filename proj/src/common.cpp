#include "sqopt/common.hpp"

#include <charconv>
#include <cmath>

namespace sqo {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnknownCatalogId: return "UnknownCatalogId";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::NonPositiveStep: return "NonPositiveStep";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::PointNotInSet: return "PointNotInSet";
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::BracketTooSmall: return "BracketTooSmall";
    case ErrorCode::InvalidRegion: return "InvalidRegion";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::InfeasiblePoint: return "InfeasiblePoint";
    case ErrorCode::UnvalidatedSubgradient: return "UnvalidatedSubgradient";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::ActiveLevelMismatch: return "ActiveLevelMismatch";
    case ErrorCode::CertificateNotValidated: return "CertificateNotValidated";
    case ErrorCode::NoGridMinimizer: return "NoGridMinimizer";
    case ErrorCode::UnknownCase: return "UnknownCase";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::ComputeError: return "ComputeError";
  }
  return "Unknown";
}

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace sqo
