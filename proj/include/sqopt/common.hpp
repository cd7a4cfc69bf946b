#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>

namespace sqo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Fixed numerical policy shared by every module.
namespace tol {
inline constexpr double kMember = 1e-9;      // closed inequalities
inline constexpr double kStrictMargin = 1e-12;
inline constexpr double kSentinel = 1e6;      // unboundedness probe for 1-D reconstruction
inline constexpr double kActive = 1e-8;       // active-set detection
inline constexpr double kResidual = 1e-7;     // FJ/KKT residual
inline constexpr double kResolution = 1e-9;   // default bisection resolution
}  // namespace tol

enum class ErrorCode {
  DimensionMismatch,
  UnknownCatalogId,
  InvalidParams,
  NonPositiveStep,
  ParseError,
  PointNotInSet,
  PointOutsideDomain,
  BracketTooSmall,
  InvalidRegion,
  InvariantViolation,
  InfeasiblePoint,
  UnvalidatedSubgradient,
  PreconditionFailed,
  ActiveLevelMismatch,
  CertificateNotValidated,
  NoGridMinimizer,
  UnknownCase,
  ConfigError,
  ComputeError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Shortest decimal string that parses back to the same double.
std::string fmt_double(double x);

}  // namespace sqo
