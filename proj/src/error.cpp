#include "gausstv/error.hpp"

#include <utility>

namespace gausstv {

namespace {

std::string format_message(ErrorKind kind, const std::string& stage,
                           const std::string& detail) {
  std::string out;
  if (!stage.empty()) {
    out += stage;
    out += ": ";
  }
  out += to_string(kind);
  if (!detail.empty()) {
    out += ": ";
    out += detail;
  }
  return out;
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::SingularCovariance: return "SingularCovariance";
    case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::BudgetTooTight: return "BudgetTooTight";
    case ErrorKind::InvalidInterval: return "InvalidInterval";
    case ErrorKind::NonpositiveVariance: return "NonpositiveVariance";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NegativeValue: return "NegativeValue";
    case ErrorKind::NotADistribution: return "NotADistribution";
    case ErrorKind::ZeroDelta: return "ZeroDelta";
    case ErrorKind::IdenticalInputs: return "IdenticalInputs";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::DeadlineExceeded: return "DeadlineExceeded";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularCovariance:
    case ErrorKind::ResidualTooLarge:
    case ErrorKind::BudgetTooTight:
    case ErrorKind::DeadlineExceeded:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : Error(kind, std::string{}, message) {}

Error::Error(ErrorKind kind, std::string stage, std::string detail)
    : std::runtime_error(format_message(kind, stage, detail)),
      kind_(kind),
      stage_(std::move(stage)),
      detail_(std::move(detail)) {}

Error Error::with_stage(std::string stage) const {
  // Innermost stage wins; re-tagging an already tagged error is a no-op.
  if (!stage_.empty()) return *this;
  return Error(kind_, std::move(stage), detail_);
}

}  // namespace gausstv
