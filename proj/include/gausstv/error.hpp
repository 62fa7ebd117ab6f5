#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gausstv {

enum class ErrorKind {
  InvalidInput,
  SingularCovariance,
  ResidualTooLarge,
  BudgetTooTight,
  InvalidInterval,
  NonpositiveVariance,
  OutOfRange,
  NegativeValue,
  NotADistribution,
  ZeroDelta,
  IdenticalInputs,
  InstanceTooLarge,
  DimensionTooLarge,
  DeadlineExceeded,
};

std::string_view to_string(ErrorKind kind);

/// True for failures caused by finite-precision arithmetic (residual and
/// budget violations) rather than by malformed input.
bool is_numerical(ErrorKind kind);

/// The single exception type thrown by the library. `stage()` names the
/// pipeline stage that raised it, when known.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }
  const std::string& detail() const noexcept { return detail_; }

  Error with_stage(std::string stage) const;

 private:
  Error(ErrorKind kind, std::string stage, std::string detail);

  ErrorKind kind_;
  std::string stage_;
  std::string detail_;
};

}  // namespace gausstv
