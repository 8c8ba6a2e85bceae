#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ckdyn {

/// Syntax or validation error while parsing an expression.
/// `position()` is the 0-based character offset of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Numeric failure during expression evaluation: division by zero or a
/// non-finite result. Never silently propagated as inf/NaN.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The coordinate Hessian is singular (or past the conditioning threshold),
/// so the semispray cannot be solved at this state.
class DegenerateLagrangian : public std::runtime_error {
 public:
  explicit DegenerateLagrangian(double condition_estimate)
      : std::runtime_error("degenerate Lagrangian: Hessian condition estimate " +
                           std::to_string(condition_estimate) + " exceeds threshold"),
        condition_estimate_(condition_estimate) {}

  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// Run-configuration validation failure. `field()` names the offending
/// config entry as a dotted path, e.g. "lagrangian.params.g".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(field) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace ckdyn
