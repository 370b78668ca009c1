// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace bowley {

/// Argument outside the mathematical domain of an operation (t outside [0,1], x outside [0,M]).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid construction parameters. Carries the offending field name so config
/// diagnostics can point at it.
class InvalidArgument : public std::invalid_argument {
 public:
  InvalidArgument(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A documented precondition of an operation does not hold. `gap` quantifies
/// by how much (0 when not meaningful).
class PreconditionError : public std::logic_error {
 public:
  PreconditionError(const std::string& what, double gap = 0.0)
      : std::logic_error(what), gap_(gap) {}

  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

/// Two independent evaluation routes of the same quantity disagree.
class RouteDisagreement : public std::runtime_error {
 public:
  RouteDisagreement(const std::string& what, double first, double second)
      : std::runtime_error(what), first_(first), second_(second) {}

  double first() const noexcept { return first_; }
  double second() const noexcept { return second_; }

 private:
  double first_;
  double second_;
};

}  // namespace bowley
