#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cltlab {

enum class ErrorKind {
  Parse,
  SumNotOne,
  NonPositiveProb,
  DuplicateValue,
  ZeroVariance,
  ExactBudgetExceeded,
  LatticeBudgetExceeded,
  NonZeroMean,
  KOutOfRange,
  NonConvergence,
  EtaTooSmallForBudget,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for every recoverable failure in the library.
/// `kind()` lets callers (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// what() without the kind prefix.
  const std::string& message() const noexcept { return message_; }

  /// Budget failures are "use a different mode" signals rather than bad input.
  bool is_budget() const noexcept {
    return kind_ == ErrorKind::ExactBudgetExceeded || kind_ == ErrorKind::LatticeBudgetExceeded ||
           kind_ == ErrorKind::EtaTooSmallForBudget;
  }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace cltlab
