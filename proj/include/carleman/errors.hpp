#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace carleman {

using Complex = std::complex<double>;

/// Failure categories. The CLI maps each one to its own exit status.
enum class ErrorCode {
  InvalidArgument,
  ParseError,
  OrderMismatch,
  NonConvergence,
  RestrictiveConditionViolated,
  ReversionImpossible,
  ShiftInconsistent,
  ResonantEigenvalues,
  Superattracting,
  OutOfChart,
  NonConvergent,
  BranchMismatch,
  ChartEscape,
  DomainError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Process exit status used by the command-line tool for `code`.
int exit_status(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Newton iteration for a fixed point did not settle.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& message, Complex last_iterate)
      : Error(ErrorCode::NonConvergence, message), last_iterate_(last_iterate) {}

  [[nodiscard]] Complex last_iterate() const noexcept { return last_iterate_; }

 private:
  Complex last_iterate_;
};

/// Two eigenvalues λ^j and λ^k are numerically indistinguishable.
class ResonantEigenvalues : public Error {
 public:
  ResonantEigenvalues(const std::string& message, int j, int k)
      : Error(ErrorCode::ResonantEigenvalues, message), j_(j), k_(k) {}

  [[nodiscard]] int j() const noexcept { return j_; }
  [[nodiscard]] int k() const noexcept { return k_; }

 private:
  int j_;
  int k_;
};

/// A point (or an orbit step) left the region where the chart series are trusted.
class OutOfChart : public Error {
 public:
  explicit OutOfChart(const std::string& message, std::optional<int> step = std::nullopt)
      : Error(ErrorCode::OutOfChart, message), step_(step) {}

  /// Orbit step at which the escape happened, when the failure came from an orbit.
  [[nodiscard]] std::optional<int> step() const noexcept { return step_; }

 private:
  std::optional<int> step_;
};

}  // namespace carleman
