#pragma once

#include <stdexcept>
#include <string>

namespace derq {

/// Malformed or out-of-range input (bad indices, rank mismatch, support
/// violations, membership failures).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Text that does not parse; carries the 1-based line number.
class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& message)
      : InputError("line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Argument outside the domain where a formula is asserted.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Collection exceeded its step cap: the presentation cannot be consistent.
class InconsistentPresentation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A wall-clock or node budget ran out. `progress()` describes how far the
/// computation got so a caller can report partial results.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& message, std::string progress)
      : std::runtime_error(message), progress_(std::move(progress)) {}

  const std::string& progress() const noexcept { return progress_; }

 private:
  std::string progress_;
};

}  // namespace derq
