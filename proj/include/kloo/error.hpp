#pragma once

#include <concepts>
#include <stdexcept>
#include <string>
#include <utility>

namespace kloo {

/// Caller supplied something outside an operation's domain.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation would exceed the configured point-evaluation budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant failed. Always a bug or a corrupted input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InvariantViolation(what);
}

/// Builds the message only when the check fails.
template <std::invocable Message>
void ensure(bool cond, Message&& what) {
  if (!cond) throw InvariantViolation(std::forward<Message>(what)());
}

}  // namespace kloo
