#pragma once

#include <stdexcept>
#include <string>

namespace toricmld {

/// Raised when an argument violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a computed object fails a property that the underlying
/// classification guarantees. Always a bug, never a user error.
class TheoremViolation : public std::logic_error {
 public:
  explicit TheoremViolation(const std::string& what) : std::logic_error(what) {}
};

namespace detail {

inline void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidInput(message);
}

inline void ensure(bool ok, const std::string& message) {
  if (!ok) throw TheoremViolation(message);
}

}  // namespace detail
}  // namespace toricmld
