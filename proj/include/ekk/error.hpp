#pragma once

#include <stdexcept>
#include <string>

namespace ekk {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or incompatible input (bad Cartan matrix, mixed root systems,
/// non-involution where an involution is required, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A word that was required to be reduced is not. `prefix` is the shortest
/// non-reduced prefix.
class NotReduced : public Error {
 public:
  NotReduced(std::string prefix)
      : Error("word is not reduced: failing prefix [" + prefix + "]"),
        prefix_(std::move(prefix)) {}
  const std::string& prefix() const { return prefix_; }

 private:
  std::string prefix_;
};

/// A configured size cap (term budget, brute-force word length) was hit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An identity that must hold by construction failed; indicates a bug or
/// corrupted input rather than a user error.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace ekk
