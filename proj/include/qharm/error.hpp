#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qharm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad numeric argument or violated precondition (p < 1, t < 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An irreducible label whose variant does not match the group kind.
class LabelMismatch : public Error {
 public:
  using Error::Error;
};

/// Operation not available for this group (no classical model, no fusion
/// product on degree labels, ...).
class UnsupportedGroup : public Error {
 public:
  using Error::Error;
};

class NotPolynomialGrowth : public Error {
 public:
  using Error::Error;
};

/// Ball or operator would exceed the desk-scale size guard.
class SizeGuardExceeded : public Error {
 public:
  SizeGuardExceeded(std::uint64_t requested, std::uint64_t limit)
      : Error("size guard exceeded: " + std::to_string(requested) + " > " +
              std::to_string(limit)),
        requested_(requested),
        limit_(limit) {}

  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t requested_;
  std::uint64_t limit_;
};

/// Power iteration ran out of iterations. Carries the last two estimates.
class NonConvergence : public Error {
 public:
  NonConvergence(double previous, double last)
      : Error("power iteration did not converge (last estimates " +
              std::to_string(previous) + ", " + std::to_string(last) + ")"),
        previous_(previous),
        last_(last) {}

  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

}  // namespace qharm
