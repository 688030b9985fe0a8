#pragma once

#include <stdexcept>
#include <string>

namespace sklab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was violated by the caller (bad parameters,
/// malformed input). The CLI maps these to exit code 2.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A theta value needed by a computation is too close to zero.
class NearZero : public Error {
public:
  using Error::Error;
};

/// A denominator of a relation coefficient is too close to zero; the
/// deformation point must be moved.
class DenominatorNearZero : public NearZero {
public:
  DenominatorNearZero(int n, std::string which)
      : NearZero("denominator near zero at n=" + std::to_string(n) + " (" + which + ")"),
        n_(n), which_(std::move(which)) {}

  int n() const noexcept { return n_; }
  const std::string& which() const noexcept { return which_; }

private:
  int n_;
  std::string which_;
};

/// Singular values show no clear gap around the rank cut.
class AmbiguousRank : public Error {
public:
  using Error::Error;
};

/// A numerical check that should hold by construction did not (fit residual,
/// extrapolation error, conditioning).
class VerificationFailure : public Error {
public:
  using Error::Error;
};

/// A bounded search ran out of budget.
class SearchFailure : public Error {
public:
  using Error::Error;
};

} // namespace sklab
