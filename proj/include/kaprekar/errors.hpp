#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kaprekar {

/// Base of every error raised by the library. `category()` is a stable,
/// machine-parsable token; the CLI prints it as the first field of its
/// one-line error report.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual std::string_view category() const noexcept = 0;
};

#define KAPREKAR_DEFINE_ERROR(Name, token)                        \
  class Name : public Error {                                     \
   public:                                                        \
    using Error::Error;                                           \
    std::string_view category() const noexcept override {         \
      return token;                                               \
    }                                                             \
  }

/// Value out of range for the configured state space, or a malformed
/// probability vector.
KAPREKAR_DEFINE_ERROR(DomainError, "domain");
/// Invalid or unsupported parameters (capacity, D < 3 for gap features, ...).
KAPREKAR_DEFINE_ERROR(ConfigError, "config");
/// A non-trivial orbit left the analysis space.
KAPREKAR_DEFINE_ERROR(ClosureError, "closure");
/// An iterative solver failed to reach its tolerance.
KAPREKAR_DEFINE_ERROR(NumericalError, "numerical");
/// A regression or standardization had no spread to work with.
KAPREKAR_DEFINE_ERROR(DegenerateError, "degenerate");
/// Least-squares design matrix is rank deficient.
KAPREKAR_DEFINE_ERROR(SingularError, "singular");
/// Filesystem failure while emitting outputs.
KAPREKAR_DEFINE_ERROR(IoError, "io");

#undef KAPREKAR_DEFINE_ERROR

}  // namespace kaprekar
