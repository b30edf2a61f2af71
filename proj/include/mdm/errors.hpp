#pragma once

#include <stdexcept>
#include <string>

namespace mdm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension products that overflow, exceed the configured cap, or disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Parameters outside an operation's domain (q >= 1, non-Hermitian input, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Unknown fixture or verification case identifiers.
class LookupError : public Error {
 public:
  using Error::Error;
};

}  // namespace mdm
