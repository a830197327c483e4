#pragma once

#include <stdexcept>
#include <string>

namespace ojaregret {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape or dimension disagreement between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An input value violates a documented precondition or invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Round / expert / matrix index out of range.
class IndexError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration, CLI arguments, or serialized instance.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Problem instance exceeds the dense eigendecomposition cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

// A first-order oracle returned non-finite values or failed a certificate.
class OracleError : public Error {
 public:
  using Error::Error;
};

// Instance is degenerate for the requested analysis (e.g. zero overlap).
class DegenerateInstanceError : public Error {
 public:
  using Error::Error;
};

// Requested horizon is too small for the derived step size.
class HorizonError : public Error {
 public:
  HorizonError(const std::string& msg, std::size_t minimal_rounds)
      : Error(msg), minimal_rounds_(minimal_rounds) {}
  std::size_t minimal_rounds() const { return minimal_rounds_; }

 private:
  std::size_t minimal_rounds_;
};

// Operation needs information this instance does not carry (e.g. a basis).
class UnsupportedInstanceError : public Error {
 public:
  using Error::Error;
};

}  // namespace ojaregret
