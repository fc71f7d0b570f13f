#pragma once

#include <stdexcept>
#include <string>

namespace codeg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DegreeMismatch : public Error {
public:
  using Error::Error;
};

/// The closure of the supplied generators exceeds the enumeration bound.
class OrderBoundExceeded : public Error {
public:
  using Error::Error;
};

class NotNormal : public Error {
public:
  using Error::Error;
};

class NotPrime : public Error {
public:
  using Error::Error;
};

/// Raised internally when a modulus fails to split the class algebra; the
/// table builder catches it and moves on to the next admissible prime.
class ModularSplitFailure : public Error {
public:
  using Error::Error;
};

/// A codegree came out non-integral. Indicates a broken character table.
class NonIntegral : public Error {
public:
  using Error::Error;
};

class InvalidAction : public Error {
public:
  using Error::Error;
};

class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Malformed generator file, manifest line or group spec.
class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace codeg
