#pragma once

#include <stdexcept>
#include <string>

namespace sieve {

// Base class for everything the library throws on bad input or failed checks.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (n = 0, p not prime, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Matrix shape mismatch.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Malformed knot or group input. `where` names the offending location
// ("byte 17", "crossings[2]", ...).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string where)
      : Error(where.empty() ? what : what + " (at " + where + ")"), where_(std::move(where)) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

// No ring element with the requested multiplicative order exists.
class NoSuchUnit : public DomainError {
 public:
  using DomainError::DomainError;
};

// A bounded search (brute force, field enumeration) would exceed its budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Two exact routes disagreed or an exact result was not integral.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace sieve
