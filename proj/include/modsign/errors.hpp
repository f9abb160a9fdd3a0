#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace modsign {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed construction input (wrong exponent count, bad spec string, ...).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A coefficient needed by a computation is missing from the data.
class NotAvailableError : public Error {
 public:
  explicit NotAvailableError(std::uint64_t index)
      : Error("coefficient not available for index " + std::to_string(index)),
        index_(index) {}
  std::uint64_t index() const noexcept { return index_; }

 private:
  std::uint64_t index_;
};

/// Ingested data violates a structural bound. Carries the first offending prime.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::uint64_t prime)
      : Error(what + " (first offending prime p=" + std::to_string(prime) + ")"),
        prime_(prime) {}
  std::uint64_t prime() const noexcept { return prime_; }

 private:
  std::uint64_t prime_;
};

/// Sample is empty or otherwise insufficient for an estimator.
class EmptySampleError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace modsign
