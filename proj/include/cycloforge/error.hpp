#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cycloforge {

enum class ErrorKind {
  DivisionByZero,
  RemainderNonzero,
  IndexOutOfRange,
  InvalidArgument,
  NotPrime,
  NotCoprime,
  NotCoprimeIndex,
  LOutOfRange,
  BadExponents,
  IntegralityFailure,
  RequiresLargeP,
  HypothesisViolated,
  NotSortedDistinctOddPrimes,
  UnknownConjecture,
  UnknownSuite,
  ParseError,
  IoError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::RemainderNonzero: return "RemainderNonzero";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::NotCoprimeIndex: return "NotCoprimeIndex";
    case ErrorKind::LOutOfRange: return "LOutOfRange";
    case ErrorKind::BadExponents: return "BadExponents";
    case ErrorKind::IntegralityFailure: return "IntegralityFailure";
    case ErrorKind::RequiresLargeP: return "RequiresLargeP";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NotSortedDistinctOddPrimes: return "NotSortedDistinctOddPrimes";
    case ErrorKind::UnknownConjecture: return "UnknownConjecture";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Domain error raised by every module. The kind is stable and machine-readable;
/// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace cycloforge
