#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cregf {

enum class ErrorKind {
  InvalidParameter,
  InvalidProbability,
  OutsideSupport,
  NonFiniteMean,
  NoClosedForm,
  DivergentIntegral,
  DeadAtT,
  EmptyInput,
  NegativeValue,
  OrderOutOfRange,
  TooManySubsets,
  InsufficientSurvivors,
  ZeroMean,
  ParseError,
  NumericFailure,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace cregf
