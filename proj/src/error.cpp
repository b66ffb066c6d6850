#include "cregf/error.hpp"

namespace cregf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::InvalidProbability: return "InvalidProbability";
    case ErrorKind::OutsideSupport: return "OutsideSupport";
    case ErrorKind::NonFiniteMean: return "NonFiniteMean";
    case ErrorKind::NoClosedForm: return "NoClosedForm";
    case ErrorKind::DivergentIntegral: return "DivergentIntegral";
    case ErrorKind::DeadAtT: return "DeadAtT";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NegativeValue: return "NegativeValue";
    case ErrorKind::OrderOutOfRange: return "OrderOutOfRange";
    case ErrorKind::TooManySubsets: return "TooManySubsets";
    case ErrorKind::InsufficientSurvivors: return "InsufficientSurvivors";
    case ErrorKind::ZeroMean: return "ZeroMean";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NumericFailure: return "NumericFailure";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace cregf
