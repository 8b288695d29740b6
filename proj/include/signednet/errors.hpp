#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace signednet {

/// Every failure the library can raise, as a closed set of codes. Callers that
/// want to branch on the cause catch signednet::Error and switch on code();
/// the what() string carries the human-readable context (line numbers, node
/// labels, offending values).
enum class Err {
  ParseError,
  DuplicateEdge,
  ZeroWeight,
  SelfLoopRejected,
  IoError,
  DisconnectedInput,
  NotConnected,
  NotSymmetric,
  NoConvergence,
  LengthMismatch,
  StructurallyBalanced,
  ComplexLeadingEigenvalue,
  NotPSD,
  NotBalanced,
  UndirectedOnly,
  Divergent,
  IndeterminateRegime,
  RegimeMismatch,
  StepInstability,
  InvalidConfig,
  UsageError,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::ParseError: return "ParseError";
    case Err::DuplicateEdge: return "DuplicateEdge";
    case Err::ZeroWeight: return "ZeroWeight";
    case Err::SelfLoopRejected: return "SelfLoopRejected";
    case Err::IoError: return "IoError";
    case Err::DisconnectedInput: return "DisconnectedInput";
    case Err::NotConnected: return "NotConnected";
    case Err::NotSymmetric: return "NotSymmetric";
    case Err::NoConvergence: return "NoConvergence";
    case Err::LengthMismatch: return "LengthMismatch";
    case Err::StructurallyBalanced: return "StructurallyBalanced";
    case Err::ComplexLeadingEigenvalue: return "ComplexLeadingEigenvalue";
    case Err::NotPSD: return "NotPSD";
    case Err::NotBalanced: return "NotBalanced";
    case Err::UndirectedOnly: return "UndirectedOnly";
    case Err::Divergent: return "Divergent";
    case Err::IndeterminateRegime: return "IndeterminateRegime";
    case Err::RegimeMismatch: return "RegimeMismatch";
    case Err::StepInstability: return "StepInstability";
    case Err::InvalidConfig: return "InvalidConfig";
    case Err::UsageError: return "UsageError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}

  Err code() const noexcept { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

}  // namespace signednet
