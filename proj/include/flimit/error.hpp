#pragma once

#include <stdexcept>
#include <string>

namespace flimit {

enum class Errc {
  NotMonotone,
  BadSlope,
  OutOfRange,
  BadInterval,
  BadPartition,
  SyntaxError,
  UnknownSymbol,
  ArityError,
  ArityMismatch,
  PureConstant,
  TrivialWord,
  BadIntervals,
  BadConstants,
  IdentityInput,
  BadInput,
  BudgetExceeded,
  PreconditionFailed,
  OracleInconsistent,
};

const char* errc_name(Errc c);

/// Domain error carrying a machine-checkable code plus a human message.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotMonotone: return "NotMonotone";
    case Errc::BadSlope: return "BadSlope";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::BadInterval: return "BadInterval";
    case Errc::BadPartition: return "BadPartition";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownSymbol: return "UnknownSymbol";
    case Errc::ArityError: return "ArityError";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::PureConstant: return "PureConstant";
    case Errc::TrivialWord: return "TrivialWord";
    case Errc::BadIntervals: return "BadIntervals";
    case Errc::BadConstants: return "BadConstants";
    case Errc::IdentityInput: return "IdentityInput";
    case Errc::BadInput: return "BadInput";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::OracleInconsistent: return "OracleInconsistent";
  }
  return "Error";
}

}  // namespace flimit
