#pragma once

#include <stdexcept>
#include <string>

namespace metaplectic {

enum class Err {
  NotSymmetric,
  NotSPD,
  NoConvergence,
  NotUnitary,
  Singular,
  OddDimension,
  DimensionMismatch,
  NotSymplectic,
  NumericalBreakdown,
  NotFree,
  NotBlockDiagonal,
  NotConjugatePair,
  RealityCheckFailed,
  HalfDimOdd,
  VerdictHolds,
  UnknownName,
  BadParam,
  BadK,
  GridMismatch,
  NotCriticallySampled,
  ParseError,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::NotSymmetric: return "NotSymmetric";
    case Err::NotSPD: return "NotSPD";
    case Err::NoConvergence: return "NoConvergence";
    case Err::NotUnitary: return "NotUnitary";
    case Err::Singular: return "Singular";
    case Err::OddDimension: return "OddDimension";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::NotSymplectic: return "NotSymplectic";
    case Err::NumericalBreakdown: return "NumericalBreakdown";
    case Err::NotFree: return "NotFree";
    case Err::NotBlockDiagonal: return "NotBlockDiagonal";
    case Err::NotConjugatePair: return "NotConjugatePair";
    case Err::RealityCheckFailed: return "RealityCheckFailed";
    case Err::HalfDimOdd: return "HalfDimOdd";
    case Err::VerdictHolds: return "VerdictHolds";
    case Err::UnknownName: return "UnknownName";
    case Err::BadParam: return "BadParam";
    case Err::BadK: return "BadK";
    case Err::GridMismatch: return "GridMismatch";
    case Err::NotCriticallySampled: return "NotCriticallySampled";
    case Err::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}

  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

}  // namespace metaplectic
