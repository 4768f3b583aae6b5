#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eqc {

enum class Errc {
  NotPrime,
  ReducibleModulus,
  NoModulusFound,
  InvalidModulus,
  FieldTooLarge,
  DivisionByZero,
  MixedFields,
  DegenerateLeadingCoefficient,
  ZeroPolynomial,
  ConstantBase,
  NotMonic,
  NotOriginal,
  DegreeMismatch,
  HEqualsXr,
  InvalidParams,
  NoValidM,
  NotAPower,
  NonIntegerResult,
  TooLarge,
  ParseError,
};

constexpr std::string_view errc_name(Errc e) noexcept
{
  switch (e) {
  case Errc::NotPrime: return "NotPrime";
  case Errc::ReducibleModulus: return "ReducibleModulus";
  case Errc::NoModulusFound: return "NoModulusFound";
  case Errc::InvalidModulus: return "InvalidModulus";
  case Errc::FieldTooLarge: return "FieldTooLarge";
  case Errc::DivisionByZero: return "DivisionByZero";
  case Errc::MixedFields: return "MixedFields";
  case Errc::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
  case Errc::ZeroPolynomial: return "ZeroPolynomial";
  case Errc::ConstantBase: return "ConstantBase";
  case Errc::NotMonic: return "NotMonic";
  case Errc::NotOriginal: return "NotOriginal";
  case Errc::DegreeMismatch: return "DegreeMismatch";
  case Errc::HEqualsXr: return "HEqualsXr";
  case Errc::InvalidParams: return "InvalidParams";
  case Errc::NoValidM: return "NoValidM";
  case Errc::NotAPower: return "NotAPower";
  case Errc::NonIntegerResult: return "NonIntegerResult";
  case Errc::TooLarge: return "TooLarge";
  case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Exception carrying one of the library's error kinds.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
  {
  }

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

} // namespace eqc
