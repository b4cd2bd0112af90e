#pragma once

#include <stdexcept>
#include <string>

namespace lx {

enum class Errc {
  CompositeP,
  ReduciblePolynomial,
  DegreeMismatch,
  OrderTooLarge,
  FieldMismatch,
  ZeroToZero,
  DivisionByZero,
  InternalError,
  NotInGroup,
  OutOfRange,
  NotPrimitive,
  WindowTooLong,
  NotFullPeriod,
  BadFormat,
  IoError,
};

constexpr const char* errc_name(Errc c) {
  switch (c) {
    case Errc::CompositeP: return "CompositeP";
    case Errc::ReduciblePolynomial: return "ReduciblePolynomial";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::OrderTooLarge: return "OrderTooLarge";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ZeroToZero: return "ZeroToZero";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::InternalError: return "InternalError";
    case Errc::NotInGroup: return "NotInGroup";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NotPrimitive: return "NotPrimitive";
    case Errc::WindowTooLong: return "WindowTooLong";
    case Errc::NotFullPeriod: return "NotFullPeriod";
    case Errc::BadFormat: return "BadFormat";
    case Errc::IoError: return "IoError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace lx
