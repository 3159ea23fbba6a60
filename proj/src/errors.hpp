#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace canonsym {

enum class Errc {
  UnexpectedToken,
  UnexpectedEnd,
  UnknownIdentifier,
  ArityMismatch,
  DivisionByZeroConstant,
  NotPolynomialInMomenta,
  JetVariablePresent,
  DomainError,
  ProbeDomainExhausted,
  NotContactField,
  BasePointSingular,
  NonIntegrableAlongPath,
  NotInvariant,
  NoClosedFormAntiderivative,
  HNotKineticMinusPotential,
  WNotLinearHomogeneous,
  HNotPolynomial,
  DegreeTooLarge,
  NotSeparable,
  NewtonDivergence,
  SchemaError,
  IoError,
  BadArgument,
  Internal,
};

const char* errc_name(Errc c);

/// The single exception type of the library: a code plus a human message,
/// with a byte offset into the source text for parser diagnostics.
class Error : public std::runtime_error {
public:
  static constexpr std::size_t no_offset = static_cast<std::size_t>(-1);

  Error(Errc code, std::string message, std::size_t offset = no_offset)
      : std::runtime_error(std::move(message)), code_(code), offset_(offset) {}

  Errc code() const noexcept { return code_; }
  std::size_t offset() const noexcept { return offset_; }
  bool has_offset() const noexcept { return offset_ != no_offset; }

private:
  Errc code_;
  std::size_t offset_;
};

[[noreturn]] inline void raise(Errc code, std::string message,
                               std::size_t offset = Error::no_offset) {
  throw Error(code, std::move(message), offset);
}

} // namespace canonsym
