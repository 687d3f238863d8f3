#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace logiclab {

enum class ErrorKind {
  Syntax,
  UnknownOperator,
  UnknownSymbol,
  ArityMismatch,
  MissingAtom,
  TooManyAtoms,
  ArityGuard,
  InvalidInput,
  NotAPartialOrder,
  EmptySet,
  OutOfRange,
  SingletonSet,
  UnsatisfyingWitness,
  FuelExhausted,
  UncoveredVariable,
  NotASentence,
  NotASubsignature,
  SignatureMismatch,
  SizeGuard,
  EqualityPresent,
  UnknownState,
  BadInputSymbol,
  DivisionByZero,
  ZeroInput,
  BaseGuard,
  UnboundedQuantifier,
  NotCoprime,
  LengthMismatch,
  UnregisteredSymbol,
  NotACode,
  FreeVariableCount,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Domain error raised by every logiclab operation. The kind is stable and
/// meant for programmatic inspection; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with the byte offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(ErrorKind kind, std::size_t offset, const std::string& message);

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace logiclab
