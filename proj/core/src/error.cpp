#include "logiclab/error.hpp"

namespace logiclab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::UnknownOperator: return "unknown operator";
    case ErrorKind::UnknownSymbol: return "unknown symbol";
    case ErrorKind::ArityMismatch: return "arity mismatch";
    case ErrorKind::MissingAtom: return "missing atom";
    case ErrorKind::TooManyAtoms: return "too many atoms";
    case ErrorKind::ArityGuard: return "arity guard";
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::NotAPartialOrder: return "not a partial order";
    case ErrorKind::EmptySet: return "empty set in family";
    case ErrorKind::OutOfRange: return "out of range";
    case ErrorKind::SingletonSet: return "singleton set";
    case ErrorKind::UnsatisfyingWitness: return "unsatisfying witness";
    case ErrorKind::FuelExhausted: return "fuel exhausted";
    case ErrorKind::UncoveredVariable: return "uncovered free variable";
    case ErrorKind::NotASentence: return "not a sentence";
    case ErrorKind::NotASubsignature: return "not a subsignature";
    case ErrorKind::SignatureMismatch: return "signature mismatch";
    case ErrorKind::SizeGuard: return "size guard";
    case ErrorKind::EqualityPresent: return "equality present";
    case ErrorKind::UnknownState: return "unknown state";
    case ErrorKind::BadInputSymbol: return "bad input symbol";
    case ErrorKind::DivisionByZero: return "division by zero";
    case ErrorKind::ZeroInput: return "zero input";
    case ErrorKind::BaseGuard: return "base guard";
    case ErrorKind::UnboundedQuantifier: return "unbounded quantifier";
    case ErrorKind::NotCoprime: return "moduli not coprime";
    case ErrorKind::LengthMismatch: return "length mismatch";
    case ErrorKind::UnregisteredSymbol: return "unregistered symbol";
    case ErrorKind::NotACode: return "not a code";
    case ErrorKind::FreeVariableCount: return "free variable count";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

SyntaxError::SyntaxError(ErrorKind kind, std::size_t offset,
                         const std::string& message)
    : Error(kind, message + " at offset " + std::to_string(offset)),
      offset_(offset) {}

}  // namespace logiclab
