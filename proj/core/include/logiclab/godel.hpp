#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logiclab/bignat.hpp"
#include "logiclab/fol.hpp"
#include "logiclab/prop.hpp"

namespace logiclab::hf {

// Logical symbol codes. Registered symbols start at kFirstSymbolCode.
inline constexpr std::uint64_t kCodeNot = 1;
inline constexpr std::uint64_t kCodeOr = 2;
inline constexpr std::uint64_t kCodeAnd = 3;
inline constexpr std::uint64_t kCodeImplies = 4;
inline constexpr std::uint64_t kCodeIff = 5;
inline constexpr std::uint64_t kCodeExists = 6;
inline constexpr std::uint64_t kCodeForall = 7;
inline constexpr std::uint64_t kCodeEq = 8;
inline constexpr std::uint64_t kFirstSymbolCode = 9;

enum class GodelKind { Relation, Function, Constant, Variable, Atom };

struct GodelSymbol {
  std::string name;
  GodelKind kind;
  std::size_t arity = 0;
  friend bool operator==(const GodelSymbol&, const GodelSymbol&) = default;
};

/// Names and their codes, assigned in registration order. A name has one
/// kind.
class SymbolTable {
 public:
  /// Returns the code. Re-adding an identical entry is a no-op; a clash in
  /// kind or arity throws InvalidInput.
  std::uint64_t add(const std::string& name, GodelKind kind, std::size_t arity = 0);
  std::uint64_t add_variable(const std::string& name) { return add(name, GodelKind::Variable); }
  /// Relations, functions, then constants, each in name order.
  void add_signature(const fol::Signature& sig);

  std::optional<std::uint64_t> code_of(const std::string& name) const;
  const GodelSymbol* symbol(std::uint64_t code) const;
  /// symbols()[i] has code kFirstSymbolCode + i.
  const std::vector<GodelSymbol>& symbols() const { return symbols_; }

  /// The non-variable, non-atom part.
  fol::Signature signature() const;

  /// zero, S and D for binary numerals, plus the variables x, y, z, u, v, w.
  static SymbolTable arithmetic();

  friend bool operator==(const SymbolTable& a, const SymbolTable& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<GodelSymbol> symbols_;
  std::map<std::string, std::uint64_t> index_;
};

/// "godel-symbols v1" followed by `code kind name [arity]` lines.
void write_symbol_table(std::ostream& out, const SymbolTable& t);
SymbolTable read_symbol_table(std::istream& in);
std::string format_symbol_table(const SymbolTable& t);
SymbolTable parse_symbol_table(const std::string& text);

/// Polish-order code sequence. Throws UnregisteredSymbol and ArityMismatch.
std::vector<std::uint64_t> godel_codes(const SymbolTable& t, const fol::Formula& f);
std::vector<std::uint64_t> godel_codes(const SymbolTable& t, const prop::Sentence& s);

/// Prime-power product of the code sequence.
BigNat godel_number(const SymbolTable& t, const fol::Formula& f);
BigNat godel_number(const SymbolTable& t, const prop::Sentence& s);

/// Throws NotACode unless the sequence is exactly one well-formed formula.
fol::Formula decode_codes(const SymbolTable& t, const std::vector<std::uint64_t>& codes);
fol::Formula godel_decode(const SymbolTable& t, const BigNat& n);
prop::Sentence godel_decode_sentence(const SymbolTable& t, const BigNat& n);

// ---------------------------------------------------------------------------
// Numerals and diagonalization

inline constexpr const char* kZero = "zero";
inline constexpr const char* kSucc = "S";
inline constexpr const char* kDouble = "D";

/// Binary numeral: 0 is zero, 2k is D(k), 2k+1 is S(D(k)) and 1 is S(zero).
/// Its depth is linear in the bit length of n. Throws UnregisteredSymbol
/// unless zero, S and D are registered.
fol::Term numeral(const SymbolTable& t, const BigNat& n);
/// The value of a numeral term over zero, S and D; nullopt otherwise.
std::optional<BigNat> numeral_value(const fol::Term& term);

/// rho with its free variable replaced by the numeral of its own number.
/// Throws FreeVariableCount unless rho has exactly one free variable.
fol::Formula self_apply(const SymbolTable& t, const fol::Formula& rho);

struct Diagonal {
  fol::Formula sigma;  // exists y. (chi(x,y) & psi(y))
  fol::Formula theta;  // sigma with x replaced by the numeral of sigma
};

/// Uses the variables x and y. Variables of sigma missing from the table
/// are registered. Throws
/// UnregisteredSymbol or ArityMismatch unless chi_name is a binary relation
/// of the table, and FreeVariableCount unless psi has one free variable.
Diagonal diagonal_sentence(SymbolTable& t, const fol::Formula& psi, const std::string& chi_name);

}  // namespace logiclab::hf
