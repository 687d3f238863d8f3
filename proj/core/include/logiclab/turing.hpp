#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "logiclab/bignat.hpp"

namespace logiclab::tm {

inline constexpr char kBlank = '~';

enum class Move { Left, Right };

struct Action {
  std::string state;
  char symbol;
  Move move;
  friend bool operator==(const Action&, const Action&) = default;
};

/// Deterministic single-tape machine. A missing (state, symbol) entry halts.
struct Machine {
  std::vector<std::string> states;  // declaration order; numbering for codes
  std::vector<char> alphabet;       // declaration order, contains kBlank
  std::string start;
  std::map<std::pair<std::string, char>, Action> transitions;

  friend bool operator==(const Machine&, const Machine&) = default;
};

/// Throws InvalidInput unless states/symbols are declared, distinct and
/// printable, the blank is in the alphabet and start is a state.
void validate(const Machine& m);

/// Sparse two-way tape; only non-blank cells are stored.
struct Configuration {
  std::map<long, char> tape;
  long head = 0;
  std::string state;
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

char read(const Configuration& c);
/// Initial configuration: input at cells 0.., head on cell 0.
Configuration initial(const Machine& m, const std::string& input);

/// nullopt when the machine halts in c. Throws UnknownState.
std::optional<Configuration> step(const Machine& m, const Configuration& c);

/// Non-blank symbols between the leftmost and rightmost non-blank cells.
std::string output_of(const Configuration& c);

/// "state: ab[c]d" with the head cell bracketed.
std::string format_configuration(const Configuration& c);

struct Halt {
  std::string output;
  std::uint64_t steps = 0;
  Configuration final;
};
struct OutOfFuel {
  std::uint64_t steps = 0;
};
using RunResult = std::variant<Halt, OutOfFuel>;

/// Throws BadInputSymbol for symbols outside the alphabet or the blank.
RunResult run(const Machine& m, const std::string& input, std::uint64_t fuel);

/// Configurations visited, the initial one first; at most fuel+1 entries.
std::vector<Configuration> trace(const Machine& m, const std::string& input,
                                 std::uint64_t fuel);

/// Base-one words joined by ','.
std::string unary_input(const std::vector<std::uint64_t>& args);

using NumericResult = std::variant<std::uint64_t, OutOfFuel>;
/// Number of 1s on the final tape.
NumericResult compute_numeric(const Machine& m, const std::vector<std::uint64_t>& args,
                              std::uint64_t fuel);

// ---------------------------------------------------------------------------
// Arithmetic coding

/// 2^a1 * 3^a2 * ... ; every entry must be positive.
BigNat encode_sequence(const std::vector<std::uint64_t>& seq);
/// Inverse of encode_sequence; nullopt if n is not of that shape.
std::optional<std::vector<std::uint64_t>> decode_sequence(const BigNat& n);

inline constexpr std::uint64_t kCodeVersion = 1;

/// Description sequence: version, state count, each state as length and
/// character codes, symbol count, symbol codes, start index, then one
/// (state, symbol, next state, written symbol, 1=L/2=R) group per
/// transition sorted by (state, symbol). Indices are 1-based.
std::vector<std::uint64_t> describe(const Machine& m);
BigNat encode_machine(const Machine& m);
/// Throws NotACode for numbers that are not a canonical description.
Machine decode_machine(const BigNat& code);
bool is_code(const BigNat& code);

struct UtmHalt {
  std::string output;
  std::uint64_t steps = 0;
};
struct Diverges {
  std::string reason;
};
using UtmResult = std::variant<UtmHalt, OutOfFuel, Diverges>;

/// Simulates the machine described by `code` directly from its description
/// sequence. Non-codes and inputs outside the coded alphabet diverge.
UtmResult utm_run(const BigNat& code, const std::string& input, std::uint64_t fuel);

/// {n <= fuel : utm_run(code, 1^n, fuel) halts}.
std::set<std::uint64_t> enumerate_we(const BigNat& code, std::uint64_t fuel);

// ---------------------------------------------------------------------------
// Machine files: `states: a b`, `alphabet: 1 ~`, `start: a`, then lines
// `q,s -> q',s',L|R`. Lines starting with '#' are comments.

Machine read_machine(std::istream& in);
Machine parse_machine(const std::string& text);
std::string format_machine(const Machine& m);

namespace fixtures {
Machine identity();
Machine successor();
Machine parity();
Machine adder();
Machine monus();
Machine constant_two();
Machine looper();
Machine even_length();
/// All of the above with their names.
std::vector<std::pair<std::string, Machine>> all();
}  // namespace fixtures

}  // namespace logiclab::tm
