#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace logiclab::prop {

enum class Connective { And, Or, Implies, Iff };

struct SentenceNode;

/// Immutable propositional sentence. Copies share structure.
class Sentence {
 public:
  explicit Sentence(std::shared_ptr<const SentenceNode> node)
      : node_(std::move(node)) {}

  const SentenceNode& node() const { return *node_; }

  bool is_atom() const;
  bool is_negation() const;
  bool is_binary() const;

  /// Atom name; precondition is_atom().
  const std::string& name() const;
  /// Negated child; precondition is_negation().
  const Sentence& operand() const;
  /// Precondition is_binary().
  Connective connective() const;
  const Sentence& left() const;
  const Sentence& right() const;

  friend bool operator==(const Sentence& a, const Sentence& b);

 private:
  std::shared_ptr<const SentenceNode> node_;
};

struct AtomNode {
  std::string name;
};
struct NegationNode {
  Sentence operand;
};
struct BinaryNode {
  Connective op;
  Sentence left;
  Sentence right;
};

struct SentenceNode {
  std::variant<AtomNode, NegationNode, BinaryNode> value;
};

Sentence atom(std::string name);
Sentence negate(Sentence s);
Sentence binary(Connective op, Sentence left, Sentence right);
Sentence conj(Sentence left, Sentence right);
Sentence disj(Sentence left, Sentence right);
Sentence implies(Sentence left, Sentence right);
Sentence iff(Sentence left, Sentence right);

/// Parses the ASCII grammar: atoms [A-Za-z_][A-Za-z0-9_]*, operators
/// ~ & | -> <->, parentheses. Precedence ~ > & > | > -> > <->; & and | are
/// left-associative, -> and <-> right-associative.
Sentence parse(std::string_view src);

/// Fully parenthesized canonical form; parse(to_string(s)) == s.
std::string to_string(const Sentence& s);
std::string_view symbol(Connective op);

bool is_valid_atom_name(std::string_view name);

/// Atom names occurring in s, sorted.
std::set<std::string> atoms(const Sentence& s);
std::size_t depth(const Sentence& s);

using Evaluation = std::map<std::string, bool>;

/// Throws MissingAtom naming the first atom of s absent from e.
bool evaluate(const Sentence& s, const Evaluation& e);

struct TableRow {
  Evaluation assignment;
  bool value;
};

inline constexpr std::size_t kMaxTableAtoms = 24;

/// One row per assignment to atoms(s), atoms in sorted order, F before T,
/// the first atom most significant.
std::vector<TableRow> truth_table(const Sentence& s);

enum class Classification { Validity, Contradiction, Contingent };
std::string_view to_string(Classification c);

Classification classify(const Sentence& s);
bool equivalent(const Sentence& a, const Sentence& b);

/// Disjunctive normal form built from the true rows of the truth table.
/// A contradiction maps to (A & ~A) over its first atom.
Sentence to_dnf(const Sentence& s);

/// Literal, conjunction of literals, or disjunction of such conjunctions.
bool is_dnf(const Sentence& s);

/// A truth function of `arity` arguments. table[i] is the value on the
/// input whose j-th argument is bit (arity-1-j) of i, so row 0 is all F.
struct TruthFunction {
  unsigned arity = 0;
  std::vector<bool> table;

  bool operator()(const std::vector<bool>& args) const;
  friend bool operator==(const TruthFunction&, const TruthFunction&) = default;
  friend auto operator<=>(const TruthFunction&, const TruthFunction&) = default;
};

inline constexpr unsigned kMaxEnumerateArity = 4;
inline constexpr unsigned kMaxAdequacyArity = 3;

/// All 2^(2^arity) truth functions, ordered by table read as a binary
/// number with row 0 most significant.
std::vector<TruthFunction> enumerate_truth_functions(unsigned arity);

/// Truth function of a sentence over the given ordered argument atoms.
TruthFunction truth_function_of(const Sentence& s,
                                const std::vector<std::string>& args);

/// True iff closing the projections under composition with the basis
/// reaches every truth function of each arity 1..max_arity.
bool is_adequate(const std::vector<TruthFunction>& basis, unsigned max_arity);

namespace functions {
TruthFunction negation();
TruthFunction conjunction();
TruthFunction disjunction();
TruthFunction implication();
TruthFunction biconditional();
TruthFunction nor();
TruthFunction nand();
}  // namespace functions

}  // namespace logiclab::prop
