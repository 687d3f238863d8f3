#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace logiclab::fol {

enum class SymbolKind { Relation, Function, Constant };

struct SymbolInfo {
  SymbolKind kind;
  std::size_t arity;
  friend bool operator==(const SymbolInfo&, const SymbolInfo&) = default;
};

/// Non-logical symbols. Equality is built in and never declared.
class Signature {
 public:
  Signature& add_relation(const std::string& name, std::size_t arity);
  Signature& add_function(const std::string& name, std::size_t arity);
  Signature& add_constant(const std::string& name);

  const SymbolInfo* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }
  const std::map<std::string, SymbolInfo>& symbols() const { return symbols_; }

  /// True iff every symbol of `sub` is declared here with the same kind/arity.
  bool includes(const Signature& sub) const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  void add(const std::string& name, SymbolInfo info);
  std::map<std::string, SymbolInfo> symbols_;
};

/// "rel:R/2,fun:f/1,const:c"; an empty string is the empty signature.
Signature parse_signature(std::string_view text);
std::string to_string(const Signature& sig);

bool is_identifier(std::string_view name);

// ---------------------------------------------------------------------------
// Terms

enum class TermKind { Var, Const, Apply };

struct TermNode;

class Term {
 public:
  explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}

  TermKind kind() const;
  const std::string& name() const;
  const std::vector<Term>& args() const;

  friend bool operator==(const Term& a, const Term& b);
  /// Orders by printed form.
  friend bool operator<(const Term& a, const Term& b);

 private:
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  TermKind kind;
  std::string name;
  std::vector<Term> args;
};

Term var(std::string name);
Term constant(std::string name);
Term apply(std::string fname, std::vector<Term> args);

std::string to_string(const Term& t);
std::set<std::string> variables(const Term& t);
/// Nesting depth: variables and constants have depth 0.
std::size_t depth(const Term& t);
bool is_ground(const Term& t);

// ---------------------------------------------------------------------------
// Formulas

enum class FormulaKind { Eq, Rel, Not, And, Or, Implies, Iff, Exists, Forall };

struct FormulaNode;

class Formula {
 public:
  explicit Formula(std::shared_ptr<const FormulaNode> node)
      : node_(std::move(node)) {}

  FormulaKind kind() const;
  bool is_atomic() const;
  bool is_binary() const;
  bool is_quantifier() const;

  /// Relation name (Rel) or bound variable (Exists, Forall).
  const std::string& name() const;
  /// Arguments of Rel, or the two sides of Eq.
  const std::vector<Term>& terms() const;
  /// Operand of Not, body of a quantifier.
  const Formula& child() const;
  const Formula& left() const;
  const Formula& right() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  FormulaKind kind;
  std::string name;
  std::vector<Term> terms;
  std::vector<Formula> children;
};

Formula eq(Term a, Term b);
Formula rel(std::string name, std::vector<Term> args);
Formula negate(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula exists(std::string v, Formula body);
Formula forall(std::string v, Formula body);
Formula binary(FormulaKind kind, Formula a, Formula b);
Formula quantifier(FormulaKind kind, std::string v, Formula body);

/// Grammar: `forall x. φ`, `exists x. φ`, `~`, `&`, `|`, `->`, `<->`,
/// `t = t`, `R(t,...)`, parentheses. Quantifiers and `~` bind tighter than
/// any binary connective, so `exists x. A | B` is `(exists x. A) | B`.
/// Undeclared identifiers in term position are variables.
Formula parse_formula(const Signature& sig, std::string_view src);
Term parse_term(const Signature& sig, std::string_view src);

/// Binary nodes fully parenthesized; parse_formula(sig, to_string(f)) == f.
std::string to_string(const Formula& f);

/// Throws UnknownSymbol / ArityMismatch if f does not conform to sig.
void check_conforms(const Signature& sig, const Formula& f);
/// The non-logical symbols occurring in f, with the arities used.
Signature symbols_of(const Formula& f);

std::set<std::string> free_vars(const Formula& f);
/// Free and bound variable names, including quantified ones.
std::set<std::string> all_vars(const Formula& f);
bool is_sentence(const Formula& f);
bool is_quantifier_free(const Formula& f);
bool has_equality(const Formula& f);
std::size_t quantifier_depth(const Formula& f);

/// `base` followed by the fewest primes that avoids `taken`.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

Term substitute(const Term& t, const std::string& v, const Term& by);
/// Capture-avoiding: a binder whose variable occurs in `by` is renamed with
/// fresh_name before descending.
Formula substitute(const Formula& f, const std::string& v, const Term& by);

/// Bound variables renamed to #0, #1, ... in binder pre-order.
Formula canonical_rename(const Formula& f);
bool alpha_equivalent(const Formula& a, const Formula& b);

/// Rewrites And, Implies, Iff and Forall into Not/Or/Exists.
Formula expand_abbreviations(const Formula& f);

// ---------------------------------------------------------------------------
// Finite structures

using Element = std::size_t;
using Tuple = std::vector<Element>;
using Assignment = std::map<std::string, Element>;

/// Universe {0..size-1}. Function tables are row-major: the entry for
/// (a1..ak) sits at a1*size^(k-1) + ... + ak.
struct FiniteStructure {
  std::size_t size = 1;
  Signature signature;
  std::map<std::string, std::set<Tuple>> relations;
  std::map<std::string, std::vector<Element>> functions;
  std::map<std::string, Element> constants;

  bool holds(const std::string& r, const Tuple& args) const;
  Element apply(const std::string& f, const Tuple& args) const;

  friend bool operator==(const FiniteStructure&, const FiniteStructure&) = default;
};

std::size_t table_index(std::size_t size, const Tuple& args);
std::uint64_t table_size(std::size_t size, std::size_t arity);

/// Every symbol interpreted, values in range, tables total.
void validate(const FiniteStructure& m);

Element evaluate(const FiniteStructure& m, const Term& t, const Assignment& a);
/// Throws UncoveredVariable if a free variable of f is missing from a.
bool satisfies(const FiniteStructure& m, const Formula& f, const Assignment& a = {});

struct TheoryCheck {
  bool holds = true;
  std::optional<std::size_t> failing;  // first failing axiom
};
TheoryCheck models_theory(const FiniteStructure& m, const std::vector<Formula>& axioms);

FiniteStructure reduct(const FiniteStructure& m, const Signature& sub);

inline constexpr std::size_t kMaxIsomorphismSize = 8;

/// j with j[a] the image of a; the first bijection in lexicographic order.
std::optional<std::vector<Element>> find_isomorphism(const FiniteStructure& a,
                                                     const FiniteStructure& b);
bool is_isomorphism(const FiniteStructure& a, const FiniteStructure& b,
                    const std::vector<Element>& j);
/// The image structure of m under the permutation perm.
FiniteStructure permute(const FiniteStructure& m, const std::vector<Element>& perm);

/// Calls visit for each structure of the given size; stops early when visit
/// returns false. Returns the number of structures visited.
std::uint64_t for_each_structure(const Signature& sig, std::size_t size,
                                 const std::function<bool(const FiniteStructure&)>& visit);

/// Lazy model search: interpretations are fixed only where evaluation of
/// the sentence needs them. Throws FuelExhausted after `fuel` branch points.
std::optional<FiniteStructure> find_model(const Signature& sig, std::size_t size,
                                          const Formula& sentence,
                                          std::uint64_t fuel = 10'000'000);

/// Text format: `size n`, `rel R arity k` + tuple lines, `fun f arity k` +
/// `a b -> v` lines, `const c = v`. `#` starts a comment.
FiniteStructure read_structure(std::istream& in);
FiniteStructure parse_structure(const std::string& text);
std::string format_structure(const FiniteStructure& m);

}  // namespace logiclab::fol
