#include "logiclab/prop.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <optional>

#include "logiclab/error.hpp"

namespace logiclab::prop {

// ---------------------------------------------------------------------------
// Sentence

bool Sentence::is_atom() const {
  return std::holds_alternative<AtomNode>(node_->value);
}
bool Sentence::is_negation() const {
  return std::holds_alternative<NegationNode>(node_->value);
}
bool Sentence::is_binary() const {
  return std::holds_alternative<BinaryNode>(node_->value);
}
const std::string& Sentence::name() const {
  return std::get<AtomNode>(node_->value).name;
}
const Sentence& Sentence::operand() const {
  return std::get<NegationNode>(node_->value).operand;
}
Connective Sentence::connective() const {
  return std::get<BinaryNode>(node_->value).op;
}
const Sentence& Sentence::left() const {
  return std::get<BinaryNode>(node_->value).left;
}
const Sentence& Sentence::right() const {
  return std::get<BinaryNode>(node_->value).right;
}

bool operator==(const Sentence& a, const Sentence& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->value.index() != b.node_->value.index()) return false;
  if (a.is_atom()) return a.name() == b.name();
  if (a.is_negation()) return a.operand() == b.operand();
  return a.connective() == b.connective() && a.left() == b.left() &&
         a.right() == b.right();
}

Sentence atom(std::string name) {
  return Sentence(std::make_shared<const SentenceNode>(
      SentenceNode{AtomNode{std::move(name)}}));
}
Sentence negate(Sentence s) {
  return Sentence(std::make_shared<const SentenceNode>(
      SentenceNode{NegationNode{std::move(s)}}));
}
Sentence binary(Connective op, Sentence left, Sentence right) {
  return Sentence(std::make_shared<const SentenceNode>(
      SentenceNode{BinaryNode{op, std::move(left), std::move(right)}}));
}
Sentence conj(Sentence l, Sentence r) {
  return binary(Connective::And, std::move(l), std::move(r));
}
Sentence disj(Sentence l, Sentence r) {
  return binary(Connective::Or, std::move(l), std::move(r));
}
Sentence implies(Sentence l, Sentence r) {
  return binary(Connective::Implies, std::move(l), std::move(r));
}
Sentence iff(Sentence l, Sentence r) {
  return binary(Connective::Iff, std::move(l), std::move(r));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, Not, And, Or, Implies, Iff, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Tok::Ident, i, std::string(src.substr(i, j - i))});
      i = j;
      continue;
    }
    switch (c) {
      case '~': out.push_back({Tok::Not, i, "~"}); ++i; continue;
      case '&': out.push_back({Tok::And, i, "&"}); ++i; continue;
      case '|': out.push_back({Tok::Or, i, "|"}); ++i; continue;
      case '(': out.push_back({Tok::LParen, i, "("}); ++i; continue;
      case ')': out.push_back({Tok::RParen, i, ")"}); ++i; continue;
      default: break;
    }
    if (src.substr(i, 2) == "->") {
      out.push_back({Tok::Implies, i, "->"});
      i += 2;
      continue;
    }
    if (src.substr(i, 3) == "<->") {
      out.push_back({Tok::Iff, i, "<->"});
      i += 3;
      continue;
    }
    throw SyntaxError(ErrorKind::UnknownOperator, i,
                      "unknown operator '" + std::string(1, c) + "'");
  }
  out.push_back({Tok::End, src.size(), ""});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Sentence parse_all() {
    if (peek().kind == Tok::End) {
      throw SyntaxError(ErrorKind::Syntax, peek().offset, "empty sentence");
    }
    Sentence s = parse_iff();
    if (peek().kind != Tok::End) {
      throw SyntaxError(ErrorKind::Syntax, peek().offset,
                        "unexpected '" + peek().text + "'");
    }
    return s;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  Sentence parse_iff() {
    Sentence left = parse_implies();
    if (peek().kind == Tok::Iff) {
      next();
      return iff(std::move(left), parse_iff());
    }
    return left;
  }

  Sentence parse_implies() {
    Sentence left = parse_or();
    if (peek().kind == Tok::Implies) {
      next();
      return implies(std::move(left), parse_implies());
    }
    return left;
  }

  Sentence parse_or() {
    Sentence left = parse_and();
    while (peek().kind == Tok::Or) {
      next();
      left = disj(std::move(left), parse_and());
    }
    return left;
  }

  Sentence parse_and() {
    Sentence left = parse_unary();
    while (peek().kind == Tok::And) {
      next();
      left = conj(std::move(left), parse_unary());
    }
    return left;
  }

  Sentence parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        next();
        return negate(parse_unary());
      case Tok::Ident:
        next();
        return atom(t.text);
      case Tok::LParen: {
        next();
        Sentence inner = parse_iff();
        if (peek().kind != Tok::RParen) {
          throw SyntaxError(ErrorKind::Syntax, peek().offset, "expected ')'");
        }
        next();
        return inner;
      }
      case Tok::End:
        throw SyntaxError(ErrorKind::Syntax, t.offset,
                          "unexpected end of input");
      default:
        throw SyntaxError(ErrorKind::Syntax, t.offset,
                          "expected atom, '~' or '(' but found '" + t.text +
                              "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Sentence parse(std::string_view src) { return Parser(tokenize(src)).parse_all(); }

bool is_valid_atom_name(std::string_view name) {
  if (name.empty() || !ident_start(name.front())) return false;
  return std::all_of(name.begin(), name.end(), ident_char);
}

std::string_view symbol(Connective op) {
  switch (op) {
    case Connective::And: return "&";
    case Connective::Or: return "|";
    case Connective::Implies: return "->";
    case Connective::Iff: return "<->";
  }
  return "?";
}

namespace {
void print(const Sentence& s, std::string& out) {
  if (s.is_atom()) {
    out += s.name();
  } else if (s.is_negation()) {
    out += '~';
    print(s.operand(), out);
  } else {
    out += '(';
    print(s.left(), out);
    out += ' ';
    out += symbol(s.connective());
    out += ' ';
    print(s.right(), out);
    out += ')';
  }
}

void collect_atoms(const Sentence& s, std::set<std::string>& out) {
  if (s.is_atom()) {
    out.insert(s.name());
  } else if (s.is_negation()) {
    collect_atoms(s.operand(), out);
  } else {
    collect_atoms(s.left(), out);
    collect_atoms(s.right(), out);
  }
}

bool apply(Connective op, bool a, bool b) {
  switch (op) {
    case Connective::And: return a && b;
    case Connective::Or: return a || b;
    case Connective::Implies: return !a || b;
    case Connective::Iff: return a == b;
  }
  return false;
}

// Sentence flattened over atom indices for fast repeated evaluation.
class Compiled {
 public:
  Compiled(const Sentence& s, const std::vector<std::string>& atom_order) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < atom_order.size(); ++i) index[atom_order[i]] = i;
    root_ = build(s, index);
  }

  // Bit i of `bits` (counted from the most significant of `width`) is the
  // value of atom i.
  bool eval(std::uint64_t bits, std::size_t width) const {
    return eval_node(root_, bits, width);
  }

 private:
  struct Op {
    int kind;  // 0 atom, 1 not, 2 binary
    Connective op;
    std::size_t atom;
    std::size_t left, right;
  };

  std::size_t build(const Sentence& s,
                    const std::map<std::string, std::size_t>& index) {
    if (s.is_atom()) {
      ops_.push_back({0, Connective::And, index.at(s.name()), 0, 0});
    } else if (s.is_negation()) {
      std::size_t c = build(s.operand(), index);
      ops_.push_back({1, Connective::And, 0, c, 0});
    } else {
      std::size_t l = build(s.left(), index);
      std::size_t r = build(s.right(), index);
      ops_.push_back({2, s.connective(), 0, l, r});
    }
    return ops_.size() - 1;
  }

  bool eval_node(std::size_t i, std::uint64_t bits, std::size_t width) const {
    const Op& o = ops_[i];
    switch (o.kind) {
      case 0: return (bits >> (width - 1 - o.atom)) & 1U;
      case 1: return !eval_node(o.left, bits, width);
      default:
        return apply(o.op, eval_node(o.left, bits, width),
                     eval_node(o.right, bits, width));
    }
  }

  std::vector<Op> ops_;
  std::size_t root_ = 0;
};

std::vector<std::string> guarded_atoms(const std::set<std::string>& set) {
  if (set.size() > kMaxTableAtoms) {
    throw Error(ErrorKind::TooManyAtoms,
                "sentence has " + std::to_string(set.size()) +
                    " atoms; the truth-table limit is " +
                    std::to_string(kMaxTableAtoms));
  }
  return {set.begin(), set.end()};
}

}  // namespace

std::string to_string(const Sentence& s) {
  std::string out;
  print(s, out);
  return out;
}

std::set<std::string> atoms(const Sentence& s) {
  std::set<std::string> out;
  collect_atoms(s, out);
  return out;
}

std::size_t depth(const Sentence& s) {
  if (s.is_atom()) return 0;
  if (s.is_negation()) return 1 + depth(s.operand());
  return 1 + std::max(depth(s.left()), depth(s.right()));
}

// ---------------------------------------------------------------------------
// Semantics

bool evaluate(const Sentence& s, const Evaluation& e) {
  if (s.is_atom()) {
    auto it = e.find(s.name());
    if (it == e.end()) {
      throw Error(ErrorKind::MissingAtom,
                  "evaluation has no value for atom '" + s.name() + "'");
    }
    return it->second;
  }
  if (s.is_negation()) return !evaluate(s.operand(), e);
  return apply(s.connective(), evaluate(s.left(), e), evaluate(s.right(), e));
}

std::vector<TableRow> truth_table(const Sentence& s) {
  const auto names = guarded_atoms(atoms(s));
  const Compiled compiled(s, names);
  const std::size_t k = names.size();
  std::vector<TableRow> rows;
  rows.reserve(std::size_t{1} << k);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
    TableRow row;
    for (std::size_t i = 0; i < k; ++i) {
      row.assignment.emplace(names[i], (bits >> (k - 1 - i)) & 1U);
    }
    row.value = compiled.eval(bits, k);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Validity: return "VALIDITY";
    case Classification::Contradiction: return "CONTRADICTION";
    case Classification::Contingent: return "CONTINGENT";
  }
  return "?";
}

Classification classify(const Sentence& s) {
  const auto names = guarded_atoms(atoms(s));
  const Compiled compiled(s, names);
  const std::size_t k = names.size();
  bool seen_true = false;
  bool seen_false = false;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
    (compiled.eval(bits, k) ? seen_true : seen_false) = true;
    if (seen_true && seen_false) return Classification::Contingent;
  }
  return seen_true ? Classification::Validity : Classification::Contradiction;
}

bool equivalent(const Sentence& a, const Sentence& b) {
  auto all = atoms(a);
  all.merge(atoms(b));
  const auto names = guarded_atoms(all);
  const Compiled ca(a, names);
  const Compiled cb(b, names);
  const std::size_t k = names.size();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
    if (ca.eval(bits, k) != cb.eval(bits, k)) return false;
  }
  return true;
}

Sentence to_dnf(const Sentence& s) {
  const auto names = guarded_atoms(atoms(s));
  const Compiled compiled(s, names);
  const std::size_t k = names.size();
  std::optional<Sentence> result;
  // All-true row first, matching the conventional T-before-F table layout.
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << k); ++i) {
    const std::uint64_t bits = ((std::uint64_t{1} << k) - 1) - i;
    if (!compiled.eval(bits, k)) continue;
    std::optional<Sentence> term;
    for (std::size_t j = 0; j < k; ++j) {
      Sentence lit = atom(names[j]);
      if (((bits >> (k - 1 - j)) & 1U) == 0) lit = negate(std::move(lit));
      term = term ? conj(std::move(*term), std::move(lit)) : std::move(lit);
    }
    result = result ? disj(std::move(*result), std::move(*term))
                    : std::move(*term);
  }
  if (!result) {
    const std::string first = names.empty() ? "P" : names.front();
    return conj(atom(first), negate(atom(first)));
  }
  return *result;
}

namespace {
bool is_literal(const Sentence& s) {
  return s.is_atom() || (s.is_negation() && s.operand().is_atom());
}
bool is_conjunction_of_literals(const Sentence& s) {
  if (is_literal(s)) return true;
  return s.is_binary() && s.connective() == Connective::And &&
         is_conjunction_of_literals(s.left()) &&
         is_conjunction_of_literals(s.right());
}
}  // namespace

bool is_dnf(const Sentence& s) {
  if (is_conjunction_of_literals(s)) return true;
  return s.is_binary() && s.connective() == Connective::Or && is_dnf(s.left()) &&
         is_dnf(s.right());
}

// ---------------------------------------------------------------------------
// Truth functions and adequacy

bool TruthFunction::operator()(const std::vector<bool>& args) const {
  if (args.size() != arity) {
    throw Error(ErrorKind::ArityMismatch, "truth function expects " +
                                              std::to_string(arity) +
                                              " arguments");
  }
  std::size_t index = 0;
  for (bool a : args) index = (index << 1) | (a ? 1U : 0U);
  return table[index];
}

std::vector<TruthFunction> enumerate_truth_functions(unsigned arity) {
  if (arity > kMaxEnumerateArity) {
    throw Error(ErrorKind::ArityGuard,
                "arity " + std::to_string(arity) + " exceeds the limit of " +
                    std::to_string(kMaxEnumerateArity));
  }
  const std::size_t rows = std::size_t{1} << arity;
  const std::uint64_t count = std::uint64_t{1} << rows;
  std::vector<TruthFunction> out;
  out.reserve(count);
  for (std::uint64_t v = 0; v < count; ++v) {
    TruthFunction f{arity, std::vector<bool>(rows)};
    for (std::size_t r = 0; r < rows; ++r) f.table[r] = (v >> (rows - 1 - r)) & 1U;
    out.push_back(std::move(f));
  }
  return out;
}

TruthFunction truth_function_of(const Sentence& s,
                                const std::vector<std::string>& args) {
  for (const auto& a : atoms(s)) {
    if (std::find(args.begin(), args.end(), a) == args.end()) {
      throw Error(ErrorKind::MissingAtom,
                  "argument list does not cover atom '" + a + "'");
    }
  }
  if (args.size() > kMaxTableAtoms) {
    throw Error(ErrorKind::TooManyAtoms, "too many arguments");
  }
  const Compiled compiled(s, args);
  const std::size_t k = args.size();
  TruthFunction f{static_cast<unsigned>(k),
                  std::vector<bool>(std::size_t{1} << k)};
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
    f.table[bits] = compiled.eval(bits, k);
  }
  return f;
}

bool is_adequate(const std::vector<TruthFunction>& basis, unsigned max_arity) {
  if (max_arity > kMaxAdequacyArity) {
    throw Error(ErrorKind::ArityGuard,
                "max_arity " + std::to_string(max_arity) +
                    " exceeds the limit of " +
                    std::to_string(kMaxAdequacyArity));
  }
  for (const auto& f : basis) {
    if (f.arity > kMaxAdequacyArity ||
        f.table.size() != (std::size_t{1} << f.arity)) {
      throw Error(ErrorKind::ArityGuard,
                  "basis functions must have arity <= " +
                      std::to_string(kMaxAdequacyArity) +
                      " and a table of 2^arity rows");
    }
  }

  for (unsigned k = 1; k <= max_arity; ++k) {
    // A k-ary function is a bitmask over its 2^k rows; bit r is row r.
    const unsigned rows = 1U << k;
    const unsigned total = 1U << rows;
    std::vector<bool> present(total, false);
    std::vector<unsigned> members;
    auto add = [&](unsigned t) {
      if (!present[t]) {
        present[t] = true;
        members.push_back(t);
      }
    };
    for (unsigned j = 0; j < k; ++j) {
      unsigned t = 0;
      for (unsigned r = 0; r < rows; ++r) {
        if ((r >> (k - 1 - j)) & 1U) t |= 1U << r;
      }
      add(t);
    }

    bool changed = true;
    while (changed && members.size() < total) {
      changed = false;
      const std::vector<unsigned> snapshot = members;
      for (const auto& f : basis) {
        const unsigned a = f.arity;
        std::vector<std::size_t> pick(a, 0);
        for (;;) {
          unsigned t = 0;
          for (unsigned r = 0; r < rows; ++r) {
            std::size_t index = 0;
            for (unsigned j = 0; j < a; ++j) {
              index = (index << 1) | ((snapshot[pick[j]] >> r) & 1U);
            }
            if (f.table[index]) t |= 1U << r;
          }
          if (!present[t]) {
            add(t);
            changed = true;
          }
          // Odometer over a-tuples of the snapshot.
          std::size_t j = 0;
          while (j < a && ++pick[j] == snapshot.size()) pick[j++] = 0;
          if (j == a) break;
        }
      }
    }
    if (members.size() < total) return false;
  }
  return true;
}

namespace functions {
namespace {
TruthFunction make(unsigned arity, std::vector<bool> table) {
  return TruthFunction{arity, std::move(table)};
}
}  // namespace
TruthFunction negation() { return make(1, {true, false}); }
TruthFunction conjunction() { return make(2, {false, false, false, true}); }
TruthFunction disjunction() { return make(2, {false, true, true, true}); }
TruthFunction implication() { return make(2, {true, true, false, true}); }
TruthFunction biconditional() { return make(2, {true, false, false, true}); }
TruthFunction nor() { return make(2, {true, false, false, false}); }
TruthFunction nand() { return make(2, {true, true, true, false}); }
}  // namespace functions

}  // namespace logiclab::prop
