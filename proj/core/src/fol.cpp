#include "logiclab/fol.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "logiclab/error.hpp"

namespace logiclab::fol {

// ---------------------------------------------------------------------------
// Signature

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  const unsigned char c0 = static_cast<unsigned char>(name[0]);
  if (!std::isalpha(c0) && c0 != '_') return false;
  std::size_t i = 1;
  while (i < name.size() &&
         (std::isalnum(static_cast<unsigned char>(name[i])) || name[i] == '_')) {
    ++i;
  }
  while (i < name.size() && name[i] == '\'') ++i;
  return i == name.size() && name != "forall" && name != "exists";
}

void Signature::add(const std::string& name, SymbolInfo info) {
  if (!is_identifier(name)) {
    throw Error(ErrorKind::InvalidInput, "invalid symbol name '" + name + "'");
  }
  auto [it, inserted] = symbols_.emplace(name, info);
  if (!inserted && !(it->second == info)) {
    throw Error(ErrorKind::InvalidInput,
                "symbol '" + name + "' declared twice with different kinds");
  }
}

Signature& Signature::add_relation(const std::string& name, std::size_t arity) {
  add(name, {SymbolKind::Relation, arity});
  return *this;
}
Signature& Signature::add_function(const std::string& name, std::size_t arity) {
  if (arity == 0) {
    throw Error(ErrorKind::InvalidInput,
                "function '" + name + "' has arity 0; declare it as a constant");
  }
  add(name, {SymbolKind::Function, arity});
  return *this;
}
Signature& Signature::add_constant(const std::string& name) {
  add(name, {SymbolKind::Constant, 0});
  return *this;
}

const SymbolInfo* Signature::find(const std::string& name) const {
  auto it = symbols_.find(name);
  return it == symbols_.end() ? nullptr : &it->second;
}

bool Signature::includes(const Signature& sub) const {
  return std::all_of(sub.symbols_.begin(), sub.symbols_.end(), [&](const auto& kv) {
    const SymbolInfo* mine = find(kv.first);
    return mine && *mine == kv.second;
  });
}

Signature parse_signature(std::string_view text) {
  Signature sig;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorKind::InvalidInput,
                  "signature entry '" + item + "' lacks a kind prefix");
    }
    const std::string kind = item.substr(0, colon);
    std::string rest = item.substr(colon + 1);
    std::size_t arity = 0;
    if (auto slash = rest.find('/'); slash != std::string::npos) {
      const std::string digits = rest.substr(slash + 1);
      if (digits.empty() || digits.size() > 6 ||
          digits.find_first_not_of("0123456789") != std::string::npos) {
        throw Error(ErrorKind::InvalidInput, "bad arity in '" + item + "'");
      }
      arity = std::stoul(digits);
      rest.resize(slash);
    }
    if (kind == "rel") {
      sig.add_relation(rest, arity);
    } else if (kind == "fun") {
      sig.add_function(rest, arity);
    } else if (kind == "const") {
      sig.add_constant(rest);
    } else {
      throw Error(ErrorKind::InvalidInput, "unknown symbol kind '" + kind + "'");
    }
  }
  return sig;
}

std::string to_string(const Signature& sig) {
  std::string out;
  for (const auto& [name, info] : sig.symbols()) {
    if (!out.empty()) out += ",";
    switch (info.kind) {
      case SymbolKind::Relation: out += "rel:" + name + "/" + std::to_string(info.arity); break;
      case SymbolKind::Function: out += "fun:" + name + "/" + std::to_string(info.arity); break;
      case SymbolKind::Constant: out += "const:" + name; break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Terms

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const std::vector<Term>& Term::args() const { return node_->args; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.name() == b.name() && a.args() == b.args();
}
bool operator<(const Term& a, const Term& b) { return to_string(a) < to_string(b); }

Term var(std::string name) {
  return Term(std::make_shared<const TermNode>(TermNode{TermKind::Var, std::move(name), {}}));
}
Term constant(std::string name) {
  return Term(std::make_shared<const TermNode>(TermNode{TermKind::Const, std::move(name), {}}));
}
Term apply(std::string fname, std::vector<Term> args) {
  return Term(std::make_shared<const TermNode>(
      TermNode{TermKind::Apply, std::move(fname), std::move(args)}));
}

std::string to_string(const Term& t) {
  if (t.kind() != TermKind::Apply) return t.name();
  std::string out = t.name() + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ",";
    out += to_string(t.args()[i]);
  }
  return out + ")";
}

namespace {
void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind() == TermKind::Var) out.insert(t.name());
  for (const auto& a : t.args()) collect_vars(a, out);
}
}  // namespace

std::set<std::string> variables(const Term& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

std::size_t depth(const Term& t) {
  std::size_t d = 0;
  for (const auto& a : t.args()) d = std::max(d, depth(a) + 1);
  return d;
}

bool is_ground(const Term& t) {
  if (t.kind() == TermKind::Var) return false;
  return std::all_of(t.args().begin(), t.args().end(), is_ground);
}

// ---------------------------------------------------------------------------
// Formulas

FormulaKind Formula::kind() const { return node_->kind; }
bool Formula::is_atomic() const {
  return kind() == FormulaKind::Eq || kind() == FormulaKind::Rel;
}
bool Formula::is_binary() const {
  switch (kind()) {
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff: return true;
    default: return false;
  }
}
bool Formula::is_quantifier() const {
  return kind() == FormulaKind::Exists || kind() == FormulaKind::Forall;
}
const std::string& Formula::name() const { return node_->name; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
const Formula& Formula::child() const { return node_->children.at(0); }
const Formula& Formula::left() const { return node_->children.at(0); }
const Formula& Formula::right() const { return node_->children.at(1); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.name() == b.name() && a.terms() == b.terms() &&
         a.node_->children == b.node_->children;
}

namespace {
Formula make(FormulaKind kind, std::string name, std::vector<Term> terms,
             std::vector<Formula> children) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{kind, std::move(name), std::move(terms), std::move(children)}));
}
}  // namespace

Formula eq(Term a, Term b) { return make(FormulaKind::Eq, "", {std::move(a), std::move(b)}, {}); }
Formula rel(std::string name, std::vector<Term> args) {
  return make(FormulaKind::Rel, std::move(name), std::move(args), {});
}
Formula negate(Formula f) { return make(FormulaKind::Not, "", {}, {std::move(f)}); }
Formula binary(FormulaKind kind, Formula a, Formula b) {
  return make(kind, "", {}, {std::move(a), std::move(b)});
}
Formula conj(Formula a, Formula b) { return binary(FormulaKind::And, std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return binary(FormulaKind::Or, std::move(a), std::move(b)); }
Formula implies(Formula a, Formula b) {
  return binary(FormulaKind::Implies, std::move(a), std::move(b));
}
Formula iff(Formula a, Formula b) { return binary(FormulaKind::Iff, std::move(a), std::move(b)); }
Formula quantifier(FormulaKind kind, std::string v, Formula body) {
  if (!is_identifier(v)) {
    throw Error(ErrorKind::InvalidInput, "invalid variable name '" + v + "'");
  }
  return make(kind, std::move(v), {}, {std::move(body)});
}
Formula exists(std::string v, Formula body) {
  return quantifier(FormulaKind::Exists, std::move(v), std::move(body));
}
Formula forall(std::string v, Formula body) {
  return quantifier(FormulaKind::Forall, std::move(v), std::move(body));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Not, And, Or, Implies, Iff, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        ++i;
      }
      while (i < src.size() && src[i] == '\'') ++i;
      out.push_back({Tok::Ident, std::string(src.substr(start, i - start)), start});
      continue;
    }
    auto single = [&](Tok t) {
      out.push_back({t, std::string(1, c), start});
      ++i;
    };
    switch (c) {
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case ',': single(Tok::Comma); continue;
      case '.': single(Tok::Dot); continue;
      case '~': single(Tok::Not); continue;
      case '&': single(Tok::And); continue;
      case '|': single(Tok::Or); continue;
      case '=': single(Tok::Eq); continue;
      default: break;
    }
    if (src.substr(i, 2) == "->") {
      out.push_back({Tok::Implies, "->", start});
      i += 2;
      continue;
    }
    if (src.substr(i, 3) == "<->") {
      out.push_back({Tok::Iff, "<->", start});
      i += 3;
      continue;
    }
    throw SyntaxError(ErrorKind::UnknownOperator, start,
                      std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

class Parser {
 public:
  Parser(const Signature& sig, std::string_view src) : sig_(sig), toks_(tokenize(src)) {}

  Formula formula() {
    if (peek().kind == Tok::End) {
      throw SyntaxError(ErrorKind::Syntax, 0, "empty formula");
    }
    Formula f = parse_iff();
    expect_end();
    return f;
  }

  Term term() {
    if (peek().kind == Tok::End) {
      throw SyntaxError(ErrorKind::Syntax, 0, "empty term");
    }
    Term t = parse_term();
    expect_end();
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) {
      throw SyntaxError(ErrorKind::Syntax, peek().offset,
                        std::string("expected ") + what + describe(peek()));
    }
    return advance();
  }
  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? " but input ended" : " but found '" + t.text + "'";
  }
  void expect_end() {
    if (peek().kind != Tok::End) {
      throw SyntaxError(ErrorKind::Syntax, peek().offset,
                        "unexpected '" + peek().text + "' after complete expression");
    }
  }

  Formula parse_iff() {
    Formula l = parse_implies();
    if (accept(Tok::Iff)) return iff(l, parse_iff());
    return l;
  }
  Formula parse_implies() {
    Formula l = parse_or();
    if (accept(Tok::Implies)) return implies(l, parse_implies());
    return l;
  }
  Formula parse_or() {
    Formula l = parse_and();
    while (accept(Tok::Or)) l = disj(l, parse_and());
    return l;
  }
  Formula parse_and() {
    Formula l = parse_unary();
    while (accept(Tok::And)) l = conj(l, parse_unary());
    return l;
  }
  Formula parse_unary() {
    if (accept(Tok::Not)) return negate(parse_unary());
    const Token& t = peek();
    if (t.kind == Tok::Ident && (t.text == "forall" || t.text == "exists")) {
      advance();
      const FormulaKind kind = t.text == "forall" ? FormulaKind::Forall : FormulaKind::Exists;
      const Token& v = expect(Tok::Ident, "a variable");
      if (v.text == "forall" || v.text == "exists" || sig_.contains(v.text)) {
        throw SyntaxError(ErrorKind::Syntax, v.offset,
                          "'" + v.text + "' cannot be used as a bound variable");
      }
      expect(Tok::Dot, "'.'");
      return quantifier(kind, v.text, parse_unary());
    }
    return parse_atom();
  }
  Formula parse_atom() {
    const Token& t = peek();
    if (accept(Tok::LParen)) {
      Formula f = parse_iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind == Tok::Ident) {
      const SymbolInfo* info = sig_.find(t.text);
      if (info && info->kind == SymbolKind::Relation) {
        advance();
        std::vector<Term> args;
        if (info->arity > 0 || peek().kind == Tok::LParen) args = parse_args(t);
        check_arity(t, *info, args.size());
        return rel(t.text, std::move(args));
      }
    }
    if (t.kind != Tok::Ident) {
      throw SyntaxError(ErrorKind::Syntax, t.offset, "expected a formula" + describe(t));
    }
    Term lhs = parse_term();
    expect(Tok::Eq, "'=' after term");
    Term rhs = parse_term();
    return eq(std::move(lhs), std::move(rhs));
  }

  std::vector<Term> parse_args(const Token& head) {
    std::vector<Term> args;
    if (peek().kind != Tok::LParen) {
      throw SyntaxError(ErrorKind::ArityMismatch, peek().offset,
                        "'" + head.text + "' expects arguments");
    }
    advance();
    if (accept(Tok::RParen)) return args;
    do {
      args.push_back(parse_term());
    } while (accept(Tok::Comma));
    expect(Tok::RParen, "')' or ','");
    return args;
  }

  void check_arity(const Token& head, const SymbolInfo& info, std::size_t got) {
    if (got != info.arity) {
      throw SyntaxError(ErrorKind::ArityMismatch, head.offset,
                        "'" + head.text + "' takes " + std::to_string(info.arity) +
                            " argument(s), got " + std::to_string(got));
    }
  }

  Term parse_term() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || t.text == "forall" || t.text == "exists") {
      throw SyntaxError(ErrorKind::Syntax, t.offset, "expected a term" + describe(t));
    }
    advance();
    const SymbolInfo* info = sig_.find(t.text);
    if (!info) {
      if (peek().kind == Tok::LParen) {
        throw SyntaxError(ErrorKind::UnknownSymbol, t.offset,
                          "unknown function symbol '" + t.text + "'");
      }
      return var(t.text);
    }
    switch (info->kind) {
      case SymbolKind::Constant:
        if (peek().kind == Tok::LParen) {
          throw SyntaxError(ErrorKind::ArityMismatch, t.offset,
                            "constant '" + t.text + "' takes no arguments");
        }
        return constant(t.text);
      case SymbolKind::Function: {
        auto args = parse_args(t);
        check_arity(t, *info, args.size());
        return apply(t.text, std::move(args));
      }
      case SymbolKind::Relation: break;
    }
    throw SyntaxError(ErrorKind::Syntax, t.offset,
                      "relation '" + t.text + "' used as a term");
  }

  const Signature& sig_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(const Signature& sig, std::string_view src) {
  return Parser(sig, src).formula();
}
Term parse_term(const Signature& sig, std::string_view src) {
  return Parser(sig, src).term();
}

std::string to_string(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      return to_string(f.terms()[0]) + " = " + to_string(f.terms()[1]);
    case FormulaKind::Rel: {
      if (f.terms().empty()) return f.name();
      std::string out = f.name() + "(";
      for (std::size_t i = 0; i < f.terms().size(); ++i) {
        if (i) out += ",";
        out += to_string(f.terms()[i]);
      }
      return out + ")";
    }
    case FormulaKind::Not: return "~" + to_string(f.child());
    case FormulaKind::And: return "(" + to_string(f.left()) + " & " + to_string(f.right()) + ")";
    case FormulaKind::Or: return "(" + to_string(f.left()) + " | " + to_string(f.right()) + ")";
    case FormulaKind::Implies:
      return "(" + to_string(f.left()) + " -> " + to_string(f.right()) + ")";
    case FormulaKind::Iff:
      return "(" + to_string(f.left()) + " <-> " + to_string(f.right()) + ")";
    case FormulaKind::Exists: return "exists " + f.name() + ". " + to_string(f.child());
    case FormulaKind::Forall: return "forall " + f.name() + ". " + to_string(f.child());
  }
  return {};
}

// ---------------------------------------------------------------------------
// Syntactic queries

namespace {

void conform_term(const Signature& sig, const Term& t) {
  if (t.kind() == TermKind::Var) return;
  const SymbolInfo* info = sig.find(t.name());
  const SymbolKind want = t.kind() == TermKind::Const ? SymbolKind::Constant : SymbolKind::Function;
  if (!info || info->kind != want) {
    throw Error(ErrorKind::UnknownSymbol, "symbol '" + t.name() + "' not in signature");
  }
  if (info->arity != t.args().size()) {
    throw Error(ErrorKind::ArityMismatch, "'" + t.name() + "' used with wrong arity");
  }
  for (const auto& a : t.args()) conform_term(sig, a);
}

void note_symbol(Signature& sig, const std::string& name, SymbolKind kind, std::size_t arity) {
  const SymbolInfo* prior = sig.find(name);
  if (prior && !(*prior == SymbolInfo{kind, arity})) {
    throw Error(ErrorKind::ArityMismatch, "symbol '" + name + "' used inconsistently");
  }
  if (prior) return;
  switch (kind) {
    case SymbolKind::Relation: sig.add_relation(name, arity); break;
    case SymbolKind::Function: sig.add_function(name, arity); break;
    case SymbolKind::Constant: sig.add_constant(name); break;
  }
}

void term_symbols(const Term& t, Signature& sig) {
  if (t.kind() == TermKind::Const) note_symbol(sig, t.name(), SymbolKind::Constant, 0);
  if (t.kind() == TermKind::Apply) note_symbol(sig, t.name(), SymbolKind::Function, t.args().size());
  for (const auto& a : t.args()) term_symbols(a, sig);
}

void formula_symbols(const Formula& f, Signature& sig) {
  if (f.kind() == FormulaKind::Rel) note_symbol(sig, f.name(), SymbolKind::Relation, f.terms().size());
  for (const auto& t : f.terms()) term_symbols(t, sig);
  if (f.kind() == FormulaKind::Not || f.is_quantifier()) formula_symbols(f.child(), sig);
  if (f.is_binary()) {
    formula_symbols(f.left(), sig);
    formula_symbols(f.right(), sig);
  }
}

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (f.is_atomic()) {
    for (const auto& t : f.terms()) {
      for (const auto& v : variables(t)) {
        if (!bound.count(v)) out.insert(v);
      }
    }
    return;
  }
  if (f.kind() == FormulaKind::Not) return collect_free(f.child(), bound, out);
  if (f.is_binary()) {
    collect_free(f.left(), bound, out);
    collect_free(f.right(), bound, out);
    return;
  }
  const bool fresh = bound.insert(f.name()).second;
  collect_free(f.child(), bound, out);
  if (fresh) bound.erase(f.name());
}

}  // namespace

void check_conforms(const Signature& sig, const Formula& f) {
  if (f.kind() == FormulaKind::Rel) {
    const SymbolInfo* info = sig.find(f.name());
    if (!info || info->kind != SymbolKind::Relation) {
      throw Error(ErrorKind::UnknownSymbol, "relation '" + f.name() + "' not in signature");
    }
    if (info->arity != f.terms().size()) {
      throw Error(ErrorKind::ArityMismatch, "'" + f.name() + "' used with wrong arity");
    }
  }
  for (const auto& t : f.terms()) conform_term(sig, t);
  if (f.kind() == FormulaKind::Not || f.is_quantifier()) check_conforms(sig, f.child());
  if (f.is_binary()) {
    check_conforms(sig, f.left());
    check_conforms(sig, f.right());
  }
}

Signature symbols_of(const Formula& f) {
  Signature sig;
  formula_symbols(f, sig);
  return sig;
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  for (const auto& t : f.terms()) collect_vars(t, out);
  if (f.is_quantifier()) out.insert(f.name());
  if (f.kind() == FormulaKind::Not || f.is_quantifier()) {
    auto inner = all_vars(f.child());
    out.insert(inner.begin(), inner.end());
  }
  if (f.is_binary()) {
    for (const auto* side : {&f.left(), &f.right()}) {
      auto inner = all_vars(*side);
      out.insert(inner.begin(), inner.end());
    }
  }
  return out;
}

bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

bool is_quantifier_free(const Formula& f) {
  if (f.is_atomic()) return true;
  if (f.is_quantifier()) return false;
  if (f.kind() == FormulaKind::Not) return is_quantifier_free(f.child());
  return is_quantifier_free(f.left()) && is_quantifier_free(f.right());
}

bool has_equality(const Formula& f) {
  if (f.kind() == FormulaKind::Eq) return true;
  if (f.kind() == FormulaKind::Rel) return false;
  if (f.kind() == FormulaKind::Not || f.is_quantifier()) return has_equality(f.child());
  return has_equality(f.left()) || has_equality(f.right());
}

std::size_t quantifier_depth(const Formula& f) {
  if (f.is_atomic()) return 0;
  if (f.is_quantifier()) return 1 + quantifier_depth(f.child());
  if (f.kind() == FormulaKind::Not) return quantifier_depth(f.child());
  return std::max(quantifier_depth(f.left()), quantifier_depth(f.right()));
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  std::string name = base;
  while (taken.count(name)) name += '\'';
  return name;
}

// ---------------------------------------------------------------------------
// Substitution and renaming

Term substitute(const Term& t, const std::string& v, const Term& by) {
  switch (t.kind()) {
    case TermKind::Var: return t.name() == v ? by : t;
    case TermKind::Const: return t;
    case TermKind::Apply: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(substitute(a, v, by));
      return apply(t.name(), std::move(args));
    }
  }
  return t;
}

Formula substitute(const Formula& f, const std::string& v, const Term& by) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      return eq(substitute(f.terms()[0], v, by), substitute(f.terms()[1], v, by));
    case FormulaKind::Rel: {
      std::vector<Term> args;
      for (const auto& t : f.terms()) args.push_back(substitute(t, v, by));
      return rel(f.name(), std::move(args));
    }
    case FormulaKind::Not: return negate(substitute(f.child(), v, by));
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      return binary(f.kind(), substitute(f.left(), v, by), substitute(f.right(), v, by));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      const std::string& y = f.name();
      if (y == v || !free_vars(f.child()).count(v)) return f;
      const auto by_vars = variables(by);
      if (!by_vars.count(y)) return quantifier(f.kind(), y, substitute(f.child(), v, by));
      std::set<std::string> taken = all_vars(f.child());
      taken.insert(by_vars.begin(), by_vars.end());
      taken.insert(v);
      const std::string y2 = fresh_name(y, taken);
      Formula renamed = substitute(f.child(), y, var(y2));
      return quantifier(f.kind(), y2, substitute(renamed, v, by));
    }
  }
  return f;
}

namespace {

Term rename_term(const Term& t, const std::map<std::string, std::string>& env) {
  if (t.kind() == TermKind::Var) {
    auto it = env.find(t.name());
    return it == env.end() ? t : var(it->second);
  }
  if (t.kind() == TermKind::Const) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(rename_term(a, env));
  return apply(t.name(), std::move(args));
}

Formula rename_bound(const Formula& f, const std::map<std::string, std::string>& env,
                     std::size_t& counter) {
  if (f.is_atomic()) {
    std::vector<Term> terms;
    for (const auto& t : f.terms()) terms.push_back(rename_term(t, env));
    if (f.kind() == FormulaKind::Eq) return eq(terms[0], terms[1]);
    return rel(f.name(), std::move(terms));
  }
  if (f.kind() == FormulaKind::Not) return negate(rename_bound(f.child(), env, counter));
  if (f.is_binary()) {
    Formula l = rename_bound(f.left(), env, counter);
    Formula r = rename_bound(f.right(), env, counter);
    return binary(f.kind(), std::move(l), std::move(r));
  }
  auto inner = env;
  const std::string name = "#" + std::to_string(counter++);
  inner[f.name()] = name;
  // Bypasses the identifier check on purpose: these names never reach a parser.
  return make(f.kind(), name, {}, {rename_bound(f.child(), inner, counter)});
}

}  // namespace

Formula canonical_rename(const Formula& f) {
  std::size_t counter = 0;
  return rename_bound(f, {}, counter);
}

bool alpha_equivalent(const Formula& a, const Formula& b) {
  return canonical_rename(a) == canonical_rename(b);
}

Formula expand_abbreviations(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Rel: return f;
    case FormulaKind::Not: return negate(expand_abbreviations(f.child()));
    case FormulaKind::Or:
      return disj(expand_abbreviations(f.left()), expand_abbreviations(f.right()));
    case FormulaKind::And:
      return negate(disj(negate(expand_abbreviations(f.left())),
                         negate(expand_abbreviations(f.right()))));
    case FormulaKind::Implies:
      return disj(negate(expand_abbreviations(f.left())), expand_abbreviations(f.right()));
    case FormulaKind::Iff:
      return expand_abbreviations(
          conj(implies(f.left(), f.right()), implies(f.right(), f.left())));
    case FormulaKind::Exists: return exists(f.name(), expand_abbreviations(f.child()));
    case FormulaKind::Forall:
      return negate(exists(f.name(), negate(expand_abbreviations(f.child()))));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Finite structures

std::size_t table_index(std::size_t size, const Tuple& args) {
  std::size_t index = 0;
  for (Element a : args) index = index * size + a;
  return index;
}

std::uint64_t table_size(std::size_t size, std::size_t arity) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < arity; ++i) n *= size;
  return n;
}

bool FiniteStructure::holds(const std::string& r, const Tuple& args) const {
  auto it = relations.find(r);
  if (it == relations.end()) {
    throw Error(ErrorKind::UnknownSymbol, "relation '" + r + "' not interpreted");
  }
  return it->second.count(args) > 0;
}

Element FiniteStructure::apply(const std::string& f, const Tuple& args) const {
  auto it = functions.find(f);
  if (it == functions.end()) {
    throw Error(ErrorKind::UnknownSymbol, "function '" + f + "' not interpreted");
  }
  return it->second.at(table_index(size, args));
}

void validate(const FiniteStructure& m) {
  if (m.size == 0) throw Error(ErrorKind::InvalidInput, "structure size must be at least 1");
  auto range = [&](Element e, const std::string& where) {
    if (e >= m.size) {
      throw Error(ErrorKind::OutOfRange, "element " + std::to_string(e) + " in " + where +
                                             " outside universe of size " +
                                             std::to_string(m.size));
    }
  };
  for (const auto& [name, info] : m.signature.symbols()) {
    switch (info.kind) {
      case SymbolKind::Relation: {
        auto it = m.relations.find(name);
        if (it == m.relations.end()) {
          throw Error(ErrorKind::InvalidInput, "relation '" + name + "' not interpreted");
        }
        for (const auto& t : it->second) {
          if (t.size() != info.arity) {
            throw Error(ErrorKind::ArityMismatch, "tuple of wrong length in '" + name + "'");
          }
          for (Element e : t) range(e, name);
        }
        break;
      }
      case SymbolKind::Function: {
        auto it = m.functions.find(name);
        if (it == m.functions.end()) {
          throw Error(ErrorKind::InvalidInput, "function '" + name + "' not interpreted");
        }
        if (it->second.size() != table_size(m.size, info.arity)) {
          throw Error(ErrorKind::InvalidInput, "function table for '" + name + "' is not total");
        }
        for (Element e : it->second) range(e, name);
        break;
      }
      case SymbolKind::Constant: {
        auto it = m.constants.find(name);
        if (it == m.constants.end()) {
          throw Error(ErrorKind::InvalidInput, "constant '" + name + "' not interpreted");
        }
        range(it->second, name);
        break;
      }
    }
  }
  auto declared = [&](const std::string& name, SymbolKind kind) {
    const SymbolInfo* info = m.signature.find(name);
    if (!info || info->kind != kind) {
      throw Error(ErrorKind::InvalidInput, "'" + name + "' interpreted but not declared");
    }
  };
  for (const auto& kv : m.relations) declared(kv.first, SymbolKind::Relation);
  for (const auto& kv : m.functions) declared(kv.first, SymbolKind::Function);
  for (const auto& kv : m.constants) declared(kv.first, SymbolKind::Constant);
}

Element evaluate(const FiniteStructure& m, const Term& t, const Assignment& a) {
  switch (t.kind()) {
    case TermKind::Var: {
      auto it = a.find(t.name());
      if (it == a.end()) {
        throw Error(ErrorKind::UncoveredVariable, "variable '" + t.name() + "' is unassigned");
      }
      return it->second;
    }
    case TermKind::Const: {
      auto it = m.constants.find(t.name());
      if (it == m.constants.end()) {
        throw Error(ErrorKind::UnknownSymbol, "constant '" + t.name() + "' not interpreted");
      }
      return it->second;
    }
    case TermKind::Apply: {
      Tuple args;
      args.reserve(t.args().size());
      for (const auto& s : t.args()) args.push_back(evaluate(m, s, a));
      return m.apply(t.name(), args);
    }
  }
  return 0;
}

namespace {

bool sat(const FiniteStructure& m, const Formula& f, Assignment& a) {
  switch (f.kind()) {
    case FormulaKind::Eq: return evaluate(m, f.terms()[0], a) == evaluate(m, f.terms()[1], a);
    case FormulaKind::Rel: {
      Tuple args;
      args.reserve(f.terms().size());
      for (const auto& t : f.terms()) args.push_back(evaluate(m, t, a));
      return m.holds(f.name(), args);
    }
    case FormulaKind::Not: return !sat(m, f.child(), a);
    case FormulaKind::And: return sat(m, f.left(), a) && sat(m, f.right(), a);
    case FormulaKind::Or: return sat(m, f.left(), a) || sat(m, f.right(), a);
    case FormulaKind::Implies: return !sat(m, f.left(), a) || sat(m, f.right(), a);
    case FormulaKind::Iff: return sat(m, f.left(), a) == sat(m, f.right(), a);
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      const bool want = f.kind() == FormulaKind::Exists;
      auto prior = a.find(f.name());
      const std::optional<Element> saved =
          prior == a.end() ? std::nullopt : std::optional<Element>(prior->second);
      bool result = !want;
      for (Element e = 0; e < m.size; ++e) {
        a[f.name()] = e;
        if (sat(m, f.child(), a) == want) {
          result = want;
          break;
        }
      }
      if (saved) {
        a[f.name()] = *saved;
      } else {
        a.erase(f.name());
      }
      return result;
    }
  }
  return false;
}

}  // namespace

bool satisfies(const FiniteStructure& m, const Formula& f, const Assignment& a) {
  for (const auto& v : free_vars(f)) {
    if (!a.count(v)) {
      throw Error(ErrorKind::UncoveredVariable, "free variable '" + v + "' is unassigned");
    }
  }
  for (const auto& [v, e] : a) {
    if (e >= m.size) {
      throw Error(ErrorKind::OutOfRange, "assignment maps '" + v + "' outside the universe");
    }
  }
  Assignment scratch = a;
  return sat(m, f, scratch);
}

TheoryCheck models_theory(const FiniteStructure& m, const std::vector<Formula>& axioms) {
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    if (!is_sentence(axioms[i])) {
      throw Error(ErrorKind::NotASentence,
                  "axiom " + std::to_string(i) + " has free variables");
    }
  }
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    if (!satisfies(m, axioms[i])) return {false, i};
  }
  return {};
}

FiniteStructure reduct(const FiniteStructure& m, const Signature& sub) {
  if (!m.signature.includes(sub)) {
    throw Error(ErrorKind::NotASubsignature,
                "'" + to_string(sub) + "' is not contained in '" + to_string(m.signature) + "'");
  }
  FiniteStructure out;
  out.size = m.size;
  out.signature = sub;
  for (const auto& [name, info] : sub.symbols()) {
    switch (info.kind) {
      case SymbolKind::Relation: out.relations[name] = m.relations.at(name); break;
      case SymbolKind::Function: out.functions[name] = m.functions.at(name); break;
      case SymbolKind::Constant: out.constants[name] = m.constants.at(name); break;
    }
  }
  return out;
}

FiniteStructure permute(const FiniteStructure& m, const std::vector<Element>& perm) {
  if (perm.size() != m.size) {
    throw Error(ErrorKind::LengthMismatch, "permutation length differs from structure size");
  }
  FiniteStructure out;
  out.size = m.size;
  out.signature = m.signature;
  auto image = [&](const Tuple& t) {
    Tuple r;
    for (Element e : t) r.push_back(perm.at(e));
    return r;
  };
  for (const auto& [name, tuples] : m.relations) {
    auto& dst = out.relations[name];
    for (const auto& t : tuples) dst.insert(image(t));
  }
  for (const auto& [name, table] : m.functions) {
    const std::size_t arity = m.signature.find(name)->arity;
    std::vector<Element> dst(table.size());
    Tuple args(arity, 0);
    for (std::size_t i = 0; i < table.size(); ++i) {
      std::size_t rest = i;
      for (std::size_t k = arity; k-- > 0;) {
        args[k] = rest % m.size;
        rest /= m.size;
      }
      dst[table_index(m.size, image(args))] = perm.at(table[i]);
    }
    out.functions[name] = std::move(dst);
  }
  for (const auto& [name, e] : m.constants) out.constants[name] = perm.at(e);
  return out;
}

bool is_isomorphism(const FiniteStructure& a, const FiniteStructure& b,
                    const std::vector<Element>& j) {
  if (a.size != b.size || j.size() != a.size || !(a.signature == b.signature)) return false;
  std::vector<bool> hit(b.size, false);
  for (Element e : j) {
    if (e >= b.size || hit[e]) return false;
    hit[e] = true;
  }
  return permute(a, j) == b;
}

namespace {

struct IsoSearch {
  const FiniteStructure& a;
  const FiniteStructure& b;
  std::vector<Element> j;
  std::vector<bool> used;
  std::vector<std::pair<std::string, std::size_t>> rels, funs;

  // Checks every condition whose elements all lie in the assigned prefix
  // 0..k and involve k.
  bool consistent(std::size_t k) const {
    for (const auto& [name, e] : a.constants) {
      if (e == k && j[k] != b.constants.at(name)) return false;
    }
    for (const auto& [name, arity] : rels) {
      if (!each_tuple(k, arity, [&](const Tuple& t) {
            Tuple img;
            for (Element e : t) img.push_back(j[e]);
            return a.holds(name, t) == b.holds(name, img);
          })) {
        return false;
      }
    }
    for (const auto& [name, arity] : funs) {
      if (!each_tuple(k, arity, [&](const Tuple& t) {
            const Element v = a.apply(name, t);
            if (v > k) return true;
            Tuple img;
            for (Element e : t) img.push_back(j[e]);
            return b.apply(name, img) == j[v];
          })) {
        return false;
      }
    }
    // Function values landing on k from earlier arguments.
    for (const auto& [name, arity] : funs) {
      if (!each_tuple_below(k, arity, [&](const Tuple& t) {
            if (a.apply(name, t) != k) return true;
            Tuple img;
            for (Element e : t) img.push_back(j[e]);
            return b.apply(name, img) == j[k];
          })) {
        return false;
      }
    }
    return true;
  }

  template <typename F>
  static bool each_tuple(std::size_t k, std::size_t arity, F&& check) {
    Tuple t(arity, 0);
    while (true) {
      if (arity == 0 ? k == 0 : std::find(t.begin(), t.end(), k) != t.end()) {
        if (!check(t)) return false;
      }
      std::size_t i = arity;
      while (i > 0 && t[i - 1] == k) t[--i] = 0;
      if (i == 0) return true;
      ++t[i - 1];
    }
  }

  template <typename F>
  static bool each_tuple_below(std::size_t k, std::size_t arity, F&& check) {
    if (k == 0 || arity == 0) return true;
    Tuple t(arity, 0);
    while (true) {
      if (!check(t)) return false;
      std::size_t i = arity;
      while (i > 0 && t[i - 1] == k - 1) t[--i] = 0;
      if (i == 0) return true;
      ++t[i - 1];
    }
  }

  bool dfs(std::size_t k) {
    if (k == a.size) return true;
    for (Element cand = 0; cand < b.size; ++cand) {
      if (used[cand]) continue;
      j[k] = cand;
      used[cand] = true;
      if (consistent(k) && dfs(k + 1)) return true;
      used[cand] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<Element>> find_isomorphism(const FiniteStructure& a,
                                                     const FiniteStructure& b) {
  if (!(a.signature == b.signature)) {
    throw Error(ErrorKind::SignatureMismatch, "structures have different signatures");
  }
  if (a.size > kMaxIsomorphismSize || b.size > kMaxIsomorphismSize) {
    throw Error(ErrorKind::SizeGuard, "isomorphism search supports size at most " +
                                          std::to_string(kMaxIsomorphismSize));
  }
  if (a.size != b.size) return std::nullopt;
  for (const auto& [name, tuples] : a.relations) {
    if (tuples.size() != b.relations.at(name).size()) return std::nullopt;
  }
  IsoSearch s{a, b, std::vector<Element>(a.size), std::vector<bool>(b.size, false), {}, {}};
  for (const auto& [name, info] : a.signature.symbols()) {
    if (info.kind == SymbolKind::Relation) s.rels.emplace_back(name, info.arity);
    if (info.kind == SymbolKind::Function) s.funs.emplace_back(name, info.arity);
  }
  if (s.dfs(0)) return s.j;
  return std::nullopt;
}

std::uint64_t for_each_structure(const Signature& sig, std::size_t size,
                                 const std::function<bool(const FiniteStructure&)>& visit) {
  if (size == 0) throw Error(ErrorKind::InvalidInput, "structure size must be at least 1");
  // One digit per relation tuple (radix 2), table entry or constant (radix size).
  struct Digit {
    const std::string* name;
    SymbolKind kind;
    std::size_t arity;
    std::size_t slot;
  };
  std::vector<Digit> digits;
  for (const auto& [name, info] : sig.symbols()) {
    const std::uint64_t slots = info.kind == SymbolKind::Constant ? 1 : table_size(size, info.arity);
    for (std::uint64_t s = 0; s < slots; ++s) digits.push_back({&name, info.kind, info.arity, s});
  }
  std::vector<std::size_t> value(digits.size(), 0);
  FiniteStructure m;
  m.size = size;
  m.signature = sig;
  std::uint64_t visited = 0;
  while (true) {
    m.relations.clear();
    m.functions.clear();
    m.constants.clear();
    for (const auto& [name, info] : sig.symbols()) {
      if (info.kind == SymbolKind::Relation) m.relations[name];
      if (info.kind == SymbolKind::Function) {
        m.functions[name].assign(table_size(size, info.arity), 0);
      }
    }
    for (std::size_t i = 0; i < digits.size(); ++i) {
      const Digit& d = digits[i];
      switch (d.kind) {
        case SymbolKind::Relation:
          if (value[i]) {
            Tuple t(d.arity);
            std::size_t rest = d.slot;
            for (std::size_t k = d.arity; k-- > 0;) {
              t[k] = rest % size;
              rest /= size;
            }
            m.relations[*d.name].insert(std::move(t));
          }
          break;
        case SymbolKind::Function: m.functions[*d.name][d.slot] = value[i]; break;
        case SymbolKind::Constant: m.constants[*d.name] = value[i]; break;
      }
    }
    ++visited;
    if (!visit(m)) return visited;
    std::size_t i = digits.size();
    while (i > 0) {
      const std::size_t radix = digits[i - 1].kind == SymbolKind::Relation ? 2 : size;
      if (++value[i - 1] < radix) break;
      value[i - 1] = 0;
      --i;
    }
    if (i == 0) return visited;
  }
}

// ---------------------------------------------------------------------------
// Lazy model search

namespace {

constexpr int kUnknownCell = -1;

class ModelSearch {
 public:
  ModelSearch(const Signature& sig, std::size_t size, std::uint64_t fuel)
      : sig_(sig), size_(size), fuel_(fuel) {
    for (const auto& [name, info] : sig.symbols()) {
      const std::uint64_t slots =
          info.kind == SymbolKind::Constant ? 1 : table_size(size, info.arity);
      cells_[name].assign(slots, kUnknownCell);
    }
  }

  std::optional<FiniteStructure> run(const Formula& f) {
    if (!dfs(f)) return std::nullopt;
    FiniteStructure m;
    m.size = size_;
    m.signature = sig_;
    for (const auto& [name, info] : sig_.symbols()) {
      const auto& cells = cells_.at(name);
      switch (info.kind) {
        case SymbolKind::Relation: {
          auto& dst = m.relations[name];
          for (std::size_t s = 0; s < cells.size(); ++s) {
            if (cells[s] == 1) dst.insert(decode(s, info.arity));
          }
          break;
        }
        case SymbolKind::Function: {
          auto& dst = m.functions[name];
          for (int c : cells) dst.push_back(c == kUnknownCell ? 0 : static_cast<Element>(c));
          break;
        }
        case SymbolKind::Constant:
          m.constants[name] = cells[0] == kUnknownCell ? 0 : static_cast<Element>(cells[0]);
          break;
      }
    }
    return m;
  }

 private:
  // 0 false, 1 true, 2 unknown.
  using Tri = int;

  Tuple decode(std::size_t slot, std::size_t arity) const {
    Tuple t(arity);
    for (std::size_t k = arity; k-- > 0;) {
      t[k] = slot % size_;
      slot /= size_;
    }
    return t;
  }

  void note(const std::string& name, std::size_t slot) {
    if (!pending_) pending_ = {&name, slot};
  }

  std::optional<Element> term(const Term& t) {
    switch (t.kind()) {
      case TermKind::Var: return env_.at(t.name());
      case TermKind::Const: {
        const int c = cells_.at(t.name())[0];
        if (c == kUnknownCell) {
          note(t.name(), 0);
          return std::nullopt;
        }
        return static_cast<Element>(c);
      }
      case TermKind::Apply: {
        Tuple args;
        for (const auto& s : t.args()) {
          auto v = term(s);
          if (!v) return std::nullopt;
          args.push_back(*v);
        }
        const std::size_t slot = table_index(size_, args);
        const int c = cells_.at(t.name())[slot];
        if (c == kUnknownCell) {
          note(t.name(), slot);
          return std::nullopt;
        }
        return static_cast<Element>(c);
      }
    }
    return std::nullopt;
  }

  static Tri tri_not(Tri v) { return v == 2 ? 2 : 1 - v; }
  static Tri tri_and(Tri a, Tri b) {
    if (a == 0 || b == 0) return 0;
    return a == 1 && b == 1 ? 1 : 2;
  }
  static Tri tri_or(Tri a, Tri b) { return tri_not(tri_and(tri_not(a), tri_not(b))); }

  Tri eval(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Eq: {
        auto l = term(f.terms()[0]);
        auto r = term(f.terms()[1]);
        if (!l || !r) return 2;
        return *l == *r ? 1 : 0;
      }
      case FormulaKind::Rel: {
        Tuple args;
        for (const auto& t : f.terms()) {
          auto v = term(t);
          if (!v) return 2;
          args.push_back(*v);
        }
        const std::size_t slot = table_index(size_, args);
        const int c = cells_.at(f.name())[slot];
        if (c == kUnknownCell) {
          note(f.name(), slot);
          return 2;
        }
        return c;
      }
      case FormulaKind::Not: return tri_not(eval(f.child()));
      case FormulaKind::And: {
        const Tri l = eval(f.left());
        return l == 0 ? 0 : tri_and(l, eval(f.right()));
      }
      case FormulaKind::Or: {
        const Tri l = eval(f.left());
        return l == 1 ? 1 : tri_or(l, eval(f.right()));
      }
      case FormulaKind::Implies: {
        const Tri l = eval(f.left());
        return l == 0 ? 1 : tri_or(tri_not(l), eval(f.right()));
      }
      case FormulaKind::Iff: {
        const Tri l = eval(f.left());
        const Tri r = eval(f.right());
        if (l == 2 || r == 2) return 2;
        return l == r ? 1 : 0;
      }
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        const bool ex = f.kind() == FormulaKind::Exists;
        auto prior = env_.find(f.name());
        const std::optional<Element> saved =
            prior == env_.end() ? std::nullopt : std::optional<Element>(prior->second);
        Tri acc = ex ? 0 : 1;
        for (Element e = 0; e < size_; ++e) {
          env_[f.name()] = e;
          const Tri v = eval(f.child());
          acc = ex ? tri_or(acc, v) : tri_and(acc, v);
          if (acc == (ex ? 1 : 0)) break;
        }
        if (saved) {
          env_[f.name()] = *saved;
        } else {
          env_.erase(f.name());
        }
        return acc;
      }
    }
    return 2;
  }

  bool dfs(const Formula& f) {
    if (fuel_ == 0) throw Error(ErrorKind::FuelExhausted, "model search ran out of fuel");
    --fuel_;
    pending_.reset();
    const Tri v = eval(f);
    if (v == 1) return true;
    if (v == 0) return false;
    const auto [name, slot] = *pending_;
    const SymbolInfo* info = sig_.find(*name);
    const int radix = info->kind == SymbolKind::Relation ? 2 : static_cast<int>(size_);
    auto& cell = cells_.at(*name)[slot];
    for (int value = 0; value < radix; ++value) {
      cell = value;
      if (dfs(f)) return true;
    }
    cell = kUnknownCell;
    return false;
  }

  const Signature& sig_;
  std::size_t size_;
  std::uint64_t fuel_;
  std::map<std::string, std::vector<int>> cells_;
  std::map<std::string, Element> env_;
  std::optional<std::pair<const std::string*, std::size_t>> pending_;
};

}  // namespace

std::optional<FiniteStructure> find_model(const Signature& sig, std::size_t size,
                                          const Formula& sentence, std::uint64_t fuel) {
  if (size == 0) throw Error(ErrorKind::InvalidInput, "structure size must be at least 1");
  if (!is_sentence(sentence)) {
    throw Error(ErrorKind::NotASentence, "model search needs a sentence");
  }
  check_conforms(sig, sentence);
  return ModelSearch(sig, size, fuel).run(sentence);
}

}  // namespace logiclab::fol
