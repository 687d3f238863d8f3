#include "logiclab/hf.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <mutex>

#include <boost/integer/mod_inverse.hpp>

#include "logiclab/error.hpp"

namespace logiclab::hf {

// ---------------------------------------------------------------------------
// HFSet

namespace {

const std::shared_ptr<const HFNode>& empty_node() {
  static const auto node = std::make_shared<const HFNode>();
  return node;
}

}  // namespace

HFSet::HFSet() : node_(empty_node()) {}

HFSet HFSet::of(std::vector<HFSet> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  auto node = std::make_shared<HFNode>();
  node->rank = elements.empty() ? 0 : elements.back().rank() + 1;
  node->elements = std::move(elements);
  return HFSet(std::move(node));
}

HFSet HFSet::singleton(const HFSet& x) { return of({x}); }

const std::vector<HFSet>& HFSet::elements() const { return node_->elements; }

std::size_t HFSet::rank() const { return node_->rank; }

bool HFSet::contains(const HFSet& x) const {
  return std::binary_search(elements().begin(), elements().end(), x);
}

std::strong_ordering compare(const HFSet& a, const HFSet& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.rank() <=> b.rank(); c != 0) return c;
  const auto& xs = a.elements();
  const auto& ys = b.elements();
  const std::size_t n = std::min(xs.size(), ys.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = compare(xs[i], ys[i]); c != 0) return c;
  }
  return xs.size() <=> ys.size();
}

namespace {

class SetParser {
 public:
  explicit SetParser(std::string_view src) : src_(src) {}

  HFSet parse() {
    skip();
    HFSet s = set();
    skip();
    if (pos_ != src_.size()) fail("trailing input");
    return s;
  }

 private:
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(ErrorKind::Syntax, pos_, msg);
  }
  void expect(char c) {
    skip();
    if (pos_ >= src_.size() || src_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  HFSet set() {
    expect('{');
    std::vector<HFSet> elems;
    skip();
    if (pos_ < src_.size() && src_[pos_] == '}') {
      ++pos_;
      return HFSet();
    }
    while (true) {
      skip();
      elems.push_back(set());
      skip();
      if (pos_ < src_.size() && src_[pos_] == ',') {
        ++pos_;
        continue;
      }
      expect('}');
      return HFSet::of(std::move(elems));
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

void print(const HFSet& x, std::string& out) {
  out += '{';
  bool first = true;
  for (const auto& e : x.elements()) {
    if (!first) out += ',';
    first = false;
    print(e, out);
  }
  out += '}';
}

}  // namespace

HFSet parse_hfset(std::string_view src) { return SetParser(src).parse(); }

std::string to_string(const HFSet& x) {
  std::string out;
  print(x, out);
  return out;
}

HFSet von_neumann(std::size_t n) {
  std::vector<HFSet> elems;
  HFSet current;
  for (std::size_t i = 0; i < n; ++i) {
    elems.push_back(current);
    current = HFSet::of(elems);
  }
  return current;
}

const std::vector<HFSet>& vn_universe(std::size_t n) {
  if (n > kMaxUniverseLevel) {
    throw Error(ErrorKind::SizeGuard, "V_" + std::to_string(n) + " is too large; the limit is V_5");
  }
  static std::array<std::once_flag, kMaxUniverseLevel + 1> once;
  static std::array<std::vector<HFSet>, kMaxUniverseLevel + 1> levels;
  std::call_once(once[n], [n] {
    if (n == 0) return;
    const auto& prev = vn_universe(n - 1);
    const std::size_t k = prev.size();
    std::vector<HFSet> out;
    out.reserve(std::size_t{1} << k);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      std::vector<HFSet> elems;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask >> i & 1U) elems.push_back(prev[i]);
      }
      out.push_back(HFSet::of(std::move(elems)));
    }
    std::sort(out.begin(), out.end());
    levels[n] = std::move(out);
  });
  return levels[n];
}

HFSet hf_pair(const HFSet& x, const HFSet& y) {
  return HFSet::of({HFSet::singleton(x), HFSet::of({x, y})});
}

// ---------------------------------------------------------------------------
// Bounded formulas

fol::Signature membership_signature() {
  fol::Signature sig;
  sig.add_relation(kMembership, 2);
  return sig;
}

namespace {

fol::Formula member(const std::string& x, const std::string& y) {
  return fol::rel(kMembership, {fol::var(x), fol::var(y)});
}

// x and y when f is E(x,y) over two variables.
std::optional<std::pair<std::string, std::string>> membership_atom(const fol::Formula& f) {
  if (f.kind() != fol::FormulaKind::Rel || f.name() != kMembership || f.terms().size() != 2) {
    return std::nullopt;
  }
  const auto& a = f.terms()[0];
  const auto& b = f.terms()[1];
  if (a.kind() != fol::TermKind::Var || b.kind() != fol::TermKind::Var) return std::nullopt;
  return std::make_pair(a.name(), b.name());
}

}  // namespace

fol::Formula bounded_exists(const std::string& x, const std::string& y, fol::Formula body) {
  return fol::exists(x, fol::conj(member(x, y), std::move(body)));
}

fol::Formula bounded_forall(const std::string& x, const std::string& y, fol::Formula body) {
  return fol::forall(x, fol::disj(fol::negate(member(x, y)), std::move(body)));
}

std::optional<Bound> bound_of(const fol::Formula& q) {
  if (!q.is_quantifier()) return std::nullopt;
  const std::string& x = q.name();
  const fol::Formula& body = q.child();
  auto guard = [&](const fol::Formula& g) -> std::optional<std::string> {
    auto m = membership_atom(g);
    if (!m || m->first != x || m->second == x) return std::nullopt;
    return m->second;
  };
  if (q.kind() == fol::FormulaKind::Exists) {
    if (body.kind() != fol::FormulaKind::And) return std::nullopt;
    if (auto y = guard(body.left())) return Bound{*y, body.right()};
    return std::nullopt;
  }
  if (body.kind() == fol::FormulaKind::Or && body.left().kind() == fol::FormulaKind::Not) {
    if (auto y = guard(body.left().child())) return Bound{*y, body.right()};
  }
  if (body.kind() == fol::FormulaKind::Implies) {
    if (auto y = guard(body.left())) return Bound{*y, body.right()};
  }
  return std::nullopt;
}

bool is_delta0(const fol::Formula& f) {
  using K = fol::FormulaKind;
  switch (f.kind()) {
    case K::Eq:
    case K::Rel:
      return true;
    case K::Not:
      return is_delta0(f.child());
    case K::And:
    case K::Or:
    case K::Implies:
    case K::Iff:
      return is_delta0(f.left()) && is_delta0(f.right());
    case K::Exists:
    case K::Forall: {
      auto b = bound_of(f);
      return b && is_delta0(b->body);
    }
  }
  return false;
}

fol::Formula BoundedFormula::to_formula() const {
  fol::Formula f = matrix;
  for (auto it = unbounded.rbegin(); it != unbounded.rend(); ++it) f = fol::exists(*it, f);
  return f;
}

BoundedFormula split_sigma1(const fol::Formula& f) {
  BoundedFormula out{{}, f};
  while (out.matrix.kind() == fol::FormulaKind::Exists && !bound_of(out.matrix)) {
    out.unbounded.push_back(out.matrix.name());
    out.matrix = out.matrix.child();
  }
  if (!is_delta0(out.matrix)) {
    throw Error(ErrorKind::UnboundedQuantifier,
                "matrix of a Sigma_1 formula must only use bounded quantifiers");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

enum class Tok { Ident, In, LParen, RParen, Dot, Not, And, Or, Implies, Iff, Eq, Exists, Forall, End };

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
      std::string word(src.substr(start, i - start));
      Tok kind = Tok::Ident;
      if (word == "in") kind = Tok::In;
      if (word == "exists") kind = Tok::Exists;
      if (word == "forall") kind = Tok::Forall;
      out.push_back({kind, std::move(word), start});
      continue;
    }
    auto single = [&](Tok t) {
      out.push_back({t, std::string(1, c), start});
      ++i;
    };
    switch (c) {
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
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

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view src) : toks_(tokenize(src)) {}

  fol::Formula parse() {
    if (peek().kind == Tok::End) throw SyntaxError(ErrorKind::Syntax, 0, "empty formula");
    fol::Formula f = parse_iff();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(ErrorKind::Syntax, peek().offset, msg);
  }
  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    ++pos_;
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) fail("expected a variable");
    return advance().text;
  }

  fol::Formula parse_iff() {
    fol::Formula left = parse_implies();
    if (peek().kind == Tok::Iff) {
      ++pos_;
      return fol::iff(left, parse_iff());
    }
    return left;
  }
  fol::Formula parse_implies() {
    fol::Formula left = parse_or();
    if (peek().kind == Tok::Implies) {
      ++pos_;
      return fol::implies(left, parse_implies());
    }
    return left;
  }
  fol::Formula parse_or() {
    fol::Formula f = parse_and();
    while (peek().kind == Tok::Or) {
      ++pos_;
      f = fol::disj(f, parse_and());
    }
    return f;
  }
  fol::Formula parse_and() {
    fol::Formula f = parse_unary();
    while (peek().kind == Tok::And) {
      ++pos_;
      f = fol::conj(f, parse_unary());
    }
    return f;
  }
  fol::Formula parse_unary() {
    switch (peek().kind) {
      case Tok::Not:
        ++pos_;
        return fol::negate(parse_unary());
      case Tok::Exists:
      case Tok::Forall: {
        const bool ex = advance().kind == Tok::Exists;
        std::string x = ident();
        std::optional<std::string> bound;
        if (peek().kind == Tok::In) {
          ++pos_;
          bound = ident();
          if (*bound == x) fail("a bounded variable cannot bound itself");
        }
        expect(Tok::Dot, "'.'");
        fol::Formula body = parse_unary();
        if (bound) return ex ? bounded_exists(x, *bound, body) : bounded_forall(x, *bound, body);
        return ex ? fol::exists(x, body) : fol::forall(x, body);
      }
      case Tok::LParen: {
        ++pos_;
        fol::Formula f = parse_iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: {
        std::string a = advance().text;
        if (peek().kind == Tok::In) {
          ++pos_;
          return member(a, ident());
        }
        if (peek().kind == Tok::Eq) {
          ++pos_;
          return fol::eq(fol::var(a), fol::var(ident()));
        }
        fail("expected 'in' or '='");
      }
      default:
        fail("unexpected '" + peek().text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string_view connective(fol::FormulaKind k) {
  switch (k) {
    case fol::FormulaKind::And: return " & ";
    case fol::FormulaKind::Or: return " | ";
    case fol::FormulaKind::Implies: return " -> ";
    default: return " <-> ";
  }
}

}  // namespace

fol::Formula parse_hf_formula(std::string_view src) { return FormulaParser(src).parse(); }

std::string format_hf_formula(const fol::Formula& f) {
  using K = fol::FormulaKind;
  switch (f.kind()) {
    case K::Eq:
      return fol::to_string(f.terms()[0]) + " = " + fol::to_string(f.terms()[1]);
    case K::Rel:
      if (auto m = membership_atom(f)) return m->first + " in " + m->second;
      return fol::to_string(f);
    case K::Not:
      return "~" + format_hf_formula(f.child());
    case K::And:
    case K::Or:
    case K::Implies:
    case K::Iff:
      return "(" + format_hf_formula(f.left()) + std::string(connective(f.kind())) +
             format_hf_formula(f.right()) + ")";
    case K::Exists:
    case K::Forall: {
      const char* q = f.kind() == K::Exists ? "exists " : "forall ";
      const fol::Formula& body = f.child();
      // Only the shapes the parser produces print as bounded.
      const bool canonical =
          f.kind() == K::Exists ? body.kind() == K::And : body.kind() == K::Or;
      if (auto b = bound_of(f); b && canonical) {
        return q + f.name() + " in " + b->variable + ". " + format_hf_formula(b->body);
      }
      return q + f.name() + ". " + format_hf_formula(body);
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

class Delta0Eval {
 public:
  explicit Delta0Eval(Environment env) : env_(std::move(env)) {}

  bool eval(const fol::Formula& f) {
    using K = fol::FormulaKind;
    switch (f.kind()) {
      case K::Eq:
        return value(f.terms()[0]) == value(f.terms()[1]);
      case K::Rel:
        if (f.name() != kMembership || f.terms().size() != 2) {
          throw Error(ErrorKind::UnknownSymbol, "only the membership relation E is available");
        }
        return value(f.terms()[1]).contains(value(f.terms()[0]));
      case K::Not:
        return !eval(f.child());
      case K::And:
        return eval(f.left()) && eval(f.right());
      case K::Or:
        return eval(f.left()) || eval(f.right());
      case K::Implies:
        return !eval(f.left()) || eval(f.right());
      case K::Iff:
        return eval(f.left()) == eval(f.right());
      case K::Exists:
      case K::Forall: {
        auto b = bound_of(f);
        if (!b) throw Error(ErrorKind::UnboundedQuantifier, "unbounded quantifier over " + f.name());
        const HFSet range = lookup(b->variable);
        const bool ex = f.kind() == K::Exists;
        auto saved = env_.find(f.name()) == env_.end()
                         ? std::optional<HFSet>()
                         : std::optional<HFSet>(env_.at(f.name()));
        bool result = !ex;
        for (const auto& e : range.elements()) {
          env_[f.name()] = e;
          if (eval(b->body) == ex) {
            result = ex;
            break;
          }
        }
        if (saved) {
          env_[f.name()] = *saved;
        } else {
          env_.erase(f.name());
        }
        return result;
      }
    }
    return false;
  }

 private:
  const HFSet& lookup(const std::string& v) const {
    auto it = env_.find(v);
    if (it == env_.end()) throw Error(ErrorKind::UncoveredVariable, "variable " + v + " is unassigned");
    return it->second;
  }
  const HFSet& value(const fol::Term& t) const {
    if (t.kind() != fol::TermKind::Var) {
      throw Error(ErrorKind::InvalidInput, "terms over HF must be variables");
    }
    return lookup(t.name());
  }

  Environment env_;
};

void check_covered(const fol::Formula& f, const Environment& env,
                   const std::vector<std::string>& extra = {}) {
  for (const auto& v : fol::free_vars(f)) {
    if (!env.count(v) && std::find(extra.begin(), extra.end(), v) == extra.end()) {
      throw Error(ErrorKind::UncoveredVariable, "variable " + v + " is unassigned");
    }
  }
}

}  // namespace

bool eval_delta0(const fol::Formula& f, const Environment& env) {
  if (!is_delta0(f)) throw Error(ErrorKind::UnboundedQuantifier, "formula is not Delta_0");
  check_covered(f, env);
  return Delta0Eval(env).eval(f);
}

std::string_view to_string(Sigma1Verdict v) {
  return v == Sigma1Verdict::True ? "TRUE" : "UNKNOWN";
}

Sigma1Result eval_sigma1_bounded(const BoundedFormula& f, const Environment& env,
                                 std::size_t search_rank) {
  if (!is_delta0(f.matrix)) throw Error(ErrorKind::UnboundedQuantifier, "matrix is not Delta_0");
  const auto& universe = vn_universe(search_rank);
  const std::size_t k = f.unbounded.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= universe.size();
    if (total > kMaxSigma1Candidates) {
      throw Error(ErrorKind::SizeGuard, "too many witness candidates; lower the search rank");
    }
  }
  check_covered(f.matrix, env, f.unbounded);
  if (universe.empty() && k > 0) return {};

  std::vector<std::size_t> idx(k, 0);
  Environment e = env;
  while (true) {
    for (std::size_t i = 0; i < k; ++i) e[f.unbounded[i]] = universe[idx[i]];
    if (Delta0Eval(e).eval(f.matrix)) {
      Sigma1Result r{Sigma1Verdict::True, {}};
      for (const auto& v : f.unbounded) r.witnesses[v] = e.at(v);
      return r;
    }
    std::size_t i = k;
    while (i > 0 && ++idx[i - 1] == universe.size()) idx[--i] = 0;
    if (i == 0) return {};
  }
}

// ---------------------------------------------------------------------------
// FIN

const std::vector<FinAxiom>& fin_axioms() {
  static const std::vector<FinAxiom> axioms = [] {
    const fol::Signature sig = membership_signature();
    auto p = [&](const char* name, const char* text) {
      return FinAxiom{name, fol::parse_formula(sig, text)};
    };
    return std::vector<FinAxiom>{
        p("Empty Set", "exists x. forall y. ~E(y,x)"),
        p("Extensionality", "forall x. forall y. (x = y <-> forall z. (E(z,x) <-> E(z,y)))"),
        p("Pairing", "forall x. forall y. exists z. forall u. (E(u,z) <-> (u = x | u = y))"),
        p("Union", "forall x. exists y. forall z. (E(z,y) <-> exists u. (E(u,x) & E(z,u)))"),
    };
  }();
  return axioms;
}

fol::FiniteStructure truncation_structure(std::size_t n) {
  if (n < 1 || n > 4) {
    throw Error(ErrorKind::SizeGuard, "truncation level must be between 1 and 4");
  }
  const auto& v = vn_universe(n);
  fol::FiniteStructure m;
  m.size = v.size();
  m.signature = membership_signature();
  auto& rel = m.relations[kMembership];
  for (std::size_t j = 0; j < v.size(); ++j) {
    for (const auto& e : v[j].elements()) {
      const auto i = static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), e) - v.begin());
      rel.insert({i, j});
    }
  }
  return m;
}

std::vector<FinCheck> check_fin_axioms(std::size_t n) {
  const fol::FiniteStructure m = truncation_structure(n);
  std::vector<FinCheck> out;
  for (const auto& ax : fin_axioms()) out.push_back({ax.name, fol::satisfies(m, ax.sentence)});
  return out;
}

// ---------------------------------------------------------------------------
// CRT and beta

BigNat crt_solve(const std::vector<BigNat>& moduli, const std::vector<BigNat>& residues) {
  if (moduli.size() != residues.size()) {
    throw Error(ErrorKind::LengthMismatch, "moduli and residues differ in length");
  }
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] < 1) throw Error(ErrorKind::InvalidInput, "moduli must be at least 1");
    if (residues[i] < 0 || residues[i] >= moduli[i]) {
      throw Error(ErrorKind::OutOfRange, "residue " + logiclab::to_string(residues[i]) +
                                             " is not below its modulus " + logiclab::to_string(moduli[i]));
    }
  }
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    for (std::size_t j = i + 1; j < moduli.size(); ++j) {
      if (boost::multiprecision::gcd(moduli[i], moduli[j]) != 1) {
        throw Error(ErrorKind::NotCoprime, "moduli " + logiclab::to_string(moduli[i]) + " and " +
                                               logiclab::to_string(moduli[j]) + " share a factor");
      }
    }
  }
  BigNat x = 0;
  BigNat m = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const BigNat& mi = moduli[i];
    if (mi == 1) continue;
    // x + m*t = r (mod mi)
    const BigNat inv = boost::integer::mod_inverse(BigNat(m % mi), mi);
    BigNat diff = (residues[i] - x % mi) % mi;
    if (diff < 0) diff += mi;
    const BigNat t = diff * inv % mi;
    x += m * t;
    m *= mi;
  }
  return x;
}

BetaCode beta_encode(const std::vector<std::uint64_t>& xs) {
  if (xs.empty()) throw Error(ErrorKind::InvalidInput, "beta coding needs a nonempty sequence");
  std::uint64_t top = xs.size();
  for (auto v : xs) top = std::max(top, v);
  if (top > kMaxBetaValue) {
    throw Error(ErrorKind::SizeGuard, "sequence too long or values too large for beta coding");
  }
  BetaCode code{0, factorial(top + 1)};
  std::vector<BigNat> moduli, residues;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    moduli.push_back(1 + BigNat(i + 1) * code.y);
    residues.push_back(xs[i]);
  }
  code.x = crt_solve(moduli, residues);
  return code;
}

BigNat beta_decode(std::uint64_t i, const BigNat& x, const BigNat& y) {
  return x % (1 + BigNat(i + 1) * y);
}

}  // namespace logiclab::hf
