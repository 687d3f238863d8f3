#include "logiclab/godel.hpp"

#include <istream>
#include <sstream>

#include "logiclab/error.hpp"

namespace logiclab::hf {

namespace {

std::string_view kind_name(GodelKind k) {
  switch (k) {
    case GodelKind::Relation: return "rel";
    case GodelKind::Function: return "fun";
    case GodelKind::Constant: return "const";
    case GodelKind::Variable: return "var";
    case GodelKind::Atom: return "atom";
  }
  return "?";
}

std::optional<GodelKind> parse_kind(const std::string& s) {
  for (auto k : {GodelKind::Relation, GodelKind::Function, GodelKind::Constant,
                 GodelKind::Variable, GodelKind::Atom}) {
    if (kind_name(k) == s) return k;
  }
  return std::nullopt;
}

bool has_arity(GodelKind k) { return k == GodelKind::Relation || k == GodelKind::Function; }

}  // namespace

// ---------------------------------------------------------------------------
// Symbol table

std::uint64_t SymbolTable::add(const std::string& name, GodelKind kind, std::size_t arity) {
  if (!has_arity(kind)) arity = 0;
  const bool ok_name = kind == GodelKind::Atom ? prop::is_valid_atom_name(name)
                                               : fol::is_identifier(name);
  if (!ok_name) throw Error(ErrorKind::InvalidInput, "invalid symbol name '" + name + "'");
  if (kind == GodelKind::Function && arity == 0) {
    throw Error(ErrorKind::InvalidInput, "function " + name + " needs a positive arity");
  }
  if (auto it = index_.find(name); it != index_.end()) {
    const GodelSymbol& old = symbols_[it->second - kFirstSymbolCode];
    if (old.kind != kind || old.arity != arity) {
      throw Error(ErrorKind::InvalidInput, "symbol " + name + " is already registered differently");
    }
    return it->second;
  }
  const std::uint64_t code = kFirstSymbolCode + symbols_.size();
  symbols_.push_back({name, kind, arity});
  index_[name] = code;
  return code;
}

void SymbolTable::add_signature(const fol::Signature& sig) {
  for (auto want : {fol::SymbolKind::Relation, fol::SymbolKind::Function, fol::SymbolKind::Constant}) {
    for (const auto& [name, info] : sig.symbols()) {
      if (info.kind != want) continue;
      switch (info.kind) {
        case fol::SymbolKind::Relation: add(name, GodelKind::Relation, info.arity); break;
        case fol::SymbolKind::Function: add(name, GodelKind::Function, info.arity); break;
        case fol::SymbolKind::Constant: add(name, GodelKind::Constant); break;
      }
    }
  }
}

std::optional<std::uint64_t> SymbolTable::code_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const GodelSymbol* SymbolTable::symbol(std::uint64_t code) const {
  if (code < kFirstSymbolCode || code - kFirstSymbolCode >= symbols_.size()) return nullptr;
  return &symbols_[code - kFirstSymbolCode];
}

fol::Signature SymbolTable::signature() const {
  fol::Signature sig;
  for (const auto& s : symbols_) {
    switch (s.kind) {
      case GodelKind::Relation: sig.add_relation(s.name, s.arity); break;
      case GodelKind::Function: sig.add_function(s.name, s.arity); break;
      case GodelKind::Constant: sig.add_constant(s.name); break;
      default: break;
    }
  }
  return sig;
}

SymbolTable SymbolTable::arithmetic() {
  SymbolTable t;
  t.add(kZero, GodelKind::Constant);
  t.add(kSucc, GodelKind::Function, 1);
  t.add(kDouble, GodelKind::Function, 1);
  for (const char* v : {"x", "y", "z", "u", "v", "w"}) t.add_variable(v);
  return t;
}

void write_symbol_table(std::ostream& out, const SymbolTable& t) {
  out << "godel-symbols v1\n";
  std::uint64_t code = kFirstSymbolCode;
  for (const auto& s : t.symbols()) {
    out << code++ << ' ' << kind_name(s.kind) << ' ' << s.name;
    if (has_arity(s.kind)) out << ' ' << s.arity;
    out << '\n';
  }
}

SymbolTable read_symbol_table(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorKind::InvalidInput, "symbol table line " + std::to_string(lineno) + ": " + msg);
  };
  bool header = false;
  SymbolTable t;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> words;
    for (std::string w; ls >> w;) words.push_back(w);
    if (words.empty()) continue;
    if (!header) {
      if (words.size() != 2 || words[0] != "godel-symbols") fail("missing 'godel-symbols v1' header");
      if (words[1] != "v1") fail("unsupported version " + words[1]);
      header = true;
      continue;
    }
    if (words.size() < 3) fail("expected 'code kind name [arity]'");
    auto kind = parse_kind(words[1]);
    if (!kind) fail("unknown kind " + words[1]);
    if (words.size() != (has_arity(*kind) ? 4U : 3U)) fail("wrong number of fields");
    std::uint64_t code = 0;
    std::size_t arity = 0;
    try {
      code = std::stoull(words[0]);
      if (has_arity(*kind)) arity = std::stoull(words[3]);
    } catch (const std::exception&) {
      fail("expected a number");
    }
    if (code != kFirstSymbolCode + t.symbols().size()) fail("codes must be consecutive from 9");
    if (t.code_of(words[2])) fail("duplicate symbol " + words[2]);
    t.add(words[2], *kind, arity);
  }
  if (!header) throw Error(ErrorKind::InvalidInput, "empty symbol table file");
  return t;
}

std::string format_symbol_table(const SymbolTable& t) {
  std::ostringstream out;
  write_symbol_table(out, t);
  return out.str();
}

SymbolTable parse_symbol_table(const std::string& text) {
  std::istringstream in(text);
  return read_symbol_table(in);
}

// ---------------------------------------------------------------------------
// Encoding

namespace {

class Encoder {
 public:
  explicit Encoder(const SymbolTable& t) : t_(t) {}

  std::vector<std::uint64_t> out;

  void formula(const fol::Formula& f) {
    using K = fol::FormulaKind;
    switch (f.kind()) {
      case K::Eq:
        out.push_back(kCodeEq);
        term(f.terms()[0]);
        term(f.terms()[1]);
        return;
      case K::Rel:
        out.push_back(lookup(f.name(), GodelKind::Relation, f.terms().size()));
        for (const auto& a : f.terms()) term(a);
        return;
      case K::Not:
        out.push_back(kCodeNot);
        formula(f.child());
        return;
      case K::And:
      case K::Or:
      case K::Implies:
      case K::Iff:
        out.push_back(f.kind() == K::And     ? kCodeAnd
                      : f.kind() == K::Or    ? kCodeOr
                      : f.kind() == K::Implies ? kCodeImplies
                                             : kCodeIff);
        formula(f.left());
        formula(f.right());
        return;
      case K::Exists:
      case K::Forall:
        out.push_back(f.kind() == K::Exists ? kCodeExists : kCodeForall);
        out.push_back(lookup(f.name(), GodelKind::Variable, 0));
        formula(f.child());
        return;
    }
  }

  void sentence(const prop::Sentence& s) {
    if (s.is_atom()) {
      out.push_back(lookup(s.name(), GodelKind::Atom, 0));
    } else if (s.is_negation()) {
      out.push_back(kCodeNot);
      sentence(s.operand());
    } else {
      switch (s.connective()) {
        case prop::Connective::And: out.push_back(kCodeAnd); break;
        case prop::Connective::Or: out.push_back(kCodeOr); break;
        case prop::Connective::Implies: out.push_back(kCodeImplies); break;
        case prop::Connective::Iff: out.push_back(kCodeIff); break;
      }
      sentence(s.left());
      sentence(s.right());
    }
  }

 private:
  void term(const fol::Term& t) {
    switch (t.kind()) {
      case fol::TermKind::Var: out.push_back(lookup(t.name(), GodelKind::Variable, 0)); return;
      case fol::TermKind::Const: out.push_back(lookup(t.name(), GodelKind::Constant, 0)); return;
      case fol::TermKind::Apply:
        out.push_back(lookup(t.name(), GodelKind::Function, t.args().size()));
        for (const auto& a : t.args()) term(a);
        return;
    }
  }

  std::uint64_t lookup(const std::string& name, GodelKind kind, std::size_t arity) const {
    auto code = t_.code_of(name);
    const GodelSymbol* s = code ? t_.symbol(*code) : nullptr;
    if (!s || s->kind != kind) {
      throw Error(ErrorKind::UnregisteredSymbol,
                  std::string(kind_name(kind)) + " " + name + " is not in the symbol table");
    }
    if (s->arity != arity) {
      throw Error(ErrorKind::ArityMismatch, name + " has arity " + std::to_string(s->arity) +
                                                " in the symbol table");
    }
    return *code;
  }

  const SymbolTable& t_;
};

class Decoder {
 public:
  Decoder(const SymbolTable& t, const std::vector<std::uint64_t>& codes) : t_(t), codes_(codes) {}

  fol::Formula formula_all() {
    fol::Formula f = formula();
    if (pos_ != codes_.size()) fail("trailing codes");
    return f;
  }
  prop::Sentence sentence_all() {
    prop::Sentence s = sentence();
    if (pos_ != codes_.size()) fail("trailing codes");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::NotACode, "not a formula code: " + msg);
  }
  std::uint64_t next() {
    if (pos_ >= codes_.size()) fail("sequence ends early");
    return codes_[pos_++];
  }
  const GodelSymbol& registered(std::uint64_t c) const {
    const GodelSymbol* s = t_.symbol(c);
    if (!s) fail("unknown code " + std::to_string(c));
    return *s;
  }

  fol::Formula formula() {
    const std::uint64_t c = next();
    switch (c) {
      case kCodeNot: return fol::negate(formula());
      case kCodeOr:
      case kCodeAnd:
      case kCodeImplies:
      case kCodeIff: {
        fol::Formula a = formula();
        fol::Formula b = formula();
        if (c == kCodeOr) return fol::disj(a, b);
        if (c == kCodeAnd) return fol::conj(a, b);
        if (c == kCodeImplies) return fol::implies(a, b);
        return fol::iff(a, b);
      }
      case kCodeExists:
      case kCodeForall: {
        const GodelSymbol& v = registered(next());
        if (v.kind != GodelKind::Variable) fail("quantifier without a variable");
        fol::Formula body = formula();
        return c == kCodeExists ? fol::exists(v.name, body) : fol::forall(v.name, body);
      }
      case kCodeEq: {
        fol::Term a = term();
        return fol::eq(a, term());
      }
      default: break;
    }
    const GodelSymbol& s = registered(c);
    if (s.kind != GodelKind::Relation) fail(s.name + " is not a relation");
    std::vector<fol::Term> args;
    for (std::size_t i = 0; i < s.arity; ++i) args.push_back(term());
    return fol::rel(s.name, std::move(args));
  }

  fol::Term term() {
    const GodelSymbol& s = registered(next());
    switch (s.kind) {
      case GodelKind::Variable: return fol::var(s.name);
      case GodelKind::Constant: return fol::constant(s.name);
      case GodelKind::Function: {
        std::vector<fol::Term> args;
        for (std::size_t i = 0; i < s.arity; ++i) args.push_back(term());
        return fol::apply(s.name, std::move(args));
      }
      default: fail(s.name + " is not a term symbol");
    }
  }

  prop::Sentence sentence() {
    const std::uint64_t c = next();
    switch (c) {
      case kCodeNot: return prop::negate(sentence());
      case kCodeOr:
      case kCodeAnd:
      case kCodeImplies:
      case kCodeIff: {
        prop::Sentence a = sentence();
        prop::Sentence b = sentence();
        const prop::Connective op = c == kCodeOr       ? prop::Connective::Or
                                    : c == kCodeAnd    ? prop::Connective::And
                                    : c == kCodeImplies ? prop::Connective::Implies
                                                       : prop::Connective::Iff;
        return prop::binary(op, a, b);
      }
      default: break;
    }
    const GodelSymbol& s = registered(c);
    if (s.kind != GodelKind::Atom) fail(s.name + " is not a sentence letter");
    return prop::atom(s.name);
  }

  const SymbolTable& t_;
  const std::vector<std::uint64_t>& codes_;
  std::size_t pos_ = 0;
};

std::vector<std::uint64_t> codes_of(const BigNat& n) {
  auto codes = contiguous_prime_exponents(n);
  if (!codes) throw Error(ErrorKind::NotACode, logiclab::to_string(n) + " is not a sequence code");
  return *codes;
}

}  // namespace

std::vector<std::uint64_t> godel_codes(const SymbolTable& t, const fol::Formula& f) {
  Encoder e(t);
  e.formula(f);
  return std::move(e.out);
}

std::vector<std::uint64_t> godel_codes(const SymbolTable& t, const prop::Sentence& s) {
  Encoder e(t);
  e.sentence(s);
  return std::move(e.out);
}

BigNat godel_number(const SymbolTable& t, const fol::Formula& f) {
  return prime_power_product(godel_codes(t, f));
}

BigNat godel_number(const SymbolTable& t, const prop::Sentence& s) {
  return prime_power_product(godel_codes(t, s));
}

fol::Formula decode_codes(const SymbolTable& t, const std::vector<std::uint64_t>& codes) {
  return Decoder(t, codes).formula_all();
}

fol::Formula godel_decode(const SymbolTable& t, const BigNat& n) {
  return decode_codes(t, codes_of(n));
}

prop::Sentence godel_decode_sentence(const SymbolTable& t, const BigNat& n) {
  const auto codes = codes_of(n);
  return Decoder(t, codes).sentence_all();
}

// ---------------------------------------------------------------------------
// Numerals and diagonalization

namespace {

void require(const SymbolTable& t, const char* name, GodelKind kind, std::size_t arity) {
  auto code = t.code_of(name);
  const GodelSymbol* s = code ? t.symbol(*code) : nullptr;
  if (!s || s->kind != kind) {
    throw Error(ErrorKind::UnregisteredSymbol,
                std::string("numerals need ") + std::string(kind_name(kind)) + " " + name +
                    " in the symbol table");
  }
  if (s->arity != arity) {
    throw Error(ErrorKind::ArityMismatch, std::string(name) + " must have arity " +
                                              std::to_string(arity));
  }
}

}  // namespace

fol::Term numeral(const SymbolTable& t, const BigNat& n) {
  require(t, kZero, GodelKind::Constant, 0);
  require(t, kSucc, GodelKind::Function, 1);
  require(t, kDouble, GodelKind::Function, 1);
  fol::Term term = fol::constant(kZero);
  if (n <= 0) return term;
  const std::size_t top = boost::multiprecision::msb(n);
  term = fol::apply(kSucc, {term});
  for (std::size_t i = top; i-- > 0;) {
    term = fol::apply(kDouble, {term});
    if (boost::multiprecision::bit_test(n, static_cast<unsigned>(i))) term = fol::apply(kSucc, {term});
  }
  return term;
}

std::optional<BigNat> numeral_value(const fol::Term& term) {
  std::vector<bool> doubles;  // outermost first
  const fol::Term* cur = &term;
  while (cur->kind() == fol::TermKind::Apply && cur->args().size() == 1 &&
         (cur->name() == kSucc || cur->name() == kDouble)) {
    doubles.push_back(cur->name() == kDouble);
    cur = &cur->args()[0];
  }
  if (cur->kind() != fol::TermKind::Const || cur->name() != kZero) return std::nullopt;
  BigNat v = 0;
  for (auto it = doubles.rbegin(); it != doubles.rend(); ++it) {
    if (*it) {
      v *= 2;
    } else {
      v += 1;
    }
  }
  return v;
}

fol::Formula self_apply(const SymbolTable& t, const fol::Formula& rho) {
  const auto fv = fol::free_vars(rho);
  if (fv.size() != 1) {
    throw Error(ErrorKind::FreeVariableCount,
                "expected exactly one free variable, found " + std::to_string(fv.size()));
  }
  return fol::substitute(rho, *fv.begin(), numeral(t, godel_number(t, rho)));
}

Diagonal diagonal_sentence(SymbolTable& t, const fol::Formula& psi, const std::string& chi_name) {
  auto code = t.code_of(chi_name);
  const GodelSymbol* chi = code ? t.symbol(*code) : nullptr;
  if (!chi || chi->kind != GodelKind::Relation) {
    throw Error(ErrorKind::UnregisteredSymbol, "relation " + chi_name + " is not in the symbol table");
  }
  if (chi->arity != 2) throw Error(ErrorKind::ArityMismatch, chi_name + " must be binary");
  const auto fv = fol::free_vars(psi);
  if (fv.size() != 1) {
    throw Error(ErrorKind::FreeVariableCount,
                "expected exactly one free variable, found " + std::to_string(fv.size()));
  }
  // psi(y) has y as its only free variable, so fixed names cannot clash;
  // substitution renames any binder of psi that would capture y.
  const std::string x = "x";
  const std::string y = "y";
  const fol::Formula psi_y = fol::substitute(psi, *fv.begin(), fol::var(y));
  Diagonal d{fol::exists(y, fol::conj(fol::rel(chi_name, {fol::var(x), fol::var(y)}), psi_y)),
             psi};
  for (const auto& v : fol::all_vars(d.sigma)) t.add_variable(v);
  d.theta = self_apply(t, d.sigma);
  return d;
}

}  // namespace logiclab::hf
