#include "logiclab/ordinal.hpp"

#include <cctype>
#include <sstream>

#include "logiclab/error.hpp"

namespace logiclab::ord {

namespace {

// Guards against results that would not fit in memory.
constexpr std::uint64_t kMaxResultBits = std::uint64_t{1} << 26;
constexpr std::uint64_t kMaxRepeatedPower = std::uint64_t{1} << 16;

std::uint64_t small(const BigNat& n, std::uint64_t limit, const char* what) {
  if (n > limit) {
    throw Error(ErrorKind::OutOfRange, std::string(what) + " exceeds " + std::to_string(limit));
  }
  return n.convert_to<std::uint64_t>();
}

BigNat big_pow(const BigNat& base, const BigNat& exponent) {
  if (exponent == 0) return 1;
  if (base <= 1) return base;
  const std::uint64_t bits = boost::multiprecision::msb(base) + 1;
  const std::uint64_t e = small(exponent, kMaxResultBits, "exponent");
  if (bits * e > kMaxResultBits) {
    throw Error(ErrorKind::OutOfRange,
                "power would exceed " + std::to_string(kMaxResultBits) + " bits");
  }
  return boost::multiprecision::pow(base, static_cast<unsigned>(e));
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction and comparison

Ordinal::Ordinal(const std::vector<OrdinalTerm>& terms) {
  Ordinal acc;
  for (const auto& t : terms) acc = add(acc, omega_power(t.exponent, t.coeff));
  terms_ = std::move(acc.terms_);
}

Ordinal Ordinal::from_normal_form(std::vector<OrdinalTerm> terms) {
  Ordinal o;
  o.terms_ = std::move(terms);
  return o;
}

Ordinal Ordinal::natural(const BigNat& n) {
  if (n == 0) return {};
  return from_normal_form({{Ordinal(), n}});
}

Ordinal Ordinal::omega() { return omega_power(natural(1)); }

Ordinal Ordinal::omega_power(const Ordinal& e, const BigNat& c) {
  if (c == 0) return {};
  return from_normal_form({{e, c}});
}

bool Ordinal::is_natural() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

bool Ordinal::is_limit() const { return !terms_.empty() && !terms_.back().exponent.is_zero(); }

BigNat Ordinal::to_natural() const {
  if (!is_natural()) throw Error(ErrorKind::InvalidInput, "ordinal is not finite");
  return terms_.empty() ? BigNat(0) : terms_[0].coeff;
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (auto c = compare(x[i].exponent, y[i].exponent); c != 0) return c;
    if (x[i].coeff != y[i].coeff) {
      return x[i].coeff < y[i].coeff ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  return x.size() <=> y.size();
}

// ---------------------------------------------------------------------------
// Arithmetic

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const auto& lead = b.terms().front();
  std::vector<OrdinalTerm> out;
  bool merged = false;
  for (const auto& t : a.terms()) {
    const auto c = compare(t.exponent, lead.exponent);
    if (c > 0) {
      out.push_back(t);
      continue;
    }
    if (c == 0) {
      out.push_back({lead.exponent, t.coeff + lead.coeff});
      merged = true;
    }
    break;
  }
  if (!merged) out.push_back(lead);
  out.insert(out.end(), b.terms().begin() + 1, b.terms().end());
  return Ordinal::from_normal_form(std::move(out));
}

Ordinal mul(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const Ordinal& lead_exp = a.terms().front().exponent;
  Ordinal out;
  for (const auto& t : b.terms()) {
    if (t.exponent.is_zero()) {
      // a * n: only the leading coefficient scales.
      auto terms = a.terms();
      terms.front().coeff *= t.coeff;
      out = add(out, Ordinal::from_normal_form(std::move(terms)));
    } else {
      out = add(out, Ordinal::omega_power(add(lead_exp, t.exponent), t.coeff));
    }
  }
  return out;
}

namespace {

Ordinal pow_natural_exponent(const Ordinal& a, const BigNat& m) {
  if (m == 0) return Ordinal::natural(1);
  if (a.is_natural()) return Ordinal::natural(big_pow(a.to_natural(), m));
  if (a.terms().size() == 1) {
    // (w^e c)^m = w^(e m) c for e > 0.
    const auto& t = a.terms().front();
    return Ordinal::omega_power(mul(t.exponent, Ordinal::natural(m)), t.coeff);
  }
  std::uint64_t e = small(m, kMaxRepeatedPower, "exponent of a multi-term base");
  Ordinal result = Ordinal::natural(1);
  Ordinal square = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, square);
    e >>= 1U;
    if (e) square = mul(square, square);
  }
  return result;
}

}  // namespace

Ordinal pow(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return Ordinal::natural(1);
  if (a.is_zero()) return {};
  if (a == Ordinal::natural(1)) return a;
  if (b.is_natural()) return pow_natural_exponent(a, b.to_natural());

  // b = L + m with L a limit and m finite.
  std::vector<OrdinalTerm> limit_terms;
  BigNat m = 0;
  for (const auto& t : b.terms()) {
    if (t.exponent.is_zero()) {
      m = t.coeff;
    } else {
      limit_terms.push_back(t);
    }
  }
  const Ordinal limit = Ordinal::from_normal_form(limit_terms);

  if (a.is_natural()) {
    // k^(w^g c) = w^(w^(g-1) c) for finite g, and w^(w^g c) for infinite g.
    std::vector<OrdinalTerm> shifted;
    for (const auto& t : limit_terms) {
      Ordinal g = t.exponent;
      if (g.is_natural()) g = Ordinal::natural(g.to_natural() - 1);
      shifted.push_back({g, t.coeff});
    }
    return mul(Ordinal::omega_power(Ordinal::from_normal_form(std::move(shifted))),
               Ordinal::natural(big_pow(a.to_natural(), m)));
  }
  // a^L = w^(lead_exp(a) * L) for infinite a.
  const Ordinal head = Ordinal::omega_power(mul(a.terms().front().exponent, limit));
  return mul(head, pow_natural_exponent(a, m));
}

Ordinal left_subtract(const Ordinal& a, const Ordinal& b) {
  if (compare(a, b) > 0) throw Error(ErrorKind::InvalidInput, "left_subtract needs a <= b");
  const auto& x = a.terms();
  const auto& y = b.terms();
  std::size_t i = 0;
  while (i < x.size() && compare(x[i].exponent, y[i].exponent) == 0 && x[i].coeff == y[i].coeff) ++i;
  if (i == x.size()) return Ordinal::from_normal_form({y.begin() + static_cast<long>(i), y.end()});
  std::vector<OrdinalTerm> out;
  if (compare(x[i].exponent, y[i].exponent) == 0) {
    out.push_back({y[i].exponent, y[i].coeff - x[i].coeff});
    ++i;
  }
  out.insert(out.end(), y.begin() + static_cast<long>(i), y.end());
  return Ordinal::from_normal_form(std::move(out));
}

std::pair<Ordinal, Ordinal> divmod(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "ordinal division by zero");
  if (compare(a, b) < 0) return {Ordinal(), a};
  const auto& ta = a.terms().front();
  const auto& tb = b.terms().front();
  if (compare(ta.exponent, tb.exponent) == 0) {
    BigNat q = ta.coeff / tb.coeff;
    Ordinal bq = mul(b, Ordinal::natural(q));
    if (compare(bq, a) > 0) {
      --q;
      bq = mul(b, Ordinal::natural(q));
    }
    return {Ordinal::natural(q), left_subtract(bq, a)};
  }
  // Leading exponent of a is larger: b * w^e * c matches a's leading term.
  const Ordinal e = left_subtract(tb.exponent, ta.exponent);
  const Ordinal head = Ordinal::omega_power(e, ta.coeff);
  const Ordinal rest =
      Ordinal::from_normal_form({a.terms().begin() + 1, a.terms().end()});
  auto [q, r] = divmod(rest, b);
  return {add(head, q), r};
}

bool is_indecomposable(const Ordinal& a) {
  if (a.is_zero()) throw Error(ErrorKind::ZeroInput, "0 is neither decomposable nor indecomposable");
  return a.terms().size() == 1 && a.terms().front().coeff == 1;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view src) : src_(src) {}

  Ordinal parse() {
    skip();
    if (pos_ == src_.size()) throw SyntaxError(ErrorKind::Syntax, 0, "empty ordinal");
    Ordinal o = sum();
    skip();
    if (pos_ != src_.size()) {
      throw SyntaxError(ErrorKind::Syntax, pos_,
                        std::string("unexpected '") + src_[pos_] + "' after ordinal");
    }
    return o;
  }

 private:
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(ErrorKind::Syntax, pos_, what);
  }

  Ordinal sum() {
    Ordinal o = term();
    while (accept('+')) o = add(o, term());
    return o;
  }

  BigNat number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a natural number");
    return BigNat(std::string(src_.substr(start, pos_ - start)));
  }

  bool at_digit() {
    skip();
    return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
  }

  Ordinal term() {
    if (at_digit()) return Ordinal::natural(number());
    if (!accept('w')) fail("expected a natural number or 'w'");
    Ordinal exponent = Ordinal::natural(1);
    if (accept('^')) exponent = power();
    BigNat coeff = 1;
    if (accept('*')) coeff = number();
    return Ordinal::omega_power(exponent, coeff);
  }

  Ordinal power() {
    if (at_digit()) return Ordinal::natural(number());
    if (accept('w')) return Ordinal::omega();
    for (auto [open, close] : {std::pair{'{', '}'}, std::pair{'(', ')'}}) {
      if (accept(open)) {
        Ordinal o = sum();
        if (!accept(close)) fail(std::string("expected '") + close + "'");
        return o;
      }
    }
    fail("expected an exponent after '^'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal parse_ordinal(std::string_view src) { return OrdinalParser(src).parse(); }

std::string to_string(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& t : a.terms()) {
    if (!out.empty()) out += " + ";
    const std::string coeff = logiclab::to_string(t.coeff);
    if (t.exponent.is_zero()) {
      out += coeff;
      continue;
    }
    out += "w";
    if (t.exponent != Ordinal::natural(1)) {
      const bool bare = t.exponent.is_natural() || t.exponent == Ordinal::omega();
      out += bare ? "^" + to_string(t.exponent) : "^{" + to_string(t.exponent) + "}";
    }
    if (t.coeff != 1) out += "*" + coeff;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hereditary expansion

namespace {

void require_base(const BigNat& base) {
  if (base < 2) throw Error(ErrorKind::BaseGuard, "base must be at least 2");
}

Hereditary expand(const BigNat& n, const BigNat& base) {
  std::vector<BigNat> digits;  // least significant first
  for (BigNat rest = n; rest > 0; rest /= base) digits.push_back(rest % base);
  Hereditary h;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] != 0) h.terms.push_back({expand(BigNat(i), base), digits[i]});
  }
  return h;
}

std::string format(const Hereditary& h, const std::string& base, bool top) {
  if (h.terms.empty()) return "0";
  std::string out;
  for (const auto& t : h.terms) {
    if (!out.empty()) out += top ? " + " : "+";
    const std::string digit = logiclab::to_string(t.digit);
    if (t.exponent.terms.empty()) {
      out += digit;
      continue;
    }
    if (t.digit != 1) out += digit + "*";
    out += base;
    const bool exponent_one = t.exponent.terms.size() == 1 &&
                              t.exponent.terms[0].exponent.terms.empty() &&
                              t.exponent.terms[0].digit == 1;
    if (!exponent_one) {
      const std::string e = format(t.exponent, base, false);
      const bool plain = e.find_first_not_of("0123456789") == std::string::npos;
      out += "^" + (plain ? e : "(" + e + ")");
    }
  }
  return out;
}

}  // namespace

HereditaryRep hereditary_expand(const BigNat& n, const BigNat& base) {
  require_base(base);
  return {base, expand(n, base)};
}

BigNat evaluate(const Hereditary& h, const BigNat& base) {
  BigNat out = 0;
  for (const auto& t : h.terms) out += t.digit * big_pow(base, evaluate(t.exponent, base));
  return out;
}

std::string to_string(const HereditaryRep& r) {
  return format(r.expansion, logiclab::to_string(r.base), true);
}

Ordinal majorant(const Hereditary& h) {
  std::vector<OrdinalTerm> terms;
  for (const auto& t : h.terms) terms.push_back({majorant(t.exponent), t.digit});
  return Ordinal::from_normal_form(std::move(terms));
}

BigNat goodstein_step(const BigNat& value, const BigNat& base) {
  require_base(base);
  if (value == 0) throw Error(ErrorKind::ZeroInput, "the Goodstein sequence has already reached 0");
  return evaluate(expand(value, base), base + 1) - 1;
}

GoodsteinTrace goodstein_run(const BigNat& m, const BigNat& start_base, std::uint64_t max_steps) {
  require_base(start_base);
  GoodsteinTrace t;
  BigNat base = start_base;
  BigNat value = m;
  t.rows.push_back({0, base, value, majorant(expand(value, base))});
  for (std::uint64_t step = 1; value > 0 && step <= max_steps; ++step) {
    value = goodstein_step(value, base);
    base += 1;
    t.rows.push_back({step, base, value, majorant(expand(value, base))});
  }
  t.finished = value == 0;
  return t;
}

std::string format_csv(const GoodsteinTrace& t) {
  std::ostringstream out;
  out << "step,base,value,ordinal\n";
  for (const auto& r : t.rows) {
    out << r.step << "," << r.base << "," << r.value << "," << to_string(r.ordinal) << "\n";
  }
  return out.str();
}

}  // namespace logiclab::ord
