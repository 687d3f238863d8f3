#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logiclab/bignat.hpp"

namespace logiclab::ord {

struct OrdinalTerm;

/// Ordinal below epsilon_0 in Cantor normal form: terms w^e * c with
/// strictly decreasing exponents and positive coefficients. No terms is 0.
class Ordinal {
 public:
  Ordinal() = default;
  /// Builds from terms, normalizing by ordinal addition left to right.
  explicit Ordinal(const std::vector<OrdinalTerm>& terms);

  static Ordinal natural(const BigNat& n);
  static Ordinal natural(std::uint64_t n) { return natural(BigNat(n)); }
  static Ordinal omega();
  /// w^e * c.
  static Ordinal omega_power(const Ordinal& e, const BigNat& c = 1);
  /// Adopts terms already in normal form; not checked.
  static Ordinal from_normal_form(std::vector<OrdinalTerm> terms);

  const std::vector<OrdinalTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_natural() const;
  bool is_limit() const;
  /// Precondition is_natural().
  BigNat to_natural() const;

 private:
  std::vector<OrdinalTerm> terms_;
};

struct OrdinalTerm {
  Ordinal exponent;
  BigNat coeff;
};

std::strong_ordering compare(const Ordinal& a, const Ordinal& b);
inline bool operator==(const Ordinal& a, const Ordinal& b) { return compare(a, b) == 0; }
inline std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  return compare(a, b);
}

Ordinal add(const Ordinal& a, const Ordinal& b);
Ordinal mul(const Ordinal& a, const Ordinal& b);
/// 0^0 is 1.
Ordinal pow(const Ordinal& a, const Ordinal& b);

/// (q, r) with b*q + r == a and r < b. Throws DivisionByZero.
std::pair<Ordinal, Ordinal> divmod(const Ordinal& a, const Ordinal& b);

/// The d with a + d == b; requires a <= b.
Ordinal left_subtract(const Ordinal& a, const Ordinal& b);

/// True iff a == w^e for some e. Throws ZeroInput.
bool is_indecomposable(const Ordinal& a);

/// Grammar: sum of terms `n`, `w`, `w*n`, `w^x`, `w^x*n`, where x is a
/// natural, `w`, or a braced/parenthesized ordinal.
Ordinal parse_ordinal(std::string_view src);
std::string to_string(const Ordinal& a);

// ---------------------------------------------------------------------------
// Hereditary base expansion and Goodstein sequences

struct HereditaryTerm;

/// Complete base-b expansion: n = sum digit * b^exponent with every exponent
/// itself expanded. No terms is 0.
struct Hereditary {
  std::vector<HereditaryTerm> terms;  // decreasing exponents
};

struct HereditaryTerm {
  Hereditary exponent;
  BigNat digit;  // 1 .. base-1
};

struct HereditaryRep {
  BigNat base;
  Hereditary expansion;
};

/// Throws BaseGuard if base < 2.
HereditaryRep hereditary_expand(const BigNat& n, const BigNat& base);
BigNat evaluate(const Hereditary& h, const BigNat& base);
/// "2^(2^2+1) + 2^2".
std::string to_string(const HereditaryRep& r);
/// The base replaced by w.
Ordinal majorant(const Hereditary& h);

/// Expand in `base`, reread in base+1, subtract one. Throws ZeroInput for
/// value 0 and BaseGuard for base < 2.
BigNat goodstein_step(const BigNat& value, const BigNat& base);

struct GoodsteinRow {
  std::uint64_t step;
  BigNat base;
  BigNat value;
  Ordinal ordinal;
};

struct GoodsteinTrace {
  std::vector<GoodsteinRow> rows;  // row 0 is the starting value
  bool finished = false;           // reached 0 within the step budget
};

GoodsteinTrace goodstein_run(const BigNat& m, const BigNat& start_base, std::uint64_t max_steps);

/// "step,base,value,ordinal" header plus one line per row.
std::string format_csv(const GoodsteinTrace& t);

}  // namespace logiclab::ord
