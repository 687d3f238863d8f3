#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logiclab/bignat.hpp"
#include "logiclab/fol.hpp"

namespace logiclab::hf {

struct HFNode;

/// Hereditarily finite set. Elements are kept sorted in canonical order and
/// duplicate-free, so two sets are equal exactly when they have the same
/// members.
class HFSet {
 public:
  /// The empty set.
  HFSet();

  /// Canonicalizes: sorts and removes duplicates.
  static HFSet of(std::vector<HFSet> elements);
  static HFSet singleton(const HFSet& x);

  const std::vector<HFSet>& elements() const;
  std::size_t size() const { return elements().size(); }
  bool empty() const { return elements().empty(); }
  /// 0 for the empty set, else 1 + the largest element rank.
  std::size_t rank() const;
  bool contains(const HFSet& x) const;

 private:
  explicit HFSet(std::shared_ptr<const HFNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const HFNode> node_;

  friend std::strong_ordering compare(const HFSet& a, const HFSet& b);
};

struct HFNode {
  std::vector<HFSet> elements;
  std::size_t rank = 0;
};

/// Rank first, then lexicographic over the sorted element lists.
std::strong_ordering compare(const HFSet& a, const HFSet& b);
inline bool operator==(const HFSet& a, const HFSet& b) { return compare(a, b) == 0; }
inline std::strong_ordering operator<=>(const HFSet& a, const HFSet& b) {
  return compare(a, b);
}

/// Nested braces, e.g. "{{},{{}}}". Whitespace is ignored.
HFSet parse_hfset(std::string_view src);
std::string to_string(const HFSet& x);

/// The von Neumann natural n = {0, ..., n-1}.
HFSet von_neumann(std::size_t n);

inline constexpr std::size_t kMaxUniverseLevel = 5;

/// V_n in canonical order. Computed once per level. Throws SizeGuard for
/// n > 5.
const std::vector<HFSet>& vn_universe(std::size_t n);

/// {{x},{x,y}}.
HFSet hf_pair(const HFSet& x, const HFSet& y);

// ---------------------------------------------------------------------------
// Bounded formulas over the membership relation E

inline constexpr const char* kMembership = "E";

fol::Signature membership_signature();

/// exists x in y. body  ==  exists x. (E(x,y) & body)
fol::Formula bounded_exists(const std::string& x, const std::string& y, fol::Formula body);
/// forall x in y. body  ==  forall x. (~E(x,y) | body)
fol::Formula bounded_forall(const std::string& x, const std::string& y, fol::Formula body);

/// Bounding variable and body when q has one of the bounded shapes above
/// (forall x. (E(x,y) -> body) is accepted too).
struct Bound {
  std::string variable;
  fol::Formula body;
};
std::optional<Bound> bound_of(const fol::Formula& q);

bool is_delta0(const fol::Formula& f);

/// A leading block of unbounded existential quantifiers over a Delta_0
/// matrix.
struct BoundedFormula {
  std::vector<std::string> unbounded;
  fol::Formula matrix;

  fol::Formula to_formula() const;
};

/// Throws UnboundedQuantifier when f is not Sigma_1 in this shape.
BoundedFormula split_sigma1(const fol::Formula& f);

/// Grammar: atoms `x in y`, `x = y`; `~ & | -> <->`; `exists x in y. φ`,
/// `forall x in y. φ` and unbounded `exists x. φ` / `forall x. φ`.
/// Quantifiers scope over the following unary formula, as in fol.
fol::Formula parse_hf_formula(std::string_view src);
/// Inverse of parse_hf_formula for formulas over E.
std::string format_hf_formula(const fol::Formula& f);

using Environment = std::map<std::string, HFSet>;

/// Throws UnboundedQuantifier and UncoveredVariable. Terms must be
/// variables; E is the only relation.
bool eval_delta0(const fol::Formula& f, const Environment& env);

enum class Sigma1Verdict { True, Unknown };
std::string_view to_string(Sigma1Verdict v);

struct Sigma1Result {
  Sigma1Verdict verdict = Sigma1Verdict::Unknown;
  Environment witnesses;  // set when verdict is True
};

/// Upper bound on |V_rank|^k candidate tuples.
inline constexpr std::uint64_t kMaxSigma1Candidates = std::uint64_t{1} << 24;

/// Searches V_search_rank for witnesses of the unbounded block. Never
/// answers false. Throws SizeGuard for search_rank > 5 or too many
/// candidates.
Sigma1Result eval_sigma1_bounded(const BoundedFormula& f, const Environment& env,
                                 std::size_t search_rank);

// ---------------------------------------------------------------------------
// FIN over truncations

struct FinAxiom {
  std::string name;
  fol::Formula sentence;
};

/// Empty Set, Extensionality, Pairing, Union.
const std::vector<FinAxiom>& fin_axioms();

/// (V_n, E) as a finite structure; element i is vn_universe(n)[i].
fol::FiniteStructure truncation_structure(std::size_t n);

struct FinCheck {
  std::string axiom;
  bool holds;
};

/// Requires 1 <= n <= 4 (SizeGuard otherwise).
std::vector<FinCheck> check_fin_axioms(std::size_t n);

// ---------------------------------------------------------------------------
// Chinese remainders and the beta function

/// Least x with x = residues[i] mod moduli[i]. Throws LengthMismatch,
/// NotCoprime, InvalidInput for a zero modulus and OutOfRange for a residue
/// not below its modulus.
BigNat crt_solve(const std::vector<BigNat>& moduli, const std::vector<BigNat>& residues);

struct BetaCode {
  BigNat x;
  BigNat y;
};

/// y = (max(len, xs...) + 1)!, x solves x = xs[i] mod 1+(i+1)y. Throws
/// InvalidInput for an empty sequence and SizeGuard when that maximum
/// exceeds kMaxBetaValue.
inline constexpr std::uint64_t kMaxBetaValue = 200;
BetaCode beta_encode(const std::vector<std::uint64_t>& xs);
/// x mod 1+(i+1)y.
BigNat beta_decode(std::uint64_t i, const BigNat& x, const BigNat& y);

}  // namespace logiclab::hf
