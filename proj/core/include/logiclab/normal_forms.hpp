#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logiclab/fol.hpp"
#include "logiclab/prop.hpp"

namespace logiclab::nf {

using fol::Formula;
using fol::Term;

/// Negations pushed onto atoms; -> and <-> eliminated.
Formula to_nnf(const Formula& f);

struct PrefixEntry {
  fol::FormulaKind quantifier;  // Exists or Forall
  std::string var;
  friend bool operator==(const PrefixEntry&, const PrefixEntry&) = default;
};

struct PrenexFormula {
  std::vector<PrefixEntry> prefix;
  Formula matrix;

  Formula to_formula() const;
};

std::string to_string(const PrenexFormula& p);

/// NNF, then bound variables renamed apart (a repeated name gets primes),
/// then quantifiers pulled out left to right. Throws NotASentence.
PrenexFormula to_prenex(const Formula& f);

struct SkolemForm {
  PrenexFormula formula;         // prefix is all universal
  fol::Signature signature;      // input symbols plus the Skolem symbols
  std::vector<std::string> introduced;
};

/// Existentials replaced left to right by sk1, sk2, ... applied to the
/// universals governing them; names already taken in sig are skipped.
SkolemForm skolemize(const fol::Signature& sig, const Formula& f);

/// Ground terms of depth <= depth ordered by (depth, printed form). A
/// constant c0 is added first when sig has none.
std::vector<Term> herbrand_universe(const fol::Signature& sig, std::size_t depth);

struct HerbrandCertificate {
  std::vector<std::string> variables;           // universals of the skolemized negation
  std::vector<std::vector<Term>> instances;     // one term per variable
  prop::Sentence tautology;                     // propositional skeleton of the disjunction
  std::vector<std::pair<std::string, Formula>> legend;  // atom name -> ground atom
};

struct HerbrandResult {
  std::optional<HerbrandCertificate> certificate;  // nullopt means Unknown
  std::size_t instances_tried = 0;

  bool valid() const { return certificate.has_value(); }
};

/// Semi-decides validity of an equality-free sentence f: skolemizes ~f to
/// forall x. M and searches instances of ~M, ordered by total term depth
/// then lexicographically, for a propositionally valid disjunction. At most
/// `budget` instances are tried.
HerbrandResult herbrand_validity(const fol::Signature& sig, const Formula& f,
                                 std::size_t budget);

std::string format_certificate(const HerbrandCertificate& c);

enum class QfVerdict { Valid, NotValid };
std::string_view to_string(QfVerdict v);

/// Truth-table decision over the ground atoms of f. With allow_equality,
/// rows that violate congruence closure of the true equations are skipped.
QfVerdict decide_quantifier_free(const Formula& f, bool allow_equality);

/// True iff some psi and (psi -> conclusion) both occur among the premises,
/// compared up to renaming of bound variables.
bool check_mp_step(const std::vector<Formula>& premises, const Formula& conclusion);

}  // namespace logiclab::nf
