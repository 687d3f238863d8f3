#include "logiclab/normal_forms.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "logiclab/error.hpp"
#include "logiclab/sat.hpp"

namespace logiclab::nf {

using fol::FormulaKind;
using fol::TermKind;

namespace {

Formula nnf_of(const Formula& f, bool negated) {
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Rel: return negated ? fol::negate(f) : f;
    case FormulaKind::Not: return nnf_of(f.child(), !negated);
    case FormulaKind::And:
    case FormulaKind::Or: {
      const bool is_and = (f.kind() == FormulaKind::And) != negated;
      Formula l = nnf_of(f.left(), negated);
      Formula r = nnf_of(f.right(), negated);
      return is_and ? fol::conj(l, r) : fol::disj(l, r);
    }
    case FormulaKind::Implies:
      if (negated) return fol::conj(nnf_of(f.left(), false), nnf_of(f.right(), true));
      return fol::disj(nnf_of(f.left(), true), nnf_of(f.right(), false));
    case FormulaKind::Iff: {
      // (A & B) | (~A & ~B), and its negation (A & ~B) | (~A & B).
      Formula a = nnf_of(f.left(), false);
      Formula na = nnf_of(f.left(), true);
      Formula b = nnf_of(f.right(), false);
      Formula nb = nnf_of(f.right(), true);
      if (negated) return fol::disj(fol::conj(a, nb), fol::conj(na, b));
      return fol::disj(fol::conj(a, b), fol::conj(na, nb));
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      const bool ex = (f.kind() == FormulaKind::Exists) != negated;
      return fol::quantifier(ex ? FormulaKind::Exists : FormulaKind::Forall, f.name(),
                             nnf_of(f.child(), negated));
    }
  }
  return f;
}

Term rename_term(const Term& t, const std::map<std::string, std::string>& env) {
  if (t.kind() == TermKind::Var) {
    auto it = env.find(t.name());
    return it == env.end() ? t : fol::var(it->second);
  }
  if (t.kind() == TermKind::Const) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(rename_term(a, env));
  return fol::apply(t.name(), std::move(args));
}

// Gives every binder a distinct name; the first binder of a name keeps it.
Formula rename_apart(const Formula& f, const std::map<std::string, std::string>& env,
                     std::set<std::string>& used, const std::set<std::string>& reserved) {
  if (f.is_atomic()) {
    std::vector<Term> terms;
    for (const auto& t : f.terms()) terms.push_back(rename_term(t, env));
    if (f.kind() == FormulaKind::Eq) return fol::eq(terms[0], terms[1]);
    return fol::rel(f.name(), std::move(terms));
  }
  if (f.kind() == FormulaKind::Not) return fol::negate(rename_apart(f.child(), env, used, reserved));
  if (f.is_binary()) {
    Formula l = rename_apart(f.left(), env, used, reserved);
    Formula r = rename_apart(f.right(), env, used, reserved);
    return fol::binary(f.kind(), std::move(l), std::move(r));
  }
  std::set<std::string> taken = used;
  taken.insert(reserved.begin(), reserved.end());
  const std::string name = used.count(f.name()) ? fol::fresh_name(f.name(), taken) : f.name();
  used.insert(name);
  auto inner = env;
  inner[f.name()] = name;
  return fol::quantifier(f.kind(), name, rename_apart(f.child(), inner, used, reserved));
}

void pull(const Formula& f, std::vector<PrefixEntry>& prefix, Formula& matrix) {
  if (f.is_quantifier()) {
    prefix.push_back({f.kind(), f.name()});
    pull(f.child(), prefix, matrix);
    return;
  }
  if (f.kind() == FormulaKind::And || f.kind() == FormulaKind::Or) {
    Formula l = f.left(), r = f.right();
    pull(f.left(), prefix, l);
    pull(f.right(), prefix, r);
    matrix = fol::binary(f.kind(), l, r);
    return;
  }
  matrix = f;
}

void require_sentence(const Formula& f) {
  if (!fol::is_sentence(f)) {
    std::string names;
    for (const auto& v : fol::free_vars(f)) names += (names.empty() ? "" : ", ") + v;
    throw Error(ErrorKind::NotASentence, "formula has free variables: " + names);
  }
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf_of(f, false); }

Formula PrenexFormula::to_formula() const {
  Formula out = matrix;
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    out = fol::quantifier(it->quantifier, it->var, out);
  }
  return out;
}

std::string to_string(const PrenexFormula& p) { return fol::to_string(p.to_formula()); }

PrenexFormula to_prenex(const Formula& f) {
  require_sentence(f);
  std::set<std::string> used;
  const Formula apart = rename_apart(to_nnf(f), {}, used, fol::all_vars(f));
  PrenexFormula out{{}, apart};
  pull(apart, out.prefix, out.matrix);
  return out;
}

SkolemForm skolemize(const fol::Signature& sig, const Formula& f) {
  require_sentence(f);
  SkolemForm out{to_prenex(f), sig, {}};
  const fol::Signature used = fol::symbols_of(f);
  for (const auto& [name, info] : used.symbols()) {
    const fol::SymbolInfo* mine = out.signature.find(name);
    if (mine && !(*mine == info)) {
      throw Error(ErrorKind::ArityMismatch, "'" + name + "' used inconsistently with signature");
    }
    if (!mine) {
      switch (info.kind) {
        case fol::SymbolKind::Relation: out.signature.add_relation(name, info.arity); break;
        case fol::SymbolKind::Function: out.signature.add_function(name, info.arity); break;
        case fol::SymbolKind::Constant: out.signature.add_constant(name); break;
      }
    }
  }

  std::vector<PrefixEntry> universals;
  Formula matrix = out.formula.matrix;
  std::size_t counter = 0;
  for (const auto& entry : out.formula.prefix) {
    if (entry.quantifier == FormulaKind::Forall) {
      universals.push_back(entry);
      continue;
    }
    std::string name;
    do {
      name = "sk" + std::to_string(++counter);
    } while (out.signature.contains(name));
    Term witness = fol::constant(name);
    if (universals.empty()) {
      out.signature.add_constant(name);
    } else {
      std::vector<Term> args;
      for (const auto& u : universals) args.push_back(fol::var(u.var));
      out.signature.add_function(name, args.size());
      witness = fol::apply(name, std::move(args));
    }
    out.introduced.push_back(name);
    matrix = fol::substitute(matrix, entry.var, witness);
  }
  out.formula = PrenexFormula{universals, matrix};
  return out;
}

std::vector<Term> herbrand_universe(const fol::Signature& sig, std::size_t depth) {
  std::vector<std::vector<Term>> levels(1);
  std::vector<std::pair<std::string, std::size_t>> functions;
  std::set<std::string> names;
  for (const auto& [name, info] : sig.symbols()) {
    names.insert(name);
    if (info.kind == fol::SymbolKind::Constant) levels[0].push_back(fol::constant(name));
    if (info.kind == fol::SymbolKind::Function) functions.emplace_back(name, info.arity);
  }
  if (levels[0].empty()) levels[0].push_back(fol::constant(fol::fresh_name("c0", names)));
  std::sort(levels[0].begin(), levels[0].end(),
            [](const Term& a, const Term& b) { return fol::to_string(a) < fol::to_string(b); });

  std::vector<Term> below = levels[0];  // all terms of depth < d
  for (std::size_t d = 1; d <= depth && !functions.empty(); ++d) {
    std::vector<Term> level;
    for (const auto& [name, arity] : functions) {
      // Odometer over argument tuples from `below`, keeping those with at
      // least one argument of depth d-1.
      std::vector<std::size_t> idx(arity, 0);
      while (true) {
        std::vector<Term> args;
        bool fresh = false;
        for (std::size_t i : idx) {
          args.push_back(below[i]);
          fresh = fresh || fol::depth(below[i]) == d - 1;
        }
        if (fresh) level.push_back(fol::apply(name, std::move(args)));
        std::size_t k = arity;
        while (k > 0 && idx[k - 1] + 1 == below.size()) idx[--k] = 0;
        if (k == 0) break;
        ++idx[k - 1];
      }
    }
    std::sort(level.begin(), level.end(),
              [](const Term& a, const Term& b) { return fol::to_string(a) < fol::to_string(b); });
    below.insert(below.end(), level.begin(), level.end());
    levels.push_back(std::move(level));
  }
  std::vector<Term> out;
  for (const auto& l : levels) out.insert(out.end(), l.begin(), l.end());
  return out;
}

// ---------------------------------------------------------------------------
// Herbrand expansion

namespace {

class Skeleton {
 public:
  prop::Sentence translate(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Eq:
      case FormulaKind::Rel: {
        const std::string key = fol::to_string(f);
        auto it = names_.find(key);
        if (it == names_.end()) {
          const std::string name = "A" + std::to_string(names_.size() + 1);
          it = names_.emplace(key, name).first;
          legend_.emplace_back(name, f);
        }
        return prop::atom(it->second);
      }
      case FormulaKind::Not: return prop::negate(translate(f.child()));
      case FormulaKind::And: return prop::conj(translate(f.left()), translate(f.right()));
      case FormulaKind::Or: return prop::disj(translate(f.left()), translate(f.right()));
      case FormulaKind::Implies: return prop::implies(translate(f.left()), translate(f.right()));
      case FormulaKind::Iff: return prop::iff(translate(f.left()), translate(f.right()));
      default: break;
    }
    throw Error(ErrorKind::InvalidInput, "quantifier in a ground instance");
  }

  std::vector<std::string> atoms() const {
    std::vector<std::string> out;
    for (const auto& [name, f] : legend_) out.push_back(name);
    return out;
  }
  const std::vector<std::pair<std::string, Formula>>& legend() const { return legend_; }

 private:
  std::map<std::string, std::string> names_;
  std::vector<std::pair<std::string, Formula>> legend_;
};

// Yields k-tuples of universe indices with nondecreasing total depth,
// lexicographic within one total depth. The universe grows on demand.
class TupleEnumerator {
 public:
  TupleEnumerator(fol::Signature sig, std::size_t k) : sig_(std::move(sig)), k_(k) {
    has_functions_ = std::any_of(sig_.symbols().begin(), sig_.symbols().end(), [](const auto& kv) {
      return kv.second.kind == fol::SymbolKind::Function;
    });
    grow(0);
  }

  std::optional<std::vector<Term>> next() {
    while (true) {
      if (queue_pos_ < queue_.size()) {
        std::vector<Term> out;
        for (std::size_t i : queue_[queue_pos_]) out.push_back(universe_[i]);
        ++queue_pos_;
        return out;
      }
      if (k_ == 0) {
        if (total_ > 0) return std::nullopt;
        queue_.push_back({});
        ++total_;
        continue;
      }
      if (!has_functions_ && total_ > 0) return std::nullopt;
      fill(total_++);
    }
  }

 private:
  void grow(std::size_t depth) {
    if (depth + 1 <= by_depth_.size()) return;
    universe_ = herbrand_universe(sig_, depth);
    by_depth_.assign(depth + 1, {});
    for (std::size_t i = 0; i < universe_.size(); ++i) {
      by_depth_[fol::depth(universe_[i])].push_back(i);
    }
  }

  void fill(std::size_t total) {
    grow(total);
    queue_.clear();
    queue_pos_ = 0;
    std::vector<std::size_t> depths(k_, 0);
    compositions(total, 0, depths);
    std::sort(queue_.begin(), queue_.end());
  }

  void compositions(std::size_t remaining, std::size_t pos, std::vector<std::size_t>& depths) {
    if (pos + 1 == k_) {
      depths[pos] = remaining;
      expand(depths, 0, {});
      return;
    }
    for (std::size_t d = 0; d <= remaining; ++d) {
      depths[pos] = d;
      compositions(remaining - d, pos + 1, depths);
    }
  }

  void expand(const std::vector<std::size_t>& depths, std::size_t pos, std::vector<std::size_t> acc) {
    if (pos == k_) {
      queue_.push_back(std::move(acc));
      return;
    }
    for (std::size_t i : by_depth_[depths[pos]]) {
      auto next = acc;
      next.push_back(i);
      expand(depths, pos + 1, std::move(next));
    }
  }

  fol::Signature sig_;
  std::size_t k_;
  bool has_functions_ = false;
  std::vector<Term> universe_;
  std::vector<std::vector<std::size_t>> by_depth_;
  std::vector<std::vector<std::size_t>> queue_;
  std::size_t queue_pos_ = 0;
  std::size_t total_ = 0;
};

}  // namespace

HerbrandResult herbrand_validity(const fol::Signature& sig, const Formula& f, std::size_t budget) {
  require_sentence(f);
  if (fol::has_equality(f)) {
    throw Error(ErrorKind::EqualityPresent,
                "Herbrand expansion is only offered for equality-free sentences");
  }
  const SkolemForm sk = skolemize(sig, fol::negate(f));
  const Formula psi = fol::negate(sk.formula.matrix);
  std::vector<std::string> vars;
  for (const auto& e : sk.formula.prefix) vars.push_back(e.var);

  TupleEnumerator tuples(sk.signature, vars.size());
  Skeleton skeleton;
  sat::Problem refutation;
  HerbrandResult result;
  std::vector<std::vector<Term>> instances;
  std::optional<prop::Sentence> disjunction;

  while (result.instances_tried < budget) {
    auto tuple = tuples.next();
    if (!tuple) break;
    ++result.instances_tried;
    Formula instance = psi;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      instance = fol::substitute(instance, vars[i], (*tuple)[i]);
    }
    const prop::Sentence piece = skeleton.translate(instance);
    instances.push_back(*tuple);
    disjunction = disjunction ? prop::disj(*disjunction, piece) : piece;

    // The disjunction is valid iff the conjunction of negated pieces is UNSAT.
    refutation.atoms = skeleton.atoms();
    refutation.constraints.push_back(prop::negate(piece));
    if (!sat::solve(refutation)) {
      result.certificate = HerbrandCertificate{vars, instances, *disjunction, skeleton.legend()};
      return result;
    }
  }
  return result;
}

std::string format_certificate(const HerbrandCertificate& c) {
  std::ostringstream out;
  for (std::size_t i = 0; i < c.instances.size(); ++i) {
    out << "instance " << (i + 1) << ":";
    if (c.variables.empty()) out << " (no variables)";
    for (std::size_t k = 0; k < c.variables.size(); ++k) {
      out << (k ? ", " : " ") << c.variables[k] << " := " << fol::to_string(c.instances[i][k]);
    }
    out << "\n";
  }
  for (const auto& [name, atom] : c.legend) out << name << " = " << fol::to_string(atom) << "\n";
  out << "tautology: " << prop::to_string(c.tautology) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Quantifier-free decision

std::string_view to_string(QfVerdict v) { return v == QfVerdict::Valid ? "VALID" : "NOT VALID"; }

namespace {

void ground_atoms(const Formula& f, std::vector<Formula>& out, std::set<std::string>& seen) {
  if (f.is_quantifier()) {
    throw Error(ErrorKind::InvalidInput, "formula must be quantifier-free");
  }
  if (f.is_atomic()) {
    for (const auto& t : f.terms()) {
      if (!fol::is_ground(t)) {
        throw Error(ErrorKind::InvalidInput, "formula must be variable-free");
      }
    }
    if (seen.insert(fol::to_string(f)).second) out.push_back(f);
    return;
  }
  if (f.kind() == FormulaKind::Not) return ground_atoms(f.child(), out, seen);
  ground_atoms(f.left(), out, seen);
  ground_atoms(f.right(), out, seen);
}

class Congruence {
 public:
  explicit Congruence(const std::vector<Formula>& atoms) {
    for (const auto& a : atoms) {
      for (const auto& t : a.terms()) add(t);
    }
  }

  std::size_t id(const Term& t) const { return ids_.at(fol::to_string(t)); }

  // Closure of the given equations; returns the class representative map.
  std::vector<std::size_t> close(const std::vector<std::pair<std::size_t, std::size_t>>& eqs) const {
    std::vector<std::size_t> parent(terms_.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [a, b] : eqs) parent[find(a)] = find(b);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < terms_.size(); ++i) {
        for (std::size_t j = i + 1; j < terms_.size(); ++j) {
          if (find(i) == find(j) || heads_[i] != heads_[j] || args_[i].empty() ||
              args_[i].size() != args_[j].size()) {
            continue;
          }
          bool same = true;
          for (std::size_t k = 0; k < args_[i].size() && same; ++k) {
            same = find(args_[i][k]) == find(args_[j][k]);
          }
          if (same) {
            parent[find(i)] = find(j);
            changed = true;
          }
        }
      }
    }
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = find(i);
    return parent;
  }

 private:
  std::size_t add(const Term& t) {
    const std::string key = fol::to_string(t);
    if (auto it = ids_.find(key); it != ids_.end()) return it->second;
    std::vector<std::size_t> args;
    for (const auto& a : t.args()) args.push_back(add(a));
    const std::size_t id = terms_.size();
    ids_.emplace(key, id);
    terms_.push_back(t);
    heads_.push_back(t.name());
    args_.push_back(std::move(args));
    return id;
  }

  std::map<std::string, std::size_t> ids_;
  std::vector<Term> terms_;
  std::vector<std::string> heads_;
  std::vector<std::vector<std::size_t>> args_;
};

bool eval_ground(const Formula& f, const std::map<std::string, bool>& value) {
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Rel: return value.at(fol::to_string(f));
    case FormulaKind::Not: return !eval_ground(f.child(), value);
    case FormulaKind::And: return eval_ground(f.left(), value) && eval_ground(f.right(), value);
    case FormulaKind::Or: return eval_ground(f.left(), value) || eval_ground(f.right(), value);
    case FormulaKind::Implies: return !eval_ground(f.left(), value) || eval_ground(f.right(), value);
    case FormulaKind::Iff: return eval_ground(f.left(), value) == eval_ground(f.right(), value);
    default: break;
  }
  return false;
}

}  // namespace

QfVerdict decide_quantifier_free(const Formula& f, bool allow_equality) {
  std::vector<Formula> atoms;
  std::set<std::string> seen;
  ground_atoms(f, atoms, seen);
  if (atoms.size() > prop::kMaxTableAtoms) {
    throw Error(ErrorKind::TooManyAtoms, "formula has " + std::to_string(atoms.size()) +
                                             " ground atoms; the limit is " +
                                             std::to_string(prop::kMaxTableAtoms));
  }
  const Congruence cc(atoms);
  std::map<std::string, bool> value;
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << atoms.size()); ++row) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      value[fol::to_string(atoms[i])] = (row >> (atoms.size() - 1 - i)) & 1U;
    }
    if (allow_equality) {
      std::vector<std::pair<std::size_t, std::size_t>> eqs;
      for (const auto& a : atoms) {
        if (a.kind() == FormulaKind::Eq && value[fol::to_string(a)]) {
          eqs.emplace_back(cc.id(a.terms()[0]), cc.id(a.terms()[1]));
        }
      }
      const auto rep = cc.close(eqs);
      auto key = [&](const Formula& a) {
        std::string k = a.kind() == FormulaKind::Eq ? "=" : a.name();
        for (const auto& t : a.terms()) k += " " + std::to_string(rep[cc.id(t)]);
        return k;
      };
      bool consistent = true;
      std::map<std::string, bool> by_class;
      for (const auto& a : atoms) {
        const bool v = value[fol::to_string(a)];
        if (a.kind() == FormulaKind::Eq) {
          const bool merged = rep[cc.id(a.terms()[0])] == rep[cc.id(a.terms()[1])];
          if (merged != v) consistent = false;
          continue;
        }
        auto [it, fresh] = by_class.emplace(key(a), v);
        if (!fresh && it->second != v) consistent = false;
      }
      if (!consistent) continue;
    }
    if (!eval_ground(f, value)) return QfVerdict::NotValid;
  }
  return QfVerdict::Valid;
}

bool check_mp_step(const std::vector<Formula>& premises, const Formula& conclusion) {
  for (const auto& imp : premises) {
    if (imp.kind() != FormulaKind::Implies) continue;
    if (!fol::alpha_equivalent(imp.right(), conclusion)) continue;
    for (const auto& p : premises) {
      if (fol::alpha_equivalent(p, imp.left())) return true;
    }
  }
  return false;
}

}  // namespace logiclab::nf
