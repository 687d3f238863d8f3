#include "generators.hpp"

#include <algorithm>

namespace logiclab::testing {

prop::Sentence random_sentence(Rng& rng, const std::vector<std::string>& atoms,
                               std::size_t depth) {
  if (depth == 0 || coin(rng, 0.25)) return prop::atom(choose(rng, atoms));
  if (coin(rng, 0.2)) return prop::negate(random_sentence(rng, atoms, depth - 1));
  static const std::vector<prop::Connective> ops{prop::Connective::And, prop::Connective::Or,
                                                 prop::Connective::Implies,
                                                 prop::Connective::Iff};
  auto l = random_sentence(rng, atoms, depth - 1);
  auto r = random_sentence(rng, atoms, depth - 1);
  return prop::binary(choose(rng, ops), std::move(l), std::move(r));
}

fol::Signature small_signature() {
  fol::Signature sig;
  sig.add_relation("R", 2).add_function("f", 1);
  return sig;
}

namespace {

const std::vector<std::string> kVars{"x", "y", "z"};

fol::Term random_term(Rng& rng, const fol::Signature& sig, std::size_t depth) {
  std::vector<std::pair<std::string, std::size_t>> funs;
  std::vector<std::string> consts;
  for (const auto& [name, info] : sig.symbols()) {
    if (info.kind == fol::SymbolKind::Function) funs.emplace_back(name, info.arity);
    if (info.kind == fol::SymbolKind::Constant) consts.push_back(name);
  }
  if (depth > 0 && !funs.empty() && coin(rng, 0.3)) {
    const auto& [name, arity] = choose(rng, funs);
    std::vector<fol::Term> args;
    for (std::size_t i = 0; i < arity; ++i) args.push_back(random_term(rng, sig, depth - 1));
    return fol::apply(name, std::move(args));
  }
  if (!consts.empty() && coin(rng, 0.2)) return fol::constant(choose(rng, consts));
  return fol::var(choose(rng, kVars));
}

fol::Formula random_atom(Rng& rng, const fol::Signature& sig, bool with_equality) {
  std::vector<std::pair<std::string, std::size_t>> rels;
  for (const auto& [name, info] : sig.symbols()) {
    if (info.kind == fol::SymbolKind::Relation) rels.emplace_back(name, info.arity);
  }
  if (rels.empty() || (with_equality && coin(rng, 0.2))) {
    return fol::eq(random_term(rng, sig, 1), random_term(rng, sig, 1));
  }
  const auto& [name, arity] = choose(rng, rels);
  std::vector<fol::Term> args;
  for (std::size_t i = 0; i < arity; ++i) args.push_back(random_term(rng, sig, 1));
  return fol::rel(name, std::move(args));
}

}  // namespace

fol::Formula random_formula(Rng& rng, const fol::Signature& sig, std::size_t depth,
                            bool with_equality) {
  if (depth == 0 || coin(rng, 0.2)) return random_atom(rng, sig, with_equality);
  const std::size_t shape = pick(rng, 0, 6);
  switch (shape) {
    case 0:
      return fol::negate(random_formula(rng, sig, depth - 1, with_equality));
    case 1:
    case 2: {
      const auto kind = shape == 1 ? fol::FormulaKind::Exists : fol::FormulaKind::Forall;
      return fol::quantifier(kind, choose(rng, kVars),
                             random_formula(rng, sig, depth - 1, with_equality));
    }
    default: {
      static const std::vector<fol::FormulaKind> ops{fol::FormulaKind::And, fol::FormulaKind::Or,
                                                     fol::FormulaKind::Implies,
                                                     fol::FormulaKind::Iff};
      auto l = random_formula(rng, sig, depth - 1, with_equality);
      auto r = random_formula(rng, sig, depth - 1, with_equality);
      return fol::binary(choose(rng, ops), std::move(l), std::move(r));
    }
  }
}

fol::Formula random_sentence_fol(Rng& rng, const fol::Signature& sig, std::size_t depth,
                                 bool with_equality) {
  auto f = random_formula(rng, sig, depth, with_equality);
  for (const auto& v : fol::free_vars(f)) {
    f = fol::quantifier(coin(rng) ? fol::FormulaKind::Exists : fol::FormulaKind::Forall, v, f);
  }
  return f;
}

std::set<sat::Pair> random_partial_order(Rng& rng, std::size_t n) {
  // Edges follow a hidden permutation, so the relation is acyclic.
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coin(rng, 0.3)) r[perm[i]][perm[j]] = true;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (r[i][k] && r[k][j]) r[i][j] = true;
      }
    }
  }
  std::set<sat::Pair> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (r[i][j]) out.insert({i, j});
    }
  }
  return out;
}

std::set<sat::Pair> random_graph(Rng& rng, std::size_t vertices, double density) {
  std::set<sat::Pair> edges;
  for (std::size_t u = 0; u < vertices; ++u) {
    for (std::size_t v = u + 1; v < vertices; ++v) {
      if (coin(rng, density)) edges.insert({u, v});
    }
  }
  return edges;
}

sat::Family random_family(Rng& rng, std::size_t points, std::size_t sets,
                          std::size_t min_size) {
  sat::Family family;
  while (family.size() < sets) {
    sat::ElementSet s;
    for (std::size_t x = 0; x < points; ++x) {
      if (coin(rng, 0.4)) s.insert(x);
    }
    if (s.size() >= std::max<std::size_t>(min_size, 1)) family.push_back(std::move(s));
  }
  return family;
}

ord::Ordinal random_ordinal(Rng& rng, std::size_t height, std::size_t max_terms,
                            unsigned max_coeff) {
  if (height == 0) return ord::Ordinal::natural(pick(rng, 0, max_coeff));
  std::vector<ord::Ordinal> exps;
  const std::size_t n = pick(rng, 0, max_terms);
  for (std::size_t i = 0; i < n; ++i) {
    auto e = random_ordinal(rng, height - 1, max_terms, max_coeff);
    if (std::find(exps.begin(), exps.end(), e) == exps.end()) exps.push_back(std::move(e));
  }
  std::sort(exps.begin(), exps.end(), [](const auto& a, const auto& b) { return a > b; });
  ord::Ordinal out;
  for (const auto& e : exps) {
    out = ord::add(out, ord::Ordinal::omega_power(e, BigNat(pick(rng, 1, max_coeff))));
  }
  return out;
}

namespace {

fol::Formula delta0_rec(Rng& rng, std::vector<std::string>& scope, std::size_t depth,
                        std::size_t& fresh) {
  if (depth == 0 || coin(rng, 0.2)) {
    auto u = fol::var(choose(rng, scope));
    auto v = fol::var(choose(rng, scope));
    if (coin(rng, 0.25)) return fol::eq(u, v);
    return fol::rel(hf::kMembership, {u, v});
  }
  const std::size_t shape = pick(rng, 0, 6);
  if (shape == 0) return fol::negate(delta0_rec(rng, scope, depth - 1, fresh));
  if (shape <= 2) {
    const std::string bound = choose(rng, scope);
    const std::string x = "b" + std::to_string(fresh++);
    scope.push_back(x);
    auto body = delta0_rec(rng, scope, depth - 1, fresh);
    scope.pop_back();
    return shape == 1 ? hf::bounded_exists(x, bound, std::move(body))
                      : hf::bounded_forall(x, bound, std::move(body));
  }
  static const std::vector<fol::FormulaKind> ops{fol::FormulaKind::And, fol::FormulaKind::Or,
                                                 fol::FormulaKind::Implies, fol::FormulaKind::Iff};
  auto l = delta0_rec(rng, scope, depth - 1, fresh);
  auto r = delta0_rec(rng, scope, depth - 1, fresh);
  return fol::binary(choose(rng, ops), std::move(l), std::move(r));
}

}  // namespace

fol::Formula random_delta0(Rng& rng, const std::vector<std::string>& free, std::size_t depth) {
  std::vector<std::string> scope = free;
  std::size_t fresh = 0;
  return delta0_rec(rng, scope, depth, fresh);
}

hf::HFSet random_hfset(Rng& rng, std::size_t level) {
  if (level == 0) return hf::HFSet();
  std::vector<hf::HFSet> members;
  for (const auto& x : hf::vn_universe(level - 1)) {
    if (coin(rng, 0.4)) members.push_back(x);
  }
  return hf::HFSet::of(std::move(members));
}

}  // namespace logiclab::testing
