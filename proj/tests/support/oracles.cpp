#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace logiclab::testing {

bool oracle_eval(const prop::Sentence& s, const std::map<std::string, bool>& e) {
  const auto& v = s.node().value;
  if (const auto* a = std::get_if<prop::AtomNode>(&v)) return e.at(a->name);
  if (const auto* n = std::get_if<prop::NegationNode>(&v)) return !oracle_eval(n->operand, e);
  const auto& b = std::get<prop::BinaryNode>(v);
  const bool l = oracle_eval(b.left, e);
  const bool r = oracle_eval(b.right, e);
  switch (b.op) {
    case prop::Connective::And: return l && r;
    case prop::Connective::Or: return l || r;
    case prop::Connective::Implies: return !l || r;
    case prop::Connective::Iff: return l == r;
  }
  throw std::logic_error("unreachable");
}

namespace {
void collect_atoms(const prop::Sentence& s, std::set<std::string>& out) {
  const auto& v = s.node().value;
  if (const auto* a = std::get_if<prop::AtomNode>(&v)) {
    out.insert(a->name);
  } else if (const auto* n = std::get_if<prop::NegationNode>(&v)) {
    collect_atoms(n->operand, out);
  } else {
    const auto& b = std::get<prop::BinaryNode>(v);
    collect_atoms(b.left, out);
    collect_atoms(b.right, out);
  }
}

bool is_literal(const prop::Sentence& s) {
  const auto& v = s.node().value;
  if (std::holds_alternative<prop::AtomNode>(v)) return true;
  if (const auto* n = std::get_if<prop::NegationNode>(&v)) {
    return std::holds_alternative<prop::AtomNode>(n->operand.node().value);
  }
  return false;
}

bool is_conjunction_of_literals(const prop::Sentence& s) {
  if (is_literal(s)) return true;
  const auto* b = std::get_if<prop::BinaryNode>(&s.node().value);
  return b && b->op == prop::Connective::And && is_conjunction_of_literals(b->left) &&
         is_conjunction_of_literals(b->right);
}
}  // namespace

std::vector<std::string> oracle_atoms(const prop::Sentence& s) {
  std::set<std::string> out;
  collect_atoms(s, out);
  return {out.begin(), out.end()};
}

bool oracle_equivalent(const prop::Sentence& a, const prop::Sentence& b) {
  std::set<std::string> names;
  collect_atoms(a, names);
  collect_atoms(b, names);
  const std::vector<std::string> atoms(names.begin(), names.end());
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << atoms.size()); ++row) {
    std::map<std::string, bool> e;
    for (std::size_t i = 0; i < atoms.size(); ++i) e[atoms[i]] = (row >> i) & 1;
    if (oracle_eval(a, e) != oracle_eval(b, e)) return false;
  }
  return true;
}

bool oracle_is_dnf(const prop::Sentence& s) {
  if (is_conjunction_of_literals(s)) return true;
  const auto* b = std::get_if<prop::BinaryNode>(&s.node().value);
  return b && b->op == prop::Connective::Or && oracle_is_dnf(b->left) && oracle_is_dnf(b->right);
}

// ---------------------------------------------------------------------------

bool brute_linear_extension(std::size_t n, const std::set<sat::Pair>& pairs) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  do {
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    bool ok = true;
    for (const auto& [a, b] : pairs) ok = ok && pos[a] < pos[b];
    if (ok) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

bool brute_coloring(std::size_t vertices, const std::set<sat::Pair>& edges, std::size_t k) {
  if (vertices == 0) return true;
  if (k == 0) return false;
  std::vector<std::size_t> c(vertices, 0);
  while (true) {
    bool ok = true;
    for (const auto& [u, v] : edges) ok = ok && c[u] != c[v];
    if (ok) return true;
    std::size_t i = 0;
    while (i < vertices && ++c[i] == k) c[i++] = 0;
    if (i == vertices) return false;
  }
}

namespace {
bool sdr_from(const sat::Family& family, std::size_t i, std::set<sat::Element>& used) {
  if (i == family.size()) return true;
  for (auto x : family[i]) {
    if (used.count(x)) continue;
    used.insert(x);
    if (sdr_from(family, i + 1, used)) return true;
    used.erase(x);
  }
  return false;
}
}  // namespace

bool brute_transversal(const sat::Family& family) {
  std::set<sat::Element> used;
  return sdr_from(family, 0, used);
}

bool brute_exact_cover(std::size_t points, const sat::Family& family) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << family.size()); ++mask) {
    std::vector<int> hits(points, 0);
    for (std::size_t i = 0; i < family.size(); ++i) {
      if ((mask >> i) & 1) {
        for (auto x : family[i]) ++hits[x];
      }
    }
    if (std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; })) return true;
  }
  return false;
}

bool brute_splitting(const sat::Family& family) {
  std::set<sat::Element> universe;
  for (const auto& s : family) universe.insert(s.begin(), s.end());
  const std::vector<sat::Element> u(universe.begin(), universe.end());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << u.size()); ++mask) {
    std::set<sat::Element> y;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if ((mask >> i) & 1) y.insert(u[i]);
    }
    bool ok = true;
    for (const auto& s : family) {
      std::size_t in = 0;
      for (auto x : s) in += y.count(x);
      ok = ok && in > 0 && in < s.size();
    }
    if (ok) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t eval_term(const fol::FiniteStructure& m, const fol::Term& t, const OracleEnv& env) {
  switch (t.kind()) {
    case fol::TermKind::Var: return env.at(t.name());
    case fol::TermKind::Const: return m.constants.at(t.name());
    case fol::TermKind::Apply: {
      std::size_t index = 0;
      for (const auto& a : t.args()) index = index * m.size + eval_term(m, a, env);
      return m.functions.at(t.name()).at(index);
    }
  }
  throw std::logic_error("unreachable");
}

bool sat_rec(const fol::FiniteStructure& m, const fol::Formula& f, OracleEnv& env) {
  using K = fol::FormulaKind;
  switch (f.kind()) {
    case K::Eq: return eval_term(m, f.terms()[0], env) == eval_term(m, f.terms()[1], env);
    case K::Rel: {
      fol::Tuple args;
      for (const auto& t : f.terms()) args.push_back(eval_term(m, t, env));
      const auto it = m.relations.find(f.name());
      return it != m.relations.end() && it->second.count(args) > 0;
    }
    case K::Not: return !sat_rec(m, f.child(), env);
    case K::And: return sat_rec(m, f.left(), env) && sat_rec(m, f.right(), env);
    case K::Or: return sat_rec(m, f.left(), env) || sat_rec(m, f.right(), env);
    case K::Implies: return !sat_rec(m, f.left(), env) || sat_rec(m, f.right(), env);
    case K::Iff: return sat_rec(m, f.left(), env) == sat_rec(m, f.right(), env);
    case K::Exists:
    case K::Forall: {
      const bool want = f.kind() == K::Exists;
      const auto saved = env.find(f.name()) == env.end()
                             ? std::optional<std::size_t>()
                             : std::optional<std::size_t>(env[f.name()]);
      bool result = !want;
      for (std::size_t a = 0; a < m.size; ++a) {
        env[f.name()] = a;
        if (sat_rec(m, f.child(), env) == want) {
          result = want;
          break;
        }
      }
      if (saved) {
        env[f.name()] = *saved;
      } else {
        env.erase(f.name());
      }
      return result;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

bool oracle_satisfies(const fol::FiniteStructure& m, const fol::Formula& f, OracleEnv env) {
  return sat_rec(m, f, env);
}

void for_each_small_structure(std::size_t size,
                              const std::function<bool(const fol::FiniteStructure&)>& visit) {
  fol::FiniteStructure m;
  m.size = size;
  m.signature.add_relation("R", 2).add_function("f", 1);
  const std::uint64_t rel_count = std::uint64_t{1} << (size * size);
  std::uint64_t fun_count = 1;
  for (std::size_t i = 0; i < size; ++i) fun_count *= size;
  for (std::uint64_t r = 0; r < rel_count; ++r) {
    std::set<fol::Tuple> rel;
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = 0; b < size; ++b) {
        if ((r >> (a * size + b)) & 1) rel.insert({a, b});
      }
    }
    m.relations["R"] = rel;
    for (std::uint64_t fcode = 0; fcode < fun_count; ++fcode) {
      std::vector<std::size_t> table(size);
      std::uint64_t c = fcode;
      for (std::size_t a = 0; a < size; ++a) {
        table[a] = c % size;
        c /= size;
      }
      m.functions["f"] = table;
      if (!visit(m)) return;
    }
  }
}

// ---------------------------------------------------------------------------

std::vector<hf::HFSet> transitive_closure(const std::vector<hf::HFSet>& roots) {
  std::set<hf::HFSet> seen;
  std::vector<hf::HFSet> stack = roots;
  while (!stack.empty()) {
    hf::HFSet x = stack.back();
    stack.pop_back();
    if (!seen.insert(x).second) continue;
    for (const auto& y : x.elements()) stack.push_back(y);
  }
  return {seen.begin(), seen.end()};
}

bool naive_delta0(const fol::Formula& f, const hf::Environment& env) {
  std::vector<hf::HFSet> roots;
  for (const auto& [name, set] : env) roots.push_back(set);
  const auto universe = transitive_closure(roots);
  fol::FiniteStructure m;
  m.size = universe.size();
  m.signature.add_relation(hf::kMembership, 2);
  auto& e = m.relations[hf::kMembership];
  for (std::size_t i = 0; i < universe.size(); ++i) {
    for (std::size_t j = 0; j < universe.size(); ++j) {
      const auto& ys = universe[j].elements();
      if (std::find(ys.begin(), ys.end(), universe[i]) != ys.end()) e.insert({i, j});
    }
  }
  OracleEnv a;
  for (const auto& [name, set] : env) {
    a[name] = static_cast<std::size_t>(
        std::find(universe.begin(), universe.end(), set) - universe.begin());
  }
  return oracle_satisfies(m, f, a);
}

// ---------------------------------------------------------------------------

std::optional<std::uint64_t> brute_crt(const std::vector<std::uint64_t>& moduli,
                                       const std::vector<std::uint64_t>& residues) {
  std::uint64_t product = 1;
  for (auto m : moduli) product *= m;
  for (std::uint64_t x = 0; x < product; ++x) {
    bool ok = true;
    for (std::size_t i = 0; i < moduli.size() && ok; ++i) ok = x % moduli[i] == residues[i];
    if (ok) return x;
  }
  return std::nullopt;
}

ParityRun parity_by_hand(const std::string& word) {
  const auto ones = std::count(word.begin(), word.end(), '1');
  return {ones % 2 == 0 ? "1" : "", word.size() + 1};
}

}  // namespace logiclab::testing
