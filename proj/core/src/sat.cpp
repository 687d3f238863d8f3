#include "logiclab/sat.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <sstream>

#include "logiclab/error.hpp"

namespace logiclab::sat {

namespace {

std::string name2(char prefix, std::size_t a, std::size_t b) {
  return std::string(1, prefix) + "_" + std::to_string(a) + "_" +
         std::to_string(b);
}
std::string name1(char prefix, std::size_t a) {
  return std::string(1, prefix) + "_" + std::to_string(a);
}

prop::Sentence big_or(std::vector<prop::Sentence> parts) {
  prop::Sentence out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = prop::disj(out, parts[i]);
  return out;
}

prop::Sentence not_both(const std::string& a, const std::string& b) {
  return prop::negate(prop::conj(prop::atom(a), prop::atom(b)));
}

// Kleene three-valued evaluation over atom indices.
constexpr signed char kFalse = 0, kTrue = 1, kUnknown = 2;

class Compiled {
 public:
  Compiled(const prop::Sentence& s, const std::map<std::string, std::size_t>& index) {
    root_ = build(s, index);
  }

  signed char eval(const std::vector<signed char>& values) const {
    return eval_node(root_, values);
  }

 private:
  struct Op {
    int kind;
    prop::Connective op;
    std::size_t atom, left, right;
  };

  std::size_t build(const prop::Sentence& s,
                    const std::map<std::string, std::size_t>& index) {
    if (s.is_atom()) {
      ops_.push_back({0, prop::Connective::And, index.at(s.name()), 0, 0});
    } else if (s.is_negation()) {
      std::size_t c = build(s.operand(), index);
      ops_.push_back({1, prop::Connective::And, 0, c, 0});
    } else {
      std::size_t l = build(s.left(), index);
      std::size_t r = build(s.right(), index);
      ops_.push_back({2, s.connective(), 0, l, r});
    }
    return ops_.size() - 1;
  }

  static signed char neg(signed char v) {
    return v == kUnknown ? kUnknown : static_cast<signed char>(1 - v);
  }
  static signed char both(signed char a, signed char b) {
    if (a == kFalse || b == kFalse) return kFalse;
    if (a == kTrue && b == kTrue) return kTrue;
    return kUnknown;
  }
  static signed char either(signed char a, signed char b) {
    if (a == kTrue || b == kTrue) return kTrue;
    if (a == kFalse && b == kFalse) return kFalse;
    return kUnknown;
  }

  signed char eval_node(std::size_t i, const std::vector<signed char>& v) const {
    const Op& o = ops_[i];
    if (o.kind == 0) return v[o.atom];
    if (o.kind == 1) return neg(eval_node(o.left, v));
    const signed char a = eval_node(o.left, v);
    const signed char b = eval_node(o.right, v);
    switch (o.op) {
      case prop::Connective::And: return both(a, b);
      case prop::Connective::Or: return either(a, b);
      case prop::Connective::Implies: return either(neg(a), b);
      case prop::Connective::Iff:
        if (a == kUnknown || b == kUnknown) return kUnknown;
        return a == b ? kTrue : kFalse;
    }
    return kUnknown;
  }

  std::vector<Op> ops_;
  std::size_t root_ = 0;
};

struct Search {
  std::vector<Compiled> constraints;
  std::vector<signed char> values;
  std::uint64_t fuel;

  // kTrue: all constraints hold, kFalse: one fails, kUnknown: undecided.
  signed char status() const {
    signed char overall = kTrue;
    for (const auto& c : constraints) {
      const signed char v = c.eval(values);
      if (v == kFalse) return kFalse;
      if (v == kUnknown) overall = kUnknown;
    }
    return overall;
  }

  bool dfs(std::size_t next) {
    if (fuel == 0) {
      throw Error(ErrorKind::FuelExhausted,
                  "backtracking solver ran out of fuel");
    }
    --fuel;
    const signed char st = status();
    if (st == kFalse) return false;
    if (st == kTrue) {
      for (std::size_t i = next; i < values.size(); ++i) values[i] = kTrue;
      return true;
    }
    if (next == values.size()) return false;
    for (signed char choice : {kTrue, kFalse}) {
      values[next] = choice;
      if (dfs(next + 1)) return true;
    }
    values[next] = kUnknown;
    return false;
  }
};

void check_family_nonempty_sets(const Family& family) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].empty()) {
      throw Error(ErrorKind::EmptySet,
                  "set " + std::to_string(i) + " of the family is empty");
    }
  }
}

}  // namespace

void validate(const Problem& p) {
  std::set<std::string> declared(p.atoms.begin(), p.atoms.end());
  if (declared.size() != p.atoms.size()) {
    throw Error(ErrorKind::InvalidInput, "duplicate atom in problem");
  }
  for (const auto& c : p.constraints) {
    for (const auto& a : prop::atoms(c)) {
      if (!declared.count(a)) {
        throw Error(ErrorKind::InvalidInput,
                    "constraint mentions undeclared atom '" + a + "'");
      }
    }
  }
}

std::optional<Witness> solve(const Problem& p, const SolveOptions& options) {
  validate(p);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < p.atoms.size(); ++i) index[p.atoms[i]] = i;
  const std::size_t n = p.atoms.size();

  std::vector<Compiled> compiled;
  compiled.reserve(p.constraints.size());
  for (const auto& c : p.constraints) compiled.emplace_back(c, index);

  auto to_witness = [&](const std::vector<signed char>& values) {
    Witness w;
    for (std::size_t i = 0; i < n; ++i) w[p.atoms[i]] = values[i] == kTrue;
    return w;
  };

  if (options.mode == SolveMode::Exhaustive) {
    if (n > kMaxExhaustiveAtoms) {
      throw Error(ErrorKind::TooManyAtoms,
                  "exhaustive mode supports at most " +
                      std::to_string(kMaxExhaustiveAtoms) + " atoms");
    }
    std::vector<signed char> values(n);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      for (std::size_t i = 0; i < n; ++i) {
        values[i] = static_cast<signed char>((bits >> (n - 1 - i)) & 1U);
      }
      const bool ok = std::all_of(compiled.begin(), compiled.end(),
                                  [&](const Compiled& c) {
                                    return c.eval(values) == kTrue;
                                  });
      if (ok) return to_witness(values);
    }
    return std::nullopt;
  }

  Search search{std::move(compiled), std::vector<signed char>(n, kUnknown),
                options.fuel};
  if (search.dfs(0)) return to_witness(search.values);
  return std::nullopt;
}

bool satisfies_all(const Problem& p, const Witness& w) {
  return std::all_of(p.constraints.begin(), p.constraints.end(),
                     [&](const prop::Sentence& c) { return prop::evaluate(c, w); });
}

// ---------------------------------------------------------------------------
// Encoders

Problem encode_linear_extension(std::size_t n, const std::set<Pair>& pairs) {
  for (const auto& [a, b] : pairs) {
    if (a >= n || b >= n) {
      throw Error(ErrorKind::OutOfRange, "pair (" + std::to_string(a) + "," +
                                             std::to_string(b) +
                                             ") outside 0.." +
                                             std::to_string(n));
    }
    if (a == b) {
      throw Error(ErrorKind::NotAPartialOrder,
                  "strict order is not irreflexive at " + std::to_string(a));
    }
    if (pairs.count({b, a})) {
      throw Error(ErrorKind::NotAPartialOrder,
                  "antisymmetry violated by " + std::to_string(a) + " and " +
                      std::to_string(b));
    }
  }
  for (const auto& [a, b] : pairs) {
    for (const auto& [c, d] : pairs) {
      if (b == c && !pairs.count({a, d})) {
        throw Error(ErrorKind::NotAPartialOrder,
                    "transitivity fails: missing (" + std::to_string(a) + "," +
                        std::to_string(d) + ")");
      }
    }
  }

  Problem p;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) p.atoms.push_back(name2('P', a, b));
  }
  auto P = [](std::size_t a, std::size_t b) { return prop::atom(name2('P', a, b)); };
  for (std::size_t a = 0; a < n; ++a) p.constraints.push_back(P(a, a));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      p.constraints.push_back(prop::negate(prop::conj(P(a, b), P(b, a))));
      p.constraints.push_back(prop::disj(P(a, b), P(b, a)));
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (a == b || b == c || a == c) continue;
        p.constraints.push_back(
            prop::implies(prop::conj(P(a, b), P(b, c)), P(a, c)));
      }
    }
  }
  for (const auto& [a, b] : pairs) p.constraints.push_back(P(a, b));
  p.tag = LinearExtensionTag{n, pairs};
  return p;
}

Problem encode_coloring(std::size_t vertices, const std::set<Pair>& edges,
                        std::size_t k) {
  std::set<Pair> closed;
  for (const auto& [u, v] : edges) {
    if (u >= vertices || v >= vertices) {
      throw Error(ErrorKind::OutOfRange, "edge (" + std::to_string(u) + "," +
                                             std::to_string(v) +
                                             ") outside the vertex set");
    }
    if (u == v) {
      throw Error(ErrorKind::InvalidInput,
                  "graph has a loop at vertex " + std::to_string(u));
    }
    closed.insert({u, v});
    closed.insert({v, u});
  }
  if (vertices > 0 && k == 0) {
    throw Error(ErrorKind::InvalidInput, "number of colors must be positive");
  }

  Problem p;
  for (std::size_t v = 0; v < vertices; ++v) {
    for (std::size_t c = 0; c < k; ++c) p.atoms.push_back(name2('C', v, c));
  }
  for (std::size_t v = 0; v < vertices; ++v) {
    std::vector<prop::Sentence> some;
    for (std::size_t c = 0; c < k; ++c) some.push_back(prop::atom(name2('C', v, c)));
    p.constraints.push_back(big_or(std::move(some)));
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t d = c + 1; d < k; ++d) {
        p.constraints.push_back(not_both(name2('C', v, c), name2('C', v, d)));
      }
    }
  }
  for (const auto& [u, v] : closed) {
    if (u > v) continue;
    for (std::size_t c = 0; c < k; ++c) {
      p.constraints.push_back(not_both(name2('C', u, c), name2('C', v, c)));
    }
  }
  p.tag = ColoringTag{vertices, closed, k};
  return p;
}

Problem encode_transversal(const Family& family) {
  check_family_nonempty_sets(family);
  Problem p;
  for (std::size_t i = 0; i < family.size(); ++i) {
    std::vector<prop::Sentence> some;
    for (Element x : family[i]) {
      p.atoms.push_back(name2('F', i, x));
      some.push_back(prop::atom(name2('F', i, x)));
    }
    p.constraints.push_back(big_or(std::move(some)));
    for (auto x = family[i].begin(); x != family[i].end(); ++x) {
      for (auto y = std::next(x); y != family[i].end(); ++y) {
        p.constraints.push_back(not_both(name2('F', i, *x), name2('F', i, *y)));
      }
    }
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      for (Element x : family[i]) {
        if (family[j].count(x)) {
          p.constraints.push_back(not_both(name2('F', i, x), name2('F', j, x)));
        }
      }
    }
  }
  p.tag = TransversalTag{family};
  return p;
}

Problem encode_exact_cover(std::size_t points, const Family& family) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (Element x : family[i]) {
      if (x >= points) {
        throw Error(ErrorKind::OutOfRange,
                    "set " + std::to_string(i) + " contains point " +
                        std::to_string(x) + " outside 0.." +
                        std::to_string(points));
      }
    }
  }
  Problem p;
  for (std::size_t i = 0; i < family.size(); ++i) p.atoms.push_back(name1('S', i));
  for (Element x = 0; x < points; ++x) {
    std::vector<prop::Sentence> hits;
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (family[i].count(x)) hits.push_back(prop::atom(name1('S', i)));
    }
    if (hits.empty()) {
      // No set covers x: record the unsatisfiable requirement explicitly.
      const std::string bottom = name1('X', x);
      p.atoms.push_back(bottom);
      p.constraints.push_back(
          prop::conj(prop::atom(bottom), prop::negate(prop::atom(bottom))));
    } else {
      p.constraints.push_back(big_or(std::move(hits)));
    }
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const bool meet = std::any_of(family[i].begin(), family[i].end(),
                                    [&](Element x) { return family[j].count(x) > 0; });
      if (meet) p.constraints.push_back(not_both(name1('S', i), name1('S', j)));
    }
  }
  p.tag = ExactCoverTag{points, family};
  return p;
}

Problem encode_splitting(const Family& family) {
  check_family_nonempty_sets(family);
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].size() < 2) {
      throw Error(ErrorKind::SingletonSet,
                  "set " + std::to_string(i) +
                      " is a singleton and cannot be split");
    }
  }
  ElementSet universe;
  for (const auto& z : family) universe.insert(z.begin(), z.end());
  Problem p;
  for (Element x : universe) p.atoms.push_back(name1('Y', x));
  for (const auto& z : family) {
    std::vector<prop::Sentence> in, out;
    for (Element x : z) {
      in.push_back(prop::atom(name1('Y', x)));
      out.push_back(prop::negate(prop::atom(name1('Y', x))));
    }
    p.constraints.push_back(prop::conj(big_or(std::move(in)), big_or(std::move(out))));
  }
  p.tag = SplittingTag{family};
  return p;
}

// ---------------------------------------------------------------------------
// Decoding

namespace {
bool truth(const Witness& w, const std::string& atom) {
  auto it = w.find(atom);
  return it != w.end() && it->second;
}
}  // namespace

Decoded decode_witness(const Problem& p, const Witness& w) {
  for (const auto& a : p.atoms) {
    if (!w.count(a)) {
      throw Error(ErrorKind::UnsatisfyingWitness,
                  "witness does not assign atom '" + a + "'");
    }
  }
  if (!satisfies_all(p, w)) {
    throw Error(ErrorKind::UnsatisfyingWitness,
                "witness violates a constraint of the problem");
  }
  return std::visit(
      [&](const auto& tag) -> Decoded {
        using T = std::decay_t<decltype(tag)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          throw Error(ErrorKind::InvalidInput,
                      "problem carries no encoder tag to decode against");
        } else if constexpr (std::is_same_v<T, LinearExtensionTag>) {
          std::vector<std::pair<std::size_t, Element>> rank;
          for (Element a = 0; a < tag.n; ++a) {
            std::size_t below = 0;
            for (Element b = 0; b < tag.n; ++b) below += truth(w, name2('P', b, a));
            rank.emplace_back(below, a);
          }
          std::sort(rank.begin(), rank.end());
          LinearOrder out;
          for (const auto& [r, a] : rank) out.order.push_back(a);
          return out;
        } else if constexpr (std::is_same_v<T, ColoringTag>) {
          Coloring out;
          for (std::size_t v = 0; v < tag.vertices; ++v) {
            for (std::size_t c = 0; c < tag.colors; ++c) {
              if (truth(w, name2('C', v, c))) {
                out.colors.push_back(c);
                break;
              }
            }
          }
          return out;
        } else if constexpr (std::is_same_v<T, TransversalTag>) {
          ChoiceFunction out;
          for (std::size_t i = 0; i < tag.family.size(); ++i) {
            for (Element x : tag.family[i]) {
              if (truth(w, name2('F', i, x))) {
                out.choices.push_back(x);
                break;
              }
            }
          }
          return out;
        } else if constexpr (std::is_same_v<T, ExactCoverTag>) {
          Subfamily out;
          for (std::size_t i = 0; i < tag.family.size(); ++i) {
            if (truth(w, name1('S', i))) out.indices.push_back(i);
          }
          return out;
        } else {
          SplittingSet out;
          for (const auto& z : tag.family) {
            for (Element x : z) {
              if (truth(w, name1('Y', x))) out.members.insert(x);
            }
          }
          return out;
        }
      },
      p.tag);
}

// ---------------------------------------------------------------------------
// Direct checks

bool is_linear_extension(std::size_t n, const std::set<Pair>& pairs,
                         const std::vector<Element>& order) {
  if (order.size() != n) return false;
  std::vector<std::size_t> position(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i] >= n || position[order[i]] != n) return false;
    position[order[i]] = i;
  }
  return std::all_of(pairs.begin(), pairs.end(), [&](const Pair& ab) {
    return position[ab.first] < position[ab.second];
  });
}

bool is_proper_coloring(std::size_t vertices, const std::set<Pair>& edges,
                        std::size_t k, const std::vector<std::size_t>& colors) {
  if (colors.size() != vertices) return false;
  if (std::any_of(colors.begin(), colors.end(), [&](std::size_t c) { return c >= k; })) {
    return false;
  }
  return std::all_of(edges.begin(), edges.end(), [&](const Pair& e) {
    return colors[e.first] != colors[e.second];
  });
}

bool is_transversal(const Family& family, const std::vector<Element>& choices) {
  if (choices.size() != family.size()) return false;
  std::set<Element> used;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!family[i].count(choices[i])) return false;
    if (!used.insert(choices[i]).second) return false;
  }
  return true;
}

bool is_exact_cover(std::size_t points, const Family& family,
                    const std::vector<std::size_t>& indices) {
  std::vector<int> hits(points, 0);
  for (std::size_t i : indices) {
    if (i >= family.size()) return false;
    for (Element x : family[i]) {
      if (x >= points) return false;
      ++hits[x];
    }
  }
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

bool splits(const Family& family, const ElementSet& y) {
  return std::all_of(family.begin(), family.end(), [&](const ElementSet& z) {
    bool inside = false, outside = false;
    for (Element x : z) (y.count(x) ? inside : outside) = true;
    return inside && outside;
  });
}

// ---------------------------------------------------------------------------
// Instance files

namespace {

struct LineReader {
  std::istream& in;
  std::size_t number = 0;

  // Next non-blank line with comments stripped; false at EOF.
  bool next(std::string& out) {
    std::string line;
    while (std::getline(in, line)) {
      ++number;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      const auto last = line.find_last_not_of(" \t\r");
      out = line.substr(first, last - first + 1);
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::InvalidInput,
                "instance line " + std::to_string(number) + ": " + what);
  }

  std::vector<std::size_t> naturals(const std::string& line) const {
    std::vector<std::size_t> out;
    if (line == "{}") return out;
    std::istringstream ss(line);
    std::string word;
    while (ss >> word) {
      if (word.find_first_not_of("0123456789") != std::string::npos) {
        fail("expected natural numbers, got '" + word + "'");
      }
      out.push_back(std::stoull(word));
    }
    return out;
  }
};

}  // namespace

Problem read_instance(std::istream& in) {
  LineReader reader{in};
  std::string line;
  if (!reader.next(line)) reader.fail("missing instance kind");
  const std::string kind = line;
  auto sizes = [&](std::size_t expected) {
    std::string s;
    if (!reader.next(s)) reader.fail("missing size line");
    auto v = reader.naturals(s);
    if (v.size() != expected) {
      reader.fail("expected " + std::to_string(expected) + " size value(s)");
    }
    return v;
  };
  auto read_pairs = [&] {
    std::set<Pair> pairs;
    std::string s;
    while (reader.next(s)) {
      auto v = reader.naturals(s);
      if (v.size() != 2) reader.fail("expected a pair 'i j'");
      pairs.insert({v[0], v[1]});
    }
    return pairs;
  };
  auto read_family = [&](std::size_t count) {
    Family family;
    std::string s;
    for (std::size_t i = 0; i < count; ++i) {
      if (!reader.next(s)) reader.fail("family has fewer sets than declared");
      auto v = reader.naturals(s);
      family.emplace_back(v.begin(), v.end());
    }
    if (reader.next(s)) reader.fail("family has more sets than declared");
    return family;
  };

  if (kind == "order") {
    const auto n = sizes(1)[0];
    return encode_linear_extension(n, read_pairs());
  }
  if (kind == "color") {
    const auto s = sizes(2);
    return encode_coloring(s[0], read_pairs(), s[1]);
  }
  if (kind == "transversal") {
    return encode_transversal(read_family(sizes(1)[0]));
  }
  if (kind == "exactcover") {
    const auto s = sizes(2);
    return encode_exact_cover(s[0], read_family(s[1]));
  }
  if (kind == "split") {
    return encode_splitting(read_family(sizes(1)[0]));
  }
  reader.fail("unknown instance kind '" + kind +
              "' (expected order|color|transversal|exactcover|split)");
}

Problem parse_instance(const std::string& text) {
  std::istringstream in(text);
  return read_instance(in);
}

std::string format_witness(const Witness& w) {
  std::string out;
  for (const auto& [name, value] : w) {
    out += name + "=" + (value ? "T" : "F") + "\n";
  }
  return out;
}

Witness parse_witness(const std::string& text) {
  std::istringstream in(text);
  Witness w;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line.erase(std::remove_if(line.begin(), line.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               line.end());
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string name = line.substr(0, eq);
    const std::string value = eq == std::string::npos ? "" : line.substr(eq + 1);
    if (!prop::is_valid_atom_name(name) || (value != "T" && value != "F")) {
      throw Error(ErrorKind::InvalidInput,
                  "witness line " + std::to_string(lineno) + ": expected name=T or name=F");
    }
    w[name] = value == "T";
  }
  return w;
}

std::string format_decoded(const Decoded& d) {
  std::ostringstream out;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, LinearOrder>) {
          out << "order=";
          for (std::size_t i = 0; i < v.order.size(); ++i) {
            out << (i ? " < " : "") << v.order[i];
          }
          out << "\n";
        } else if constexpr (std::is_same_v<T, Coloring>) {
          for (std::size_t i = 0; i < v.colors.size(); ++i) {
            out << "color[" << i << "]=" << v.colors[i] << "\n";
          }
        } else if constexpr (std::is_same_v<T, ChoiceFunction>) {
          for (std::size_t i = 0; i < v.choices.size(); ++i) {
            out << "choice[" << i << "]=" << v.choices[i] << "\n";
          }
        } else if constexpr (std::is_same_v<T, Subfamily>) {
          out << "cover=";
          for (std::size_t i = 0; i < v.indices.size(); ++i) {
            out << (i ? " " : "") << v.indices[i];
          }
          out << "\n";
        } else {
          out << "split={";
          bool first = true;
          for (Element x : v.members) {
            out << (first ? "" : ",") << x;
            first = false;
          }
          out << "}\n";
        }
      },
      d);
  return out.str();
}

}  // namespace logiclab::sat
