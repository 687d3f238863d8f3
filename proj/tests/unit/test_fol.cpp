#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "generators.hpp"
#include "logiclab/error.hpp"
#include "logiclab/fol.hpp"
#include "oracles.hpp"

using namespace logiclab;
using namespace logiclab::fol;
using logiclab::testing::make_rng;
using logiclab::testing::pick;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Io;
}

Signature sig_full() {
  Signature s;
  s.add_relation("R", 2).add_relation("P", 1).add_function("f", 1).add_function("g", 2).add_constant(
      "c");
  return s;
}

// A random structure for sig_full.
FiniteStructure random_structure(testing::Rng& rng, std::size_t size) {
  FiniteStructure m;
  m.size = size;
  m.signature = sig_full();
  for (std::size_t a = 0; a < size; ++a) {
    if (testing::coin(rng)) m.relations["P"].insert({a});
    for (std::size_t b = 0; b < size; ++b) {
      if (testing::coin(rng)) m.relations["R"].insert({a, b});
    }
  }
  m.relations["P"];
  m.relations["R"];
  for (std::size_t a = 0; a < size; ++a) m.functions["f"].push_back(pick(rng, 0, size - 1));
  for (std::size_t a = 0; a < size * size; ++a) m.functions["g"].push_back(pick(rng, 0, size - 1));
  m.constants["c"] = pick(rng, 0, size - 1);
  return m;
}

}  // namespace

TEST_CASE("signature text round-trips") {
  const auto s = parse_signature("rel:R/2,fun:f/1,const:c");
  CHECK(s.find("R")->arity == 2);
  CHECK(s.find("f")->kind == SymbolKind::Function);
  CHECK(s.find("c")->kind == SymbolKind::Constant);
  CHECK(parse_signature(to_string(s)) == s);
  CHECK(parse_signature("").symbols().empty());
  CHECK(parse_signature("rel:R").find("R")->arity == 0);
  CHECK(kind_of([] { parse_signature("rel:R/x"); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_signature("rel:R/99999999999999999999"); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_signature("pred:R/1"); }) == ErrorKind::InvalidInput);
  CHECK(sig_full().includes(s));
  CHECK_FALSE(s.includes(sig_full()));
}

TEST_CASE("formula printing round-trips") {
  auto rng = make_rng(301);
  const auto sig = sig_full();
  for (int i = 0; i < 300; ++i) {
    const auto f = testing::random_formula(rng, sig, 5, true);
    CHECK(parse_formula(sig, to_string(f)) == f);
  }
}

TEST_CASE("parser shapes") {
  const auto sig = sig_full();
  const auto scoped = parse_formula(sig, "exists x. P(x) | P(c)");
  CHECK(scoped.kind() == FormulaKind::Or);
  CHECK(scoped.left().kind() == FormulaKind::Exists);
  CHECK(to_string(parse_formula(sig, "forall x. (P(x) -> R(x, f(x)))")) ==
        "forall x. (P(x) -> R(x,f(x)))");
  CHECK(parse_formula(sig, "g(x,c) = y").kind() == FormulaKind::Eq);
  CHECK(kind_of([&] { parse_formula(sig, "R(x)"); }) == ErrorKind::ArityMismatch);
  CHECK(kind_of([&] { parse_formula(sig, "Q(x)"); }) == ErrorKind::UnknownSymbol);
  CHECK(kind_of([&] { parse_formula(sig, "P(x) &"); }) == ErrorKind::Syntax);
}

TEST_CASE("free variables and sentences") {
  const auto sig = sig_full();
  const auto f = parse_formula(sig, "forall x. R(x,y) & exists y. P(y)");
  CHECK(free_vars(f) == std::set<std::string>{"y"});
  CHECK(all_vars(f) == std::set<std::string>{"x", "y"});
  CHECK_FALSE(is_sentence(f));
  CHECK(is_sentence(parse_formula(sig, "forall y. P(y)")));
  CHECK(quantifier_depth(parse_formula(sig, "forall x. exists y. R(x,y)")) == 2);
}

TEST_CASE("satisfaction agrees with the reference evaluator") {
  auto rng = make_rng(302);
  const auto sig = sig_full();
  for (int i = 0; i < 400; ++i) {
    const auto m = random_structure(rng, pick(rng, 1, 3));
    const auto f = testing::random_sentence_fol(rng, sig, 4, true);
    CHECK(satisfies(m, f) == testing::oracle_satisfies(m, f));
  }
}

TEST_CASE("satisfaction needs every free variable") {
  FiniteStructure m;
  m.size = 2;
  m.signature = parse_signature("rel:R/2");
  m.relations["R"] = {{0, 1}};
  const auto f = parse_formula(m.signature, "R(x,y)");
  CHECK(kind_of([&] { satisfies(m, f, {{"x", 0}}); }) == ErrorKind::UncoveredVariable);
  CHECK(satisfies(m, f, {{"x", 0}, {"y", 1}}));
}

TEST_CASE("substitution is capture-avoiding") {
  const auto sig = sig_full();
  const auto f = parse_formula(sig, "exists y. R(x,y)");
  const auto g = substitute(f, "x", var("y"));
  CHECK(to_string(g) == "exists y'. R(y,y')");
  CHECK(free_vars(g) == std::set<std::string>{"y"});
  // Bound occurrences are left alone.
  CHECK(substitute(parse_formula(sig, "forall x. P(x)"), "x", constant("c")) ==
        parse_formula(sig, "forall x. P(x)"));
  CHECK(fresh_name("x", {"x", "x'"}) == "x''");
}

TEST_CASE("substitution lemma on random instances") {
  // M |= f[t/v] under a  iff  M |= f under a[v := value of t].
  auto rng = make_rng(303);
  const auto sig = sig_full();
  for (int i = 0; i < 300; ++i) {
    const auto m = random_structure(rng, pick(rng, 1, 3));
    const auto f = testing::random_formula(rng, sig, 4, true);
    const Term t = testing::coin(rng) ? apply("f", {var("y")}) : apply("g", {var("x"), var("z")});
    testing::OracleEnv a{{"x", pick(rng, 0, m.size - 1)},
                         {"y", pick(rng, 0, m.size - 1)},
                         {"z", pick(rng, 0, m.size - 1)}};
    Assignment lib(a.begin(), a.end());
    const auto lhs = satisfies(m, substitute(f, "x", t), lib);
    auto b = a;
    b["x"] = evaluate(m, t, lib);
    CHECK(lhs == testing::oracle_satisfies(m, f, b));
  }
}

TEST_CASE("alpha equivalence") {
  const auto sig = sig_full();
  CHECK(alpha_equivalent(parse_formula(sig, "forall x. R(x,c)"), parse_formula(sig, "forall y. R(y,c)")));
  CHECK_FALSE(alpha_equivalent(parse_formula(sig, "forall x. R(x,y)"),
                               parse_formula(sig, "forall y. R(y,y)")));
}

TEST_CASE("isomorphism") {
  auto rng = make_rng(304);
  for (int i = 0; i < 60; ++i) {
    const auto m = random_structure(rng, pick(rng, 1, 5));
    std::vector<Element> perm(m.size);
    std::iota(perm.begin(), perm.end(), Element{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto image = permute(m, perm);
    CHECK(is_isomorphism(m, image, perm));
    const auto j = find_isomorphism(m, image);
    REQUIRE(j.has_value());
    CHECK(is_isomorphism(m, image, *j));
    // Isomorphic structures agree on sentences.
    const auto f = testing::random_sentence_fol(rng, sig_full(), 3, true);
    CHECK(satisfies(m, f) == satisfies(image, f));
  }
  FiniteStructure a;
  a.size = 2;
  a.signature = parse_signature("rel:P/1");
  a.relations["P"] = {{0}};
  auto b = a;
  b.relations["P"] = {{0}, {1}};
  CHECK_FALSE(find_isomorphism(a, b).has_value());
}

TEST_CASE("reduct drops symbols and keeps truth") {
  auto rng = make_rng(305);
  const auto m = random_structure(rng, 3);
  const auto sub = parse_signature("rel:R/2,fun:f/1");
  const auto r = reduct(m, sub);
  CHECK(r.signature == sub);
  CHECK(r.functions.count("g") == 0);
  for (int i = 0; i < 50; ++i) {
    const auto f = testing::random_sentence_fol(rng, sub, 3, true);
    CHECK(satisfies(m, f) == satisfies(r, f));
  }
  CHECK(kind_of([&] { reduct(m, parse_signature("rel:Q/1")); }) == ErrorKind::NotASubsignature);
}

TEST_CASE("theories") {
  FiniteStructure m;
  m.size = 3;
  m.signature = parse_signature("rel:L/2");
  m.relations["L"] = {{0, 1}, {0, 2}, {1, 2}};
  const std::vector<Formula> order{
      parse_formula(m.signature, "forall x. ~L(x,x)"),
      parse_formula(m.signature, "forall x. forall y. forall z. (L(x,y) & L(y,z) -> L(x,z))"),
      parse_formula(m.signature, "forall x. forall y. (L(x,y) | x = y | L(y,x))")};
  CHECK(models_theory(m, order).holds);
  m.relations["L"].erase({0, 2});
  const auto check = models_theory(m, order);
  CHECK_FALSE(check.holds);
  CHECK(check.failing == std::optional<std::size_t>(1));
}

TEST_CASE("structure enumeration counts") {
  CHECK(for_each_structure(parse_signature("rel:R/2"), 2, [](const auto&) { return true; }) == 16);
  CHECK(for_each_structure(parse_signature("rel:R/2,fun:f/1"), 2, [](const auto&) { return true; }) ==
        64);
  CHECK(for_each_structure(parse_signature("const:c,rel:P/1"), 3, [](const auto&) { return true; }) ==
        24);
  std::uint64_t ours = 0;
  testing::for_each_small_structure(3, [&](const auto&) { return ++ours, true; });
  CHECK(ours == for_each_structure(testing::small_signature(), 3, [](const auto&) { return true; }));
}

TEST_CASE("lazy model search finds models exactly when enumeration does") {
  auto rng = make_rng(306);
  const auto sig = testing::small_signature();
  for (int i = 0; i < 40; ++i) {
    const auto f = testing::random_sentence_fol(rng, sig, 4, true);
    for (std::size_t n = 1; n <= 2; ++n) {
      bool any = false;
      testing::for_each_small_structure(n, [&](const FiniteStructure& m) {
        any = testing::oracle_satisfies(m, f);
        return !any;
      });
      const auto found = find_model(sig, n, f);
      REQUIRE(found.has_value() == any);
      if (found) CHECK(testing::oracle_satisfies(*found, f));
    }
  }
}

TEST_CASE("structure text format") {
  const auto m = parse_structure(
      "size 3\n# comment\nrel R arity 2\n0 1\n1 2\nfun f arity 1\n0 -> 1\n1 -> 2\n2 -> 0\nconst c = 2\n");
  CHECK(m.size == 3);
  CHECK(m.holds("R", {1, 2}));
  CHECK(m.apply("f", {2}) == 0);
  CHECK(m.constants.at("c") == 2);
  CHECK(parse_structure(format_structure(m)) == m);
  CHECK(kind_of([] { parse_structure("size 2\nfun f arity 1\n0 -> 1\n"); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_structure("size 2\nconst c = 5\n"); }) == ErrorKind::OutOfRange);
}
