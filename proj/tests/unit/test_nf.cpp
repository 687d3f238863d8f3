#include "doctest.h"
#include "generators.hpp"
#include "logiclab/error.hpp"
#include "logiclab/normal_forms.hpp"
#include "oracles.hpp"

using namespace logiclab;
using namespace logiclab::nf;
using logiclab::testing::make_rng;

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

bool is_nnf(const Formula& f) {
  using K = fol::FormulaKind;
  switch (f.kind()) {
    case K::Eq:
    case K::Rel: return true;
    case K::Not: return f.child().is_atomic();
    case K::And:
    case K::Or: return is_nnf(f.left()) && is_nnf(f.right());
    case K::Exists:
    case K::Forall: return is_nnf(f.child());
    default: return false;
  }
}

bool model_exists(const Formula& f, std::size_t n) {
  bool any = false;
  testing::for_each_small_structure(n, [&](const fol::FiniteStructure& m) {
    any = testing::oracle_satisfies(m, f);
    return !any;
  });
  return any;
}

fol::Signature drinker_sig() { return fol::parse_signature("rel:P/1,rel:Q/1,rel:R/2,fun:f/1,const:c"); }

}  // namespace

TEST_CASE("NNF shape and truth on all small structures") {
  auto rng = make_rng(401);
  const auto sig = testing::small_signature();
  std::vector<Formula> fs;
  for (int i = 0; i < 25; ++i) fs.push_back(testing::random_sentence_fol(rng, sig, 4, true));
  for (const auto& f : fs) CHECK(is_nnf(to_nnf(f)));
  for (std::size_t n = 1; n <= 2; ++n) {
    testing::for_each_small_structure(n, [&](const fol::FiniteStructure& m) {
      for (const auto& f : fs) REQUIRE(testing::oracle_satisfies(m, f) == testing::oracle_satisfies(m, to_nnf(f)));
      return true;
    });
  }
}

TEST_CASE("prenex form is prenex and equivalent") {
  auto rng = make_rng(402);
  const auto sig = testing::small_signature();
  std::vector<Formula> fs;
  for (int i = 0; i < 25; ++i) fs.push_back(testing::random_sentence_fol(rng, sig, 4, true));
  for (const auto& f : fs) {
    const auto p = to_prenex(f);
    CHECK(fol::is_quantifier_free(p.matrix));
    CHECK(fol::is_sentence(p.to_formula()));
  }
  for (std::size_t n = 1; n <= 2; ++n) {
    testing::for_each_small_structure(n, [&](const fol::FiniteStructure& m) {
      for (const auto& f : fs) {
        REQUIRE(testing::oracle_satisfies(m, f) == testing::oracle_satisfies(m, to_prenex(f).to_formula()));
      }
      return true;
    });
  }
  CHECK(kind_of([&] { to_prenex(fol::parse_formula(sig, "R(x,x)")); }) == ErrorKind::NotASentence);
}

TEST_CASE("prenex renames clashing binders apart") {
  const auto sig = fol::parse_signature("rel:P/1");
  const auto p = to_prenex(fol::parse_formula(sig, "(exists x. P(x)) & (exists x. ~P(x))"));
  REQUIRE(p.prefix.size() == 2);
  CHECK(p.prefix[0].var != p.prefix[1].var);
  CHECK(to_string(p) == "exists x. exists x'. (P(x) & ~P(x'))");
}

TEST_CASE("skolemization") {
  const auto sig = fol::parse_signature("rel:R/2");
  const auto s = skolemize(sig, fol::parse_formula(sig, "forall x. exists y. R(x,y)"));
  CHECK(s.introduced == std::vector<std::string>{"sk1"});
  CHECK(s.signature.find("sk1")->arity == 1);
  CHECK(to_string(s.formula) == "forall x. R(x,sk1(x))");
  const auto t = skolemize(sig, fol::parse_formula(sig, "exists y. forall x. R(x,y)"));
  CHECK(t.signature.find("sk1")->kind == fol::SymbolKind::Constant);
  for (const auto& e : t.formula.prefix) CHECK(e.quantifier == fol::FormulaKind::Forall);
}

TEST_CASE("skolem names avoid the signature") {
  const auto sig = fol::parse_signature("rel:R/2,fun:sk1/1");
  const auto s = skolemize(sig, fol::parse_formula(sig, "forall x. exists y. R(sk1(x),y)"));
  CHECK(s.introduced == std::vector<std::string>{"sk2"});
}

TEST_CASE("skolemization preserves existence of models at sizes 1 and 2") {
  auto rng = make_rng(403);
  const auto sig = testing::small_signature();
  for (int i = 0; i < 20; ++i) {
    const auto f = testing::random_sentence_fol(rng, sig, 4, true);
    const auto s = skolemize(sig, f);
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto found = fol::find_model(s.signature, n, s.formula.to_formula());
      REQUIRE(found.has_value() == model_exists(f, n));
      if (found) {
        // The reduct of a model of the Skolem form is a model of f.
        CHECK(testing::oracle_satisfies(fol::reduct(*found, sig), f));
      }
    }
  }
}

TEST_CASE("Herbrand universe") {
  const auto u = herbrand_universe(fol::parse_signature("fun:f/1"), 2);
  REQUIRE(u.size() == 3);
  CHECK(fol::to_string(u[0]) == "c0");
  CHECK(fol::to_string(u[2]) == "f(f(c0))");
  const auto v = herbrand_universe(fol::parse_signature("const:a,const:b,fun:g/2"), 1);
  CHECK(v.size() == 6);
}

TEST_CASE("Herbrand certifies the drinker sentence") {
  const auto sig = drinker_sig();
  const auto r = herbrand_validity(sig, fol::parse_formula(sig, "exists x. (P(x) -> forall y. P(y))"), 50);
  REQUIRE(r.valid());
  CHECK(prop::classify(r.certificate->tautology) == prop::Classification::Validity);
  CHECK(r.certificate->instances.size() <= r.instances_tried);
  CHECK_FALSE(format_certificate(*r.certificate).empty());
}

TEST_CASE("Herbrand never certifies a sentence with a small countermodel") {
  auto rng = make_rng(404);
  const auto sig = testing::small_signature();
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    const auto f = testing::random_sentence_fol(rng, sig, 3, false);
    if (!model_exists(fol::negate(f), 2)) continue;
    ++checked;
    CHECK_FALSE(herbrand_validity(sig, f, 20).valid());
  }
  CHECK(checked > 10);
  CHECK(kind_of([&] { herbrand_validity(sig, fol::parse_formula(sig, "forall x. x = x"), 5); }) ==
        ErrorKind::EqualityPresent);
}

TEST_CASE("quantifier-free decision") {
  const auto sig = fol::parse_signature("rel:P/1,fun:f/1,const:a,const:b");
  CHECK(decide_quantifier_free(fol::parse_formula(sig, "P(a) | ~P(a)"), false) == QfVerdict::Valid);
  CHECK(decide_quantifier_free(fol::parse_formula(sig, "P(a) -> P(b)"), false) == QfVerdict::NotValid);
  const auto cong = fol::parse_formula(sig, "a = b -> (P(f(a)) -> P(f(b)))");
  CHECK(decide_quantifier_free(cong, true) == QfVerdict::Valid);
  CHECK(decide_quantifier_free(cong, false) == QfVerdict::NotValid);
  CHECK(decide_quantifier_free(fol::parse_formula(sig, "a = a"), true) == QfVerdict::Valid);
  CHECK(to_string(QfVerdict::Valid) == "VALID");
}

TEST_CASE("modus ponens steps") {
  const auto sig = fol::parse_signature("rel:P/1,const:c,const:d");
  const auto a = fol::parse_formula(sig, "forall x. P(x)");
  const auto imp = fol::parse_formula(sig, "(forall y. P(y)) -> P(c)");
  CHECK(check_mp_step({a, imp}, fol::parse_formula(sig, "P(c)")));
  CHECK_FALSE(check_mp_step({imp}, fol::parse_formula(sig, "P(c)")));
  CHECK_FALSE(check_mp_step({a, imp}, fol::parse_formula(sig, "P(d)")));
}
