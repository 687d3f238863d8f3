#include <algorithm>

#include "doctest.h"
#include "generators.hpp"
#include "logiclab/error.hpp"
#include "logiclab/prop.hpp"
#include "oracles.hpp"

using namespace logiclab;
using namespace logiclab::prop;
using logiclab::testing::make_rng;

namespace {

std::vector<bool> column(const std::string& src) {
  std::vector<bool> out;
  for (const auto& row : truth_table(parse(src))) out.push_back(row.value);
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("connective truth tables, rows FF FT TF TT") {
  CHECK(column("A & B") == std::vector<bool>{false, false, false, true});
  CHECK(column("A | B") == std::vector<bool>{false, true, true, true});
  CHECK(column("A -> B") == std::vector<bool>{true, true, false, true});
  CHECK(column("A <-> B") == std::vector<bool>{true, false, false, true});
  CHECK(column("~A") == std::vector<bool>{true, false});
}

TEST_CASE("truth table row order puts the first atom most significant") {
  const auto rows = truth_table(parse("B -> A"));
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].assignment.at("A") == false);
  CHECK(rows[1].assignment.at("B") == true);
  CHECK(rows[2].assignment.at("A") == true);
}

TEST_CASE("parser precedence and associativity") {
  CHECK(to_string(parse("A & B | C")) == "((A & B) | C)");
  CHECK(to_string(parse("A -> B -> C")) == "(A -> (B -> C))");
  CHECK(to_string(parse("A <-> B <-> C")) == "(A <-> (B <-> C))");
  CHECK(to_string(parse("A | B | C")) == "((A | B) | C)");
  CHECK(to_string(parse("~~A & B")) == "(~~A & B)");
  CHECK(to_string(parse("A -> B <-> C")) == "((A -> B) <-> C)");
}

TEST_CASE("parse errors carry offsets") {
  try {
    parse("A & (B | )");
    FAIL("accepted");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 9);
  }
  CHECK(kind_of([] { parse("A $ B"); }) == ErrorKind::UnknownOperator);
  CHECK(kind_of([] { parse(""); }) == ErrorKind::Syntax);
  CHECK(kind_of([] { parse("(A"); }) == ErrorKind::Syntax);
}

TEST_CASE("printing round-trips random sentences") {
  auto rng = make_rng(101);
  const std::vector<std::string> names{"A", "B", "C", "P1", "q_2"};
  for (int i = 0; i < 300; ++i) {
    const auto s = testing::random_sentence(rng, names, 6);
    CHECK(parse(to_string(s)) == s);
  }
}

TEST_CASE("evaluate agrees with the reference evaluator") {
  auto rng = make_rng(102);
  const std::vector<std::string> names{"A", "B", "C", "D"};
  for (int i = 0; i < 300; ++i) {
    const auto s = testing::random_sentence(rng, names, 5);
    Evaluation e;
    for (const auto& n : names) e[n] = testing::coin(rng);
    CHECK(evaluate(s, e) == testing::oracle_eval(s, e));
  }
  CHECK(kind_of([] { evaluate(parse("A & B"), {{"A", true}}); }) == ErrorKind::MissingAtom);
}

TEST_CASE("classification") {
  CHECK(classify(parse("A | ~A")) == Classification::Validity);
  CHECK(classify(parse("A & ~A")) == Classification::Contradiction);
  CHECK(classify(parse("A -> B")) == Classification::Contingent);
  CHECK(classify(parse("((A -> B) -> A) -> A")) == Classification::Validity);
  CHECK(to_string(Classification::Contingent) == "CONTINGENT");
}

TEST_CASE("equivalence matches the reference") {
  auto rng = make_rng(103);
  const std::vector<std::string> names{"A", "B", "C"};
  for (int i = 0; i < 200; ++i) {
    const auto a = testing::random_sentence(rng, names, 3);
    const auto b = testing::random_sentence(rng, names, 3);
    CHECK(equivalent(a, b) == testing::oracle_equivalent(a, b));
  }
  CHECK(equivalent(parse("A -> B"), parse("~B -> ~A")));
  CHECK(equivalent(parse("A"), parse("A & (B | ~B)")));
}

TEST_CASE("DNF is grammatical and equivalent") {
  auto rng = make_rng(104);
  const std::vector<std::string> names{"A", "B", "C", "D"};
  for (int i = 0; i < 300; ++i) {
    const auto s = testing::random_sentence(rng, names, 5);
    const auto d = to_dnf(s);
    CHECK(testing::oracle_is_dnf(d));
    CHECK(is_dnf(d));
    CHECK(testing::oracle_equivalent(s, d));
  }
  CHECK(to_string(to_dnf(parse("B & ~B"))) == "(B & ~B)");
  CHECK_FALSE(is_dnf(parse("A & (B | C)")));
  CHECK_FALSE(is_dnf(parse("~~A")));
  CHECK(is_dnf(parse("A | ~B & C")));
}

TEST_CASE("guards") {
  std::string big = "A0";
  for (int i = 1; i <= static_cast<int>(kMaxTableAtoms); ++i) big += " & A" + std::to_string(i);
  CHECK(kind_of([&] { truth_table(parse(big)); }) == ErrorKind::TooManyAtoms);
  CHECK(kind_of([] { enumerate_truth_functions(kMaxEnumerateArity + 1); }) == ErrorKind::ArityGuard);
}

TEST_CASE("truth function census") {
  CHECK(enumerate_truth_functions(0).size() == 2);
  CHECK(enumerate_truth_functions(1).size() == 4);
  const auto twos = enumerate_truth_functions(2);
  REQUIRE(twos.size() == 16);
  CHECK(twos.front().table == std::vector<bool>(4, false));
  CHECK(twos[1].table == std::vector<bool>{false, false, false, true});
  CHECK(twos.back().table == std::vector<bool>(4, true));
  std::vector<TruthFunction> sole;
  for (const auto& f : twos) {
    if (is_adequate({f}, 2)) sole.push_back(f);
  }
  REQUIRE(sole.size() == 2);
  CHECK(std::find(sole.begin(), sole.end(), functions::nor()) != sole.end());
  CHECK(std::find(sole.begin(), sole.end(), functions::nand()) != sole.end());
}

TEST_CASE("adequacy of familiar bases") {
  using namespace functions;
  CHECK(is_adequate({negation(), conjunction()}, 3));
  CHECK(is_adequate({negation(), implication()}, 3));
  CHECK_FALSE(is_adequate({conjunction(), disjunction()}, 2));
  CHECK_FALSE(is_adequate({negation(), biconditional()}, 2));
  CHECK_FALSE(is_adequate({implication()}, 2));
}

TEST_CASE("truth_function_of respects argument order") {
  const auto f = truth_function_of(parse("A -> B"), {"A", "B"});
  CHECK(f == functions::implication());
  const auto g = truth_function_of(parse("A -> B"), {"B", "A"});
  CHECK(g.table == std::vector<bool>{true, false, true, true});
  CHECK(f({true, false}) == false);
}
