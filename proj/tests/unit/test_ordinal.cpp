#include <algorithm>

#include "doctest.h"
#include "generators.hpp"
#include "logiclab/error.hpp"
#include "logiclab/ordinal.hpp"

using namespace logiclab;
using namespace logiclab::ord;
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

Ordinal o(const char* s) { return parse_ordinal(s); }
const Ordinal w = Ordinal::omega();

}  // namespace

TEST_CASE("parse and print") {
  CHECK(to_string(o("w^w*2 + w + 3")) == "w^w*2 + w + 3");
  CHECK(to_string(o("w^{w+1}")) == "w^{w + 1}");
  CHECK(to_string(o("w^(w^w)")) == "w^{w^w}");
  CHECK(to_string(Ordinal()) == "0");
  CHECK(o("3 + w") == w);  // absorbed
  CHECK(o("w + w") == o("w*2"));
  CHECK(kind_of([] { parse_ordinal("w^"); }) == ErrorKind::Syntax);
  auto rng = make_rng(501);
  for (int i = 0; i < 300; ++i) {
    const auto a = testing::random_ordinal(rng, 3);
    CHECK(parse_ordinal(to_string(a)) == a);
  }
}

TEST_CASE("finite ordinals are naturals") {
  for (std::uint64_t a = 0; a < 8; ++a) {
    for (std::uint64_t b = 0; b < 8; ++b) {
      const auto A = Ordinal::natural(a), B = Ordinal::natural(b);
      CHECK(add(A, B).to_natural() == a + b);
      CHECK(mul(A, B).to_natural() == a * b);
      CHECK(pow(A, B).to_natural() == boost::multiprecision::pow(BigNat(a), static_cast<unsigned>(b)));
      CHECK((compare(A, B) < 0) == (a < b));
      if (b > 0) {
        const auto [q, r] = divmod(A, B);
        CHECK(q.to_natural() == a / b);
        CHECK(r.to_natural() == a % b);
      }
    }
  }
}

TEST_CASE("non-commutativity") {
  CHECK(add(Ordinal::natural(1), w) == w);
  CHECK(add(w, Ordinal::natural(1)) != w);
  CHECK(mul(Ordinal::natural(2), w) == w);
  CHECK(mul(w, Ordinal::natural(2)) == o("w*2"));
  CHECK(pow(Ordinal::natural(2), w) == w);
  CHECK(pow(w, Ordinal::natural(2)) == o("w^2"));
  CHECK(pow(Ordinal(), Ordinal()) == Ordinal::natural(1));
  CHECK(pow(o("w+1"), Ordinal::natural(2)) == o("w^2 + w + 1"));
  CHECK(pow(o("w+1"), w) == o("w^w"));
  CHECK(mul(o("w+1"), o("w+1")) == o("w^2 + w + 1"));
}

TEST_CASE("algebraic laws on random triples") {
  auto rng = make_rng(502);
  for (int i = 0; i < 300; ++i) {
    const auto a = testing::random_ordinal(rng, 2);
    const auto b = testing::random_ordinal(rng, 2);
    const auto c = testing::random_ordinal(rng, 2);
    CHECK(add(add(a, b), c) == add(a, add(b, c)));
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
    if (b < c) {
      CHECK(add(a, b) < add(a, c));
      CHECK(add(b, a) <= add(c, a));
      if (!a.is_zero()) CHECK(mul(a, b) < mul(a, c));
      CHECK(mul(b, a) <= mul(c, a));
    }
    CHECK(add(a, b) >= b);
    if (add(a, b) == add(a, c)) CHECK(b == c);
    if (!b.is_zero()) {
      const auto [q, r] = divmod(a, b);
      CHECK(add(mul(b, q), r) == a);
      CHECK(r < b);
    }
    if (a <= b) CHECK(add(a, left_subtract(a, b)) == b);
  }
}

TEST_CASE("exponent laws on small random triples") {
  auto rng = make_rng(503);
  for (int i = 0; i < 200; ++i) {
    const auto a = testing::random_ordinal(rng, 1, 2, 3);
    const auto b = testing::random_ordinal(rng, 1, 2, 3);
    const auto c = testing::random_ordinal(rng, 1, 2, 3);
    CHECK(pow(a, add(b, c)) == mul(pow(a, b), pow(a, c)));
    CHECK(pow(pow(a, b), c) == pow(a, mul(b, c)));
  }
}

TEST_CASE("the five ordinals sort into four classes") {
  const Ordinal ww = pow(w, w);
  const Ordinal w2 = add(w, w);
  const std::vector<Ordinal> five{
      mul(ww, w2),
      mul(w2, ww),
      add(mul(ww, w), mul(ww, w)),
      add(mul(w, ww), mul(w, ww)),
      add(mul(ww, w), mul(w, ww)),
  };
  CHECK(five[0] == o("w^{w+1}*2"));
  CHECK(five[1] == o("w^w"));
  CHECK(five[2] == o("w^{w+1}*2"));
  CHECK(five[3] == o("w^w*2"));
  CHECK(five[4] == o("w^{w+1} + w^w"));
  auto sorted = five;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<Ordinal>{o("w^w"), o("w^w*2"), o("w^{w+1}+w^w"), o("w^{w+1}*2"),
                                       o("w^{w+1}*2")});
}

TEST_CASE("indecomposables") {
  CHECK(is_indecomposable(Ordinal::natural(1)));
  CHECK_FALSE(is_indecomposable(Ordinal::natural(2)));
  CHECK(is_indecomposable(o("w^w")));
  CHECK_FALSE(is_indecomposable(o("w*2")));
  CHECK(kind_of([] { is_indecomposable(Ordinal()); }) == ErrorKind::ZeroInput);
  // w^b absorbs every smaller left summand.
  auto rng = make_rng(504);
  for (int i = 0; i < 100; ++i) {
    const auto b = testing::random_ordinal(rng, 1);
    const auto g = Ordinal::omega_power(b);
    const auto a = testing::random_ordinal(rng, 2);
    if (a < g) CHECK(add(a, g) == g);
  }
}

TEST_CASE("division errors and guards") {
  CHECK(kind_of([] { divmod(w, Ordinal()); }) == ErrorKind::DivisionByZero);
  CHECK(kind_of([] { left_subtract(w, Ordinal::natural(3)); }) == ErrorKind::InvalidInput);
}

TEST_CASE("hereditary base expansion") {
  const auto r = hereditary_expand(BigNat(266), BigNat(2));
  CHECK(to_string(r) == "2^(2^(2+1)) + 2^(2+1) + 2");
  CHECK(evaluate(r.expansion, 2) == 266);
  CHECK(majorant(r.expansion) == o("w^{w^{w+1}} + w^{w+1} + w"));
  CHECK(kind_of([] { hereditary_expand(BigNat(5), BigNat(1)); }) == ErrorKind::BaseGuard);
  for (std::uint64_t n = 0; n < 300; ++n) {
    for (std::uint64_t b = 2; b < 6; ++b) {
      CHECK(evaluate(hereditary_expand(n, b).expansion, b) == n);
    }
  }
}

TEST_CASE("Goodstein steps") {
  CHECK(goodstein_step(BigNat(36), BigNat(2)) == BigNat("22876792454987"));
  CHECK(goodstein_step(BigNat(1728), BigNat(6)) == 3086);
  CHECK(goodstein_step(BigNat(3), BigNat(2)) == 3);
  CHECK(kind_of([] { goodstein_step(BigNat(0), BigNat(2)); }) == ErrorKind::ZeroInput);
}

TEST_CASE("Goodstein traces") {
  const auto three = goodstein_run(3, 2, 100);
  CHECK(three.finished);
  REQUIRE(three.rows.size() == 6);
  CHECK(three.rows.back().value == 0);
  for (std::uint64_t m = 1; m <= 3; ++m) {
    const auto t = goodstein_run(m, 2, 100);
    CHECK(t.finished);
    for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i].ordinal < t.rows[i - 1].ordinal);
  }
  const auto four = goodstein_run(4, 2, 500);
  CHECK_FALSE(four.finished);
  CHECK(four.rows.size() == 501);
  const auto csv = format_csv(three);
  CHECK(csv.rfind("step,base,value,ordinal\n0,2,3,w + 1\n", 0) == 0);
}

TEST_CASE("mirrored division has no quotient for w+1 by 2") {
  // gamma*2 + delta = w+1 with delta < 2 fails: gamma*2 >= gamma, so gamma <= w+1,
  // and every such gamma gives a finite value or one of w*2, w*2+1.
  const auto target = o("w+1");
  std::vector<Ordinal> gammas{w, o("w+1")};
  for (std::uint64_t n = 0; n <= 20; ++n) gammas.push_back(Ordinal::natural(n));
  for (const auto& g : gammas) {
    for (std::uint64_t d = 0; d < 2; ++d) {
      CHECK(add(mul(g, Ordinal::natural(2)), Ordinal::natural(d)) != target);
    }
  }
  // The left-hand form exists and is unique.
  const auto [q, r] = divmod(target, Ordinal::natural(2));
  CHECK(add(mul(Ordinal::natural(2), q), r) == target);
}
