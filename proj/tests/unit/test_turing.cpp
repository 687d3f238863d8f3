#include "doctest.h"
#include "generators.hpp"
#include "logiclab/error.hpp"
#include "logiclab/turing.hpp"
#include "oracles.hpp"

using namespace logiclab;
using namespace logiclab::tm;

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

std::vector<std::string> words(const std::vector<char>& alphabet, std::size_t max_len) {
  std::vector<std::string> out{""};
  std::vector<std::string> layer{""};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& w : layer) {
      for (char c : alphabet) {
        if (c != kBlank) next.push_back(w + c);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("successor adds one stroke") {
  for (std::uint64_t n = 0; n <= 20; ++n) {
    const auto r = compute_numeric(fixtures::successor(), {n}, 1000);
    REQUIRE(std::holds_alternative<std::uint64_t>(r));
    CHECK(std::get<std::uint64_t>(r) == n + 1);
  }
  const auto h = std::get<Halt>(run(fixtures::successor(), "111", 100));
  CHECK(h.output == "1111");
  CHECK(h.steps == 4);
}

TEST_CASE("parity agrees with the hand simulation on all words up to length 6") {
  const auto m = fixtures::parity();
  for (const auto& w : words({'0', '1'}, 6)) {
    const auto expected = testing::parity_by_hand(w);
    const auto r = run(m, w, 100);
    REQUIRE(std::holds_alternative<Halt>(r));
    CHECK(std::get<Halt>(r).output == expected.output);
    CHECK(std::get<Halt>(r).steps == expected.steps);
  }
}

TEST_CASE("arithmetic fixtures") {
  for (std::uint64_t a = 0; a <= 5; ++a) {
    for (std::uint64_t b = 0; b <= 5; ++b) {
      CHECK(std::get<std::uint64_t>(compute_numeric(fixtures::adder(), {a, b}, 10'000)) == a + b);
      CHECK(std::get<std::uint64_t>(compute_numeric(fixtures::monus(), {a, b}, 10'000)) ==
            (a > b ? a - b : 0));
    }
    CHECK(std::get<std::uint64_t>(compute_numeric(fixtures::constant_two(), {a}, 1000)) == 2);
    CHECK(std::get<std::uint64_t>(compute_numeric(fixtures::identity(), {a}, 1000)) == a);
  }
  CHECK(std::holds_alternative<OutOfFuel>(compute_numeric(fixtures::looper(), {2}, 500)));
}

TEST_CASE("traces and configurations") {
  const auto t = trace(fixtures::successor(), "1", 10);
  REQUIRE(t.size() == 3);
  CHECK(format_configuration(t[0]) == "a: [1]");
  CHECK(t.back().state == "b");
  CHECK(trace(fixtures::looper(), "", 5).size() == 6);
  CHECK(kind_of([] { run(fixtures::successor(), "12", 10); }) == ErrorKind::BadInputSymbol);
  CHECK(kind_of([] { run(fixtures::successor(), "1~1", 10); }) == ErrorKind::BadInputSymbol);
}

TEST_CASE("machine text round-trips and validation") {
  for (const auto& [name, m] : fixtures::all()) {
    CHECK(parse_machine(format_machine(m)) == m);
  }
  CHECK(kind_of([] { parse_machine("states: a\nalphabet: 1\nstart: a\n"); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_machine("states: a\nalphabet: 1 ~\nstart: b\n"); }) ==
        ErrorKind::UnknownState);
  CHECK(kind_of([] { parse_machine("states: a\nalphabet: 1 ~\nstart: a\na,1 -> z,1,R\n"); }) ==
        ErrorKind::UnknownState);
}

TEST_CASE("sequence coding") {
  const std::vector<std::uint64_t> seq{3, 1, 4, 1, 5};
  CHECK(decode_sequence(encode_sequence(seq)) == seq);
  CHECK(encode_sequence({1, 2}) == 18);
  CHECK_FALSE(decode_sequence(BigNat(10)).has_value());  // 2 * 5 skips 3
  CHECK(kind_of([] { encode_sequence({1, 0}); }) == ErrorKind::InvalidInput);
}

TEST_CASE("machine codes round-trip and are distinct") {
  std::set<BigNat> codes;
  for (const auto& [name, m] : fixtures::all()) {
    const auto code = encode_machine(m);
    CHECK(is_code(code));
    CHECK(decode_machine(code) == m);
    codes.insert(code);
    CHECK(describe(m).front() == kCodeVersion);
  }
  CHECK(codes.size() == fixtures::all().size());
  CHECK_FALSE(is_code(BigNat(12)));
  CHECK(kind_of([] { decode_machine(BigNat(7)); }) == ErrorKind::NotACode);
}

TEST_CASE("universal machine agrees with direct simulation") {
  for (const auto& [name, m] : fixtures::all()) {
    const auto code = encode_machine(m);
    for (const auto& w : words(m.alphabet, 3)) {
      const auto direct = run(m, w, 2000);
      const auto via = utm_run(code, w, 2000);
      if (const auto* h = std::get_if<Halt>(&direct)) {
        REQUIRE(std::holds_alternative<UtmHalt>(via));
        CHECK(std::get<UtmHalt>(via).output == h->output);
        CHECK(std::get<UtmHalt>(via).steps == h->steps);
      } else {
        CHECK(std::holds_alternative<OutOfFuel>(via));
      }
    }
  }
  CHECK(std::holds_alternative<Diverges>(utm_run(BigNat(12), "1", 10)));
  CHECK(std::holds_alternative<Diverges>(utm_run(encode_machine(fixtures::successor()), "0", 10)));
}

TEST_CASE("W_e of the even-length machine") {
  const auto we = enumerate_we(encode_machine(fixtures::even_length()), 12);
  CHECK(we == std::set<std::uint64_t>{0, 2, 4, 6, 8, 10, 12});
  CHECK(enumerate_we(encode_machine(fixtures::looper()), 10).empty());
  // 1^n needs n+1 steps.
  CHECK(enumerate_we(encode_machine(fixtures::successor()), 5) == std::set<std::uint64_t>{0, 1, 2, 3, 4});
}
