#include "seed.hpp"

#include <charconv>
#include <cstring>
#include <string_view>

namespace logiclab::testing {

namespace {
std::uint64_t g_seed = kDefaultSeed;

bool parse_u64(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}
}  // namespace

std::uint64_t seed() { return g_seed; }
void set_seed(std::uint64_t s) { g_seed = s; }

bool take_seed_flag(int& argc, char** argv, std::string& error) {
  int w = 1;
  for (int r = 1; r < argc; ++r) {
    std::string_view arg = argv[r];
    std::string_view value;
    bool matched = false;
    if (arg.rfind("--seed=", 0) == 0) {
      value = arg.substr(7);
      matched = true;
    } else if (arg == "--seed") {
      if (r + 1 >= argc) {
        error = "--seed needs a value";
        return false;
      }
      value = argv[++r];
      matched = true;
    }
    if (!matched) {
      argv[w++] = argv[r];
      continue;
    }
    std::uint64_t s = 0;
    if (!parse_u64(value, s)) {
      error = "--seed expects a natural number, got '" + std::string(value) + "'";
      return false;
    }
    set_seed(s);
  }
  argc = w;
  argv[argc] = nullptr;
  return true;
}

Rng make_rng(std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(g_seed), static_cast<std::uint32_t>(g_seed >> 32),
                    static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
  return Rng(seq);
}

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace logiclab::testing
