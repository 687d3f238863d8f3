#include "logiclab/bignat.hpp"

#include <mutex>

#include "logiclab/error.hpp"

namespace logiclab {

BigNat parse_bignat(std::string_view text) {
  if (text.empty()) {
    throw Error(ErrorKind::InvalidInput, "expected a natural number");
  }
  BigNat value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw Error(ErrorKind::InvalidInput,
                  "expected a natural number, got '" + std::string(text) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

std::string to_string(const BigNat& n) { return n.str(); }

std::uint64_t nth_prime(std::size_t k) {
  static std::mutex mutex;
  static std::vector<std::uint64_t> primes{2, 3};
  std::lock_guard lock(mutex);
  while (primes.size() <= k) {
    std::uint64_t candidate = primes.back() + 2;
    for (;; candidate += 2) {
      bool prime = true;
      for (std::uint64_t p : primes) {
        if (p * p > candidate) break;
        if (candidate % p == 0) {
          prime = false;
          break;
        }
      }
      if (prime) break;
    }
    primes.push_back(candidate);
  }
  return primes[k];
}

BigNat prime_power_product(const std::vector<std::uint64_t>& exponents) {
  BigNat result = 1;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    BigNat p = nth_prime(i);
    result *= boost::multiprecision::pow(p, static_cast<unsigned>(exponents[i]));
  }
  return result;
}

std::optional<std::vector<std::uint64_t>> contiguous_prime_exponents(
    const BigNat& n) {
  std::vector<std::uint64_t> exponents;
  if (n <= 1) return std::nullopt;
  BigNat rest = n;
  for (std::size_t i = 0; rest != 1; ++i) {
    const BigNat p = nth_prime(i);
    std::uint64_t e = 0;
    BigNat q, r;
    for (;;) {
      boost::multiprecision::divide_qr(rest, p, q, r);
      if (r != 0) break;
      rest = q;
      ++e;
    }
    if (e == 0) return std::nullopt;
    exponents.push_back(e);
  }
  return exponents;
}

BigNat factorial(std::uint64_t n) {
  BigNat result = 1;
  for (std::uint64_t i = 2; i <= n; ++i) result *= i;
  return result;
}

}  // namespace logiclab
