#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace logiclab {

/// Arbitrary-precision natural number. Negative values never escape the
/// public API.
using BigNat = boost::multiprecision::cpp_int;

BigNat parse_bignat(std::string_view text);
std::string to_string(const BigNat& n);

/// The k-th prime, zero-based (nth_prime(0) == 2).
std::uint64_t nth_prime(std::size_t k);

/// 2^e0 * 3^e1 * 5^e2 * ...
BigNat prime_power_product(const std::vector<std::uint64_t>& exponents);

/// Inverse of prime_power_product for numbers whose exponent vector is
/// nonzero on a prefix 2, 3, 5, ... and zero afterwards. Trial division stops
/// at the first prime that does not divide the cofactor, so malformed inputs
/// are rejected quickly. nullopt for 0, 1 and any number with a gap.
std::optional<std::vector<std::uint64_t>> contiguous_prime_exponents(
    const BigNat& n);

BigNat factorial(std::uint64_t n);

}  // namespace logiclab
