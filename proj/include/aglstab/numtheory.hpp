#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace aglstab {

bool is_prime(std::uint64_t n);

/// Distinct prime divisors of u in ascending order; prime_set(1) is empty.
/// Throws std::invalid_argument for u <= 0.
std::vector<std::uint64_t> prime_set(std::int64_t u);

/// All positive divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Multiplicative order of v modulo u.  By convention the order modulo 1 is 1.
/// Throws std::invalid_argument unless u >= 1 and gcd(u, v) = 1.
std::uint64_t mult_order(std::int64_t v, std::int64_t u);

/// base^exp, or nullopt when the result does not fit in 64 bits.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp);

/// If q = p^alpha for a prime p, returns {p, alpha}.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q);

}  // namespace aglstab
