#include "aglstab/numtheory.hpp"

#include <numeric>
#include <stdexcept>

namespace aglstab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_set(std::int64_t u) {
  if (u <= 0) throw std::invalid_argument("prime_set: argument must be positive");
  auto n = static_cast<std::uint64_t>(u);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f != 0) continue;
    primes.push_back(f);
    while (n % f == 0) n /= f;
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> low, high;
  for (std::uint64_t f = 1; f * f <= n; ++f) {
    if (n % f != 0) continue;
    low.push_back(f);
    if (f != n / f) high.push_back(n / f);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

std::uint64_t mult_order(std::int64_t v, std::int64_t u) {
  if (u < 1) throw std::invalid_argument("mult_order: modulus must be positive");
  if (u == 1) return 1;
  const auto mod = static_cast<unsigned __int128>(u);
  auto base = static_cast<std::int64_t>(((v % u) + u) % u);
  if (std::gcd(base, u) != 1) throw std::invalid_argument("mult_order: gcd(u, v) != 1");
  unsigned __int128 x = static_cast<unsigned __int128>(base);
  std::uint64_t m = 1;
  while (x != 1) {
    x = x * static_cast<unsigned __int128>(base) % mod;
    ++m;
  }
  return m;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > UINT64_MAX / base) return std::nullopt;
    result *= base;
  }
  return result;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  const auto primes = prime_set(static_cast<std::int64_t>(q));
  if (primes.size() != 1) return std::nullopt;
  unsigned alpha = 0;
  while (q % primes[0] == 0) {
    q /= primes[0];
    ++alpha;
  }
  return std::pair{primes[0], alpha};
}

}  // namespace aglstab
