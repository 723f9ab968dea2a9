#include "aglstab/counting.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "parallel.hpp"

namespace aglstab {

namespace {

using i128 = __int128;

// Nonnegative integer quotient a / b, or -1 when it is not one.
std::int64_t exact_quotient(i128 a, i128 b) {
  if (b <= 0 || a < 0 || a % b != 0) return -1;
  return static_cast<std::int64_t>(a / b);
}

std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
  const auto r = checked_pow(base, exp);
  if (!r) throw std::overflow_error("integer power overflows 64 bits");
  return *r;
}

BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

// One inner sum of the closed form:
//   sum_l (-1)^(sign + l) r^(l choose 2) [n, l]_r s_qk(q, k, u, p^(beta + l o))
// with r = p^o and n = (alpha - beta)/o.
BigInt lattice_sum(const ClassParams& c, std::uint64_t u, std::uint64_t o, bool negate) {
  const std::uint64_t q = c.q();
  const unsigned rest = c.alpha - c.beta;
  if (rest % o != 0) throw std::logic_error("subspace dimension not divisible by field degree");
  const std::int64_t n = rest / o;
  const auto r = static_cast<std::int64_t>(pow_u64(c.p, static_cast<unsigned>(o)));
  BigInt sum = 0;
  for (std::int64_t l = 0; l <= n; ++l) {
    const std::uint64_t v = pow_u64(c.p, c.beta + static_cast<unsigned>(l * o));
    BigInt term = moebius_exponent(l, r) * q_binomial(n, l, r) *
                  s_qk(static_cast<std::int64_t>(q), c.k, static_cast<std::int64_t>(u),
                       static_cast<std::int64_t>(v));
    sum += negate ? BigInt(-term) : term;
  }
  return sum;
}

}  // namespace

BigInt binomial(std::int64_t n, std::int64_t m) {
  if (n < 0 || m < 0 || m > n) return 0;
  m = std::min(m, n - m);
  BigInt result = 1;
  for (std::int64_t t = 1; t <= m; ++t) {
    result *= n - m + t;
    result /= t;
  }
  return result;
}

BigInt q_binomial(std::int64_t n, std::int64_t m, std::int64_t base) {
  if (base < 2) throw std::invalid_argument("q_binomial: base must be at least 2");
  if (m < 0 || m > n) return 0;
  BigInt num = 1, den = 1;
  const BigInt b = base;
  for (std::int64_t t = 0; t < m; ++t) {
    num *= boost::multiprecision::pow(b, static_cast<unsigned>(n - t)) - 1;
    den *= boost::multiprecision::pow(b, static_cast<unsigned>(t + 1)) - 1;
  }
  return num / den;
}

BigInt moebius_exponent(std::int64_t dim_quotient, std::int64_t base) {
  if (dim_quotient < 0) throw std::invalid_argument("moebius_exponent: negative dimension");
  const auto e = static_cast<unsigned>(dim_quotient * (dim_quotient - 1) / 2);
  BigInt value = boost::multiprecision::pow(BigInt(base), e);
  return dim_quotient % 2 == 0 ? value : BigInt(-value);
}

BigInt s_qk(std::int64_t q, std::int64_t k, std::int64_t u, std::int64_t v) {
  if (u < 1 || v < 1) throw std::invalid_argument("s_qk: u and v must be positive");
  const i128 uv = i128{u} * v;
  const std::int64_t n = exact_quotient(i128{q} - v, uv);
  BigInt total = 0;
  if (n < 0) return total;
  if (const std::int64_t m = exact_quotient(k, uv); m >= 0) total += binomial(n, m);
  if (const std::int64_t m = exact_quotient(i128{k} - v, uv); m >= 0) total += binomial(n, m);
  return total;
}

std::uint64_t ClassParams::q() const { return pow_u64(p, alpha); }

ClassParams make_class_params(std::uint64_t p, unsigned alpha, std::int64_t k, std::uint64_t d,
                              unsigned i, unsigned j) {
  ClassParams c{p, alpha, k, d, i, j, 0};
  if (d >= 1 && is_prime(p) && std::gcd(p, d) == 1) {
    c.beta = static_cast<unsigned>(c.odp() * i * j);
  }
  return c;
}

std::optional<std::string> class_violation(const ClassParams& c, bool require_congruence) {
  if (!is_prime(c.p)) return std::to_string(c.p) + " is not prime";
  if (c.alpha < 1) return "alpha must be at least 1";
  const auto q = checked_pow(c.p, c.alpha);
  if (!q || *q > (std::uint64_t{1} << 62)) return "q = p^alpha is too large";
  if (c.d < 1 || (*q - 1) % c.d != 0) {
    return "d = " + std::to_string(c.d) + " does not divide q - 1 = " + std::to_string(*q - 1);
  }
  const std::uint64_t odp = c.odp();
  const std::uint64_t top = c.alpha / odp;
  if (c.i < 1 || top % c.i != 0) {
    return "i = " + std::to_string(c.i) + " does not divide alpha / o_d(p) = " +
           std::to_string(top);
  }
  if (c.i == top) {
    if (c.j > 1) return "j must be 0 or 1 when i = alpha / o_d(p)";
  } else if (c.j < 1 || c.j >= top / c.i) {
    return "j must satisfy 0 < j < alpha / (o_d(p) i) = " + std::to_string(top / c.i);
  }
  if (c.beta != odp * c.i * c.j) return "beta must equal o_d(p) i j";
  if (c.k < 0 || static_cast<std::uint64_t>(c.k) > *q) {
    return "k = " + std::to_string(c.k) + " is outside 0 <= k <= q";
  }
  if (require_congruence) {
    const i128 pb = *checked_pow(c.p, c.beta);
    const i128 r = i128{c.k} % (pb * c.d);
    if (r != 0 && r != pb) {
      return "k = " + std::to_string(c.k) + " is not congruent to 0 or p^beta = " +
             std::to_string(static_cast<std::uint64_t>(pb)) + " modulo d p^beta = " +
             std::to_string(static_cast<std::uint64_t>(pb * c.d));
    }
  }
  return std::nullopt;
}

BigInt evaluate_N(const ClassParams& c) {
  if (auto why = class_violation(c, false)) throw std::invalid_argument(*why);
  const std::uint64_t odp = c.odp();
  const std::uint64_t hprime = pow_u64(c.p, static_cast<unsigned>(odp * c.i));
  const auto primes = prime_set(static_cast<std::int64_t>((hprime - 1) / c.d));

  BigInt total = 0;
  if (c.d == 1) {
    total = (1 - big_pow(c.p, c.alpha - c.beta)) * lattice_sum(c, 1, 1, false);
  }
  BigInt subsets = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << primes.size()); ++mask) {
    std::uint64_t prod = 1;
    unsigned size = 0;
    for (std::size_t t = 0; t < primes.size(); ++t) {
      if (mask >> t & 1) {
        prod *= primes[t];
        ++size;
      }
    }
    const std::uint64_t u = c.d * prod;
    const std::uint64_t o =
        mult_order(static_cast<std::int64_t>(c.p), static_cast<std::int64_t>(u));
    subsets += lattice_sum(c, u, o, size % 2 == 1);
  }
  if (c.d == 1) {
    total += big_pow(c.p, c.alpha - c.beta) * subsets;
  } else {
    total = subsets;
  }
  return total;
}

BigInt count_N(const ClassParams& c) {
  if (auto why = class_violation(c, true)) throw std::invalid_argument(*why);
  return evaluate_N(c);
}

std::vector<ClassShape> enumerate_classes(std::uint64_t p, unsigned alpha) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (alpha < 1) throw std::invalid_argument("alpha must be at least 1");
  const auto q = checked_pow(p, alpha);
  if (!q) throw std::invalid_argument("q = p^alpha is too large");
  std::vector<ClassShape> out;
  for (std::uint64_t d : divisors(*q - 1)) {
    const std::uint64_t odp = mult_order(static_cast<std::int64_t>(p), static_cast<std::int64_t>(d));
    const std::uint64_t top = alpha / odp;
    for (std::uint64_t i : divisors(top)) {
      if (i == top) {
        out.push_back({d, static_cast<unsigned>(i), 0});
        out.push_back({d, static_cast<unsigned>(i), 1});
      } else {
        for (std::uint64_t j = 1; j < top / i; ++j) {
          out.push_back({d, static_cast<unsigned>(i), static_cast<unsigned>(j)});
        }
      }
    }
  }
  return out;
}

std::vector<ClassParams> enumerate_params(std::uint64_t p, unsigned alpha,
                                          std::optional<std::int64_t> k_max) {
  const auto classes = enumerate_classes(p, alpha);
  const std::uint64_t q = pow_u64(p, alpha);
  const std::int64_t last = k_max.value_or(static_cast<std::int64_t>(q / 2));
  if (last < 0 || static_cast<std::uint64_t>(last) > q) {
    throw std::invalid_argument("k_max must lie in 0..q");
  }
  std::vector<ClassParams> out;
  for (std::int64_t k = 0; k <= last; ++k) {
    for (const ClassShape& shape : classes) {
      ClassParams c = make_class_params(p, alpha, k, shape.d, shape.i, shape.j);
      if (!class_violation(c, true)) out.push_back(c);
    }
  }
  return out;
}

std::vector<CountRecord> build_table(std::uint64_t p, unsigned alpha,
                                     std::optional<std::int64_t> k_max, unsigned workers) {
  const auto params = enumerate_params(p, alpha, k_max);
  std::vector<CountRecord> rows(params.size());
  detail::parallel_for(params.size(), workers, [&](std::size_t index, unsigned) {
    const ClassParams& c = params[index];
    rows[index] = {c.k, c.d, c.odp(), c.i, c.j, c.beta, count_N(c)};
  });
  return rows;
}

}  // namespace aglstab
