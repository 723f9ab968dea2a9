#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aglstab/bigint.hpp"
#include "aglstab/numtheory.hpp"

namespace aglstab {

/// Ordinary binomial coefficient; 0 when m < 0, m > n or n < 0.
BigInt binomial(std::int64_t n, std::int64_t m);

/// Gaussian binomial [n, m]_base by the product formula.  Throws
/// std::invalid_argument for base < 2.
BigInt q_binomial(std::int64_t n, std::int64_t m, std::int64_t base);

/// Moebius function of the subspace lattice between W and V when
/// dim(V/W) = dim_quotient over a field of size base:
/// (-1)^l * base^(l choose 2).
BigInt moebius_exponent(std::int64_t dim_quotient, std::int64_t base);

/// Number of k-subsets of F_q that are unions of orbits when there is one
/// orbit of size v and (q - v)/(u v) orbits of size u v:
///   C((q-v)/uv, k/uv) + C((q-v)/uv, (k-v)/uv),
/// where a term whose indices are not nonnegative integers contributes 0.
BigInt s_qk(std::int64_t q, std::int64_t k, std::int64_t u, std::int64_t v);

/// The k-independent part of a subgroup class: the rotation order d, the
/// index i with |H'| = p^(o_d(p) i), and j with |H| = p^(o_d(p) i j).
struct ClassShape {
  std::uint64_t d = 1;
  unsigned i = 1;
  unsigned j = 0;

  friend auto operator<=>(const ClassShape&, const ClassShape&) = default;
};

/// (p, alpha, k, d, i, j, beta) describing N(S(gamma^((q-1)/d), 0, H), k)
/// with |H| = p^beta and |H'| = p^(o_d(p) i).
struct ClassParams {
  std::uint64_t p = 2;
  unsigned alpha = 1;
  std::int64_t k = 0;
  std::uint64_t d = 1;
  unsigned i = 1;
  unsigned j = 0;
  unsigned beta = 0;

  std::uint64_t q() const;
  std::uint64_t odp() const { return mult_order(static_cast<std::int64_t>(p), static_cast<std::int64_t>(d)); }
  ClassShape shape() const { return {d, i, j}; }

  friend bool operator==(const ClassParams&, const ClassParams&) = default;
};

/// Fills in beta = o_d(p) i j.  Does not validate.
ClassParams make_class_params(std::uint64_t p, unsigned alpha, std::int64_t k,
                              std::uint64_t d, unsigned i, unsigned j);

/// A message naming the first violated parameter condition, or nullopt.  The
/// k range accepted is 0 <= k <= q.  The congruence k = 0 or p^beta
/// (mod d p^beta) is checked only when require_congruence is set.
std::optional<std::string> class_violation(const ClassParams& params,
                                           bool require_congruence = true);

/// N(S(gamma^((q-1)/d), 0, H), k) from the closed-form sums.  Throws
/// std::invalid_argument if class_violation reports anything.
BigInt count_N(const ClassParams& params);

/// Same sums without the congruence gate; off-congruence k evaluate to 0.
BigInt evaluate_N(const ClassParams& params);

/// All subgroup classes (d ascending, then i, then j).
std::vector<ClassShape> enumerate_classes(std::uint64_t p, unsigned alpha);

/// All valid parameter tuples for 0 <= k <= k_max (default floor(q/2)),
/// nested k, d, i, j.
std::vector<ClassParams> enumerate_params(std::uint64_t p, unsigned alpha,
                                          std::optional<std::int64_t> k_max = std::nullopt);

struct CountRecord {
  std::int64_t k = 0;
  std::uint64_t d = 1;
  std::uint64_t odp = 1;
  unsigned i = 1;
  unsigned j = 0;
  unsigned beta = 0;
  BigInt n;

  friend bool operator==(const CountRecord&, const CountRecord&) = default;
};

/// One record per enumerate_params tuple, evaluated on up to `workers`
/// threads; output order matches enumerate_params.
std::vector<CountRecord> build_table(std::uint64_t p, unsigned alpha,
                                     std::optional<std::int64_t> k_max = std::nullopt,
                                     unsigned workers = 1);

}  // namespace aglstab
