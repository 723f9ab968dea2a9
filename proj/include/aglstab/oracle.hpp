#pragma once

// Ground-truth engines used to check the closed-form counts: exhaustive
// stabilizer computation, subgroup enumeration for small q, and the
// inclusion-exclusion walk over immediate supergroups.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aglstab/agl.hpp"
#include "aglstab/bigint.hpp"
#include "aglstab/counting.hpp"
#include "aglstab/ffield.hpp"

namespace aglstab {

/// Raised when a requested scan exceeds its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  /// Largest q for stabilizer and brute-force scans.
  std::uint64_t max_field_order = 4096;
  /// Largest q for which whole subspace/subgroup lattices are enumerated.
  std::uint64_t max_lattice_field_order = 64;
  /// Most candidate subsets any single scan may visit.
  std::uint64_t subset_budget = 10'000'000;
  /// Walk all 2^t selections of immediate supergroups explicitly up to this t;
  /// beyond it, selections are grouped by their join.
  std::uint64_t explicit_join_limit = 16;
  /// Most distinct joins the grouped walk may hold.
  std::uint64_t lattice_node_budget = 1'000'000;
  unsigned workers = 1;
};

/// A subset of F_q as a bitmask indexed by element value.  Ordering is by the
/// numeric value of the mask (element q-1 most significant).
class SubsetMask {
 public:
  explicit SubsetMask(std::size_t universe = 0);
  static SubsetMask from_elements(std::size_t universe, std::span<const FieldElement> xs);

  std::size_t universe() const { return universe_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  std::size_t count() const;
  std::vector<FieldElement> elements() const;
  SubsetMask complement() const;
  /// '0'/'1' per element, element 0 first.
  std::string to_bitstring() const;

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;
  friend std::strong_ordering operator<=>(const SubsetMask& x, const SubsetMask& y);

 private:
  std::size_t universe_;
  std::vector<std::uint64_t> words_;
};

SubsetMask image(const Field& field, const AffineMap& f, const SubsetMask& b);

/// Canonical descriptor of {f in AGL(1, q) : f(B) = B}.
SubgroupDesc stabilizer(const Field& field, const SubsetMask& b, const OracleLimits& limits = {});

/// Counts the k-subsets with stabilizer exactly s by testing every union of
/// s-orbits of total size k.
BigInt count_N_bruteforce(const Field& field, const SubgroupDesc& s, std::int64_t k,
                          const OracleLimits& limits = {});

/// The first union of s-orbits of size k (include-first order) whose
/// stabilizer is exactly s, if any.
std::optional<SubsetMask> find_subset_with_stabilizer(const Field& field, const SubgroupDesc& s,
                                                      std::int64_t k,
                                                      const OracleLimits& limits = {});

/// Canonical stabilizer -> number of k-subsets having it.
using StabilizerCensus = std::map<SubgroupDesc, BigInt>;

StabilizerCensus full_census(const Field& field, std::int64_t k, const OracleLimits& limits = {});

/// Join of s with a selection of its immediate supergroups -> summed sign
/// (-1)^|selection| over all selections with that join.
using LatticeCoefficients = std::map<SubgroupDesc, BigInt>;

LatticeCoefficients lattice_coefficients(const Field& field, const SubgroupDesc& s,
                                         const OracleLimits& limits = {});

/// sum over selections of (-1)^|selection| |<s u selection>'|.  s must have b = 0.
BigInt count_N_via_lattice(const Field& field, const SubgroupDesc& s, std::int64_t k,
                           const OracleLimits& limits = {});
BigInt count_N_via_lattice(const Field& field, const LatticeCoefficients& coefficients,
                           std::int64_t k);

/// Every subgroup of AGL(1, q), each once, in (d, H, b) order.
std::vector<SubgroupDesc> all_subgroups(const Field& field, const OracleLimits& limits = {});

/// The (d, i, j) class of a subgroup.
ClassShape class_of(const Field& field, const SubgroupDesc& s);
/// A subgroup S(gamma^((q-1)/d), 0, H) of the given class.
SubgroupDesc class_representative(const Field& field, const ClassShape& shape,
                                  const OracleLimits& limits = {});

}  // namespace aglstab
