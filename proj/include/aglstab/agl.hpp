#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "aglstab/bigint.hpp"
#include "aglstab/ffield.hpp"

namespace aglstab {

/// x -> a*x + b with a != 0.
struct AffineMap {
  FieldElement a{1};
  FieldElement b{0};

  friend constexpr auto operator<=>(AffineMap, AffineMap) = default;
};

AffineMap identity_map();
FieldElement apply(const Field& field, const AffineMap& f, FieldElement x);
/// (f o g)(x) = f(g(x)).  Throws std::invalid_argument if either map is not a
/// valid map over this field.
AffineMap compose(const Field& field, const AffineMap& f, const AffineMap& g);
AffineMap inverse(const Field& field, const AffineMap& f);
AffineMap power(const Field& field, const AffineMap& f, std::int64_t l);

/// Canonical descriptor of S(a, b, H) with a = gamma^((q-1)/d).  b is the
/// least element of b + H and is 0 when d = 1; H is closed under F_p(a).
struct SubgroupDesc {
  std::uint64_t d = 1;
  FieldElement b{0};
  Subspace h;

  friend auto operator<=>(const SubgroupDesc&, const SubgroupDesc&) = default;
};

/// gamma^((q-1)/d).
FieldElement rotation(const Field& field, std::uint64_t d);
/// F_p(gamma^((q-1)/d)) = F_{p^{o_d(p)}}.
Subfield rotation_field(const Field& field, std::uint64_t d);

/// d * |H|.
std::uint64_t subgroup_order(const Field& field, const SubgroupDesc& s);
/// The generator (a, b) of the rotation part.
AffineMap rotation_map(const Field& field, const SubgroupDesc& s);
/// Throws std::invalid_argument if s is not a canonical descriptor.
void validate(const Field& field, const SubgroupDesc& s);

/// The d|H| maps (a,b)^l o (1,h), 0 <= l < d, h in H, sorted.
std::vector<AffineMap> subgroup_elements(const Field& field, const SubgroupDesc& s);
bool contains(const Field& field, const SubgroupDesc& s, const AffineMap& f);

/// Canonical descriptor of the group generated by the maps, found by closing
/// the generating set under composition.
SubgroupDesc canonicalize(const Field& field, std::span<const AffineMap> generators);
/// Canonical descriptor of a set of maps that is already a group.
SubgroupDesc describe_group(const Field& field, std::span<const AffineMap> elements);

/// Returns S(a, 0, H) and the translation t with t S t^-1 = S(a, 0, H).
std::pair<SubgroupDesc, AffineMap> conjugate_to_b_zero(const Field& field,
                                                        const SubgroupDesc& s);

/// The minimal proper supergroups of s, which must have b = 0.  Rotation
/// supergroups come first (ascending prime, then b), then translation
/// supergroups in lines_of_quotient order.
std::vector<SubgroupDesc> immediate_supergroups(const Field& field, const SubgroupDesc& s);

struct OrbitPartition {
  /// Each orbit sorted; orbits ordered by least element.
  std::vector<std::vector<FieldElement>> orbits;
  /// Orbit sizes, ascending.
  std::vector<std::uint64_t> sizes;
};

OrbitPartition orbits(const Field& field, const SubgroupDesc& s);

/// |S'|: the number of k-subsets of F_q that are unions of S-orbits.
BigInt fixed_subset_count(const Field& field, const SubgroupDesc& s, std::int64_t k);

/// <S u T_1 u ... u T_n> where each T_i is an immediate supergroup of s and
/// s has b = 0, evaluated by the closed join formulas.  Throws
/// std::invalid_argument if a selected group is not an immediate supergroup.
SubgroupDesc join(const Field& field, const SubgroupDesc& s,
                  std::span<const SubgroupDesc> selection);

/// <S u T> for arbitrary subgroups, computed from descriptors.
SubgroupDesc join_pair(const Field& field, const SubgroupDesc& s, const SubgroupDesc& t);

}  // namespace aglstab
