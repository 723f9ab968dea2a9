#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace aglstab {

/// An element of F_{p^alpha}.  The value is the polynomial-basis coordinate
/// vector read as a base-p number (coefficient of x^i is digit i), so integer
/// order coincides with lexicographic coordinate order, highest degree first.
struct FieldElement {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

/// The subfield F_{p^degree} of the ambient field.
struct Subfield {
  unsigned degree = 1;

  friend constexpr auto operator<=>(Subfield, Subfield) = default;
};

/// F_{p^alpha} = F_p[x]/(f) where f is the lexicographically smallest monic
/// irreducible of degree alpha (f = x when alpha = 1).  Multiplication goes
/// through discrete log tables built from the first primitive element, so the
/// order is capped at kMaxOrder.
class Field {
 public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 22;

  Field(std::uint64_t p, unsigned alpha);

  std::uint32_t p() const { return p_; }
  unsigned alpha() const { return alpha_; }
  std::uint32_t order() const { return q_; }

  /// Coefficients low to high, length alpha + 1, leading coefficient 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  FieldElement generator() const { return generator_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  FieldElement element(std::uint64_t index) const;
  bool contains(FieldElement x) const { return x.value < q_; }

  std::uint32_t digit(FieldElement x, unsigned i) const {
    return (x.value / pow_p_[i]) % p_;
  }
  std::vector<std::uint32_t> coords(FieldElement x) const;
  FieldElement from_coords(std::span<const std::uint32_t> coords) const;

  FieldElement add(FieldElement x, FieldElement y) const;
  FieldElement sub(FieldElement x, FieldElement y) const;
  FieldElement neg(FieldElement x) const;
  FieldElement mul(FieldElement x, FieldElement y) const;
  FieldElement inv(FieldElement x) const;
  FieldElement div(FieldElement x, FieldElement y) const;
  FieldElement pow(FieldElement x, std::int64_t e) const;

  /// Discrete log to base generator(); x must be nonzero.
  std::uint32_t log(FieldElement x) const;
  FieldElement exp(std::uint64_t e) const { return {exp_[e % (q_ - 1)]}; }
  std::uint64_t mult_order(FieldElement x) const;

  bool operator==(const Field& other) const {
    return p_ == other.p_ && alpha_ == other.alpha_;
  }

 private:
  std::uint32_t p_;
  unsigned alpha_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  FieldElement generator_;
};

Field make_field(std::uint64_t p, std::int64_t alpha);
FieldElement find_generator(const Field& field);

/// Order of the subfield; throws std::invalid_argument unless degree | alpha.
std::uint32_t subfield_order(const Field& field, Subfield k);
/// A generator of the multiplicative group of the subfield.
FieldElement subfield_generator(const Field& field, Subfield k);

/// An F_p-subspace of F_q held as a reduced echelon basis: each basis vector
/// has leading (most significant nonzero) coordinate 1 and every other basis
/// vector is zero at that coordinate.  Basis order is by descending pivot, so
/// equal subspaces compare equal.
class Subspace {
 public:
  Subspace() = default;

  static Subspace span(const Field& field, std::span<const FieldElement> xs);

  const std::vector<FieldElement>& basis() const { return basis_; }
  unsigned dim() const { return static_cast<unsigned>(basis_.size()); }
  std::uint64_t size(const Field& field) const;

  bool contains(const Field& field, FieldElement x) const;
  /// The least element of the coset x + H.
  FieldElement reduce(const Field& field, FieldElement x) const;
  Subspace with(const Field& field, FieldElement x) const;
  bool is_subspace_of(const Field& field, const Subspace& other) const;
  bool closed_under(const Field& field, FieldElement scalar) const;
  /// All elements, ascending.
  std::vector<FieldElement> elements(const Field& field) const;

  friend auto operator<=>(const Subspace&, const Subspace&) = default;

 private:
  void insert(const Field& field, FieldElement x);

  std::vector<FieldElement> basis_;
  std::vector<unsigned> pivots_;
};

/// The smallest K-subspace of F_q containing xs.
Subspace span(const Field& field, std::span<const FieldElement> xs, Subfield k);
Subspace span(const Field& field, const Subspace& h, Subfield k);

/// H' = {x : xH is contained in H}, the largest subfield over which H is a module.
Subfield subfield_stabilizer(const Field& field, const Subspace& h);

struct QuotientSpace {
  Subspace denominator;
  /// Least element of each coset, ascending.
  std::vector<FieldElement> transversal;
};

QuotientSpace quotient(const Field& field, const Subspace& h);

/// Each 1-dimensional K-subspace of F_q/H, returned as its preimage in F_q.
/// Ordered by the least transversal element not in H that the line contains.
std::vector<Subspace> lines_of_quotient(const Field& field, const QuotientSpace& quotient,
                                        Subfield k);

/// Every K-subspace of F_q, sorted.
std::vector<Subspace> all_subspaces(const Field& field, Subfield k);

}  // namespace aglstab
