#include "aglstab/agl.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "aglstab/counting.hpp"

namespace aglstab {

namespace {

void check_map(const Field& field, const AffineMap& f) {
  if (!field.contains(f.a) || !field.contains(f.b) || f.a.value == 0) {
    throw std::invalid_argument("affine map is not defined over F_" +
                                std::to_string(field.order()));
  }
}

void check_divisor(const Field& field, std::uint64_t d) {
  if (d == 0 || (field.order() - 1) % d != 0) {
    throw std::invalid_argument("d = " + std::to_string(d) + " does not divide q - 1");
  }
}

// The fixed point b / (1 - a) of x -> ax + b, a != 1.
FieldElement fixed_point(const Field& field, FieldElement a, FieldElement b) {
  return field.div(b, field.sub(field.one(), a));
}

}  // namespace

AffineMap identity_map() { return {}; }

FieldElement apply(const Field& field, const AffineMap& f, FieldElement x) {
  return field.add(field.mul(f.a, x), f.b);
}

AffineMap compose(const Field& field, const AffineMap& f, const AffineMap& g) {
  check_map(field, f);
  check_map(field, g);
  return {field.mul(f.a, g.a), field.add(field.mul(f.a, g.b), f.b)};
}

AffineMap inverse(const Field& field, const AffineMap& f) {
  check_map(field, f);
  const FieldElement ainv = field.inv(f.a);
  return {ainv, field.neg(field.mul(ainv, f.b))};
}

AffineMap power(const Field& field, const AffineMap& f, std::int64_t l) {
  check_map(field, f);
  const FieldElement al = field.pow(f.a, l);
  if (f.a == field.one()) {
    const auto p = static_cast<std::int64_t>(field.p());
    const auto c = static_cast<std::uint32_t>(((l % p) + p) % p);
    return {al, field.mul({c}, f.b)};
  }
  const FieldElement ratio = field.div(field.sub(al, field.one()), field.sub(f.a, field.one()));
  return {al, field.mul(ratio, f.b)};
}

FieldElement rotation(const Field& field, std::uint64_t d) {
  check_divisor(field, d);
  return field.exp((field.order() - 1) / d);
}

Subfield rotation_field(const Field& field, std::uint64_t d) {
  check_divisor(field, d);
  return {static_cast<unsigned>(
      mult_order(static_cast<std::int64_t>(field.p()), static_cast<std::int64_t>(d)))};
}

std::uint64_t subgroup_order(const Field& field, const SubgroupDesc& s) {
  return s.d * s.h.size(field);
}

AffineMap rotation_map(const Field& field, const SubgroupDesc& s) {
  return {rotation(field, s.d), s.b};
}

void validate(const Field& field, const SubgroupDesc& s) {
  check_divisor(field, s.d);
  if (!field.contains(s.b)) throw std::invalid_argument("b is not a field element");
  if (!s.h.closed_under(field, rotation(field, s.d))) {
    throw std::invalid_argument("H is not closed under multiplication by the rotation");
  }
  if (s.d == 1 && s.b.value != 0) throw std::invalid_argument("b must be 0 when d = 1");
  if (s.h.reduce(field, s.b) != s.b) throw std::invalid_argument("b is not reduced modulo H");
}

std::vector<AffineMap> subgroup_elements(const Field& field, const SubgroupDesc& s) {
  validate(field, s);
  const AffineMap gen = rotation_map(field, s);
  const auto translations = s.h.elements(field);
  std::vector<AffineMap> out;
  out.reserve(s.d * translations.size());
  AffineMap r = identity_map();
  for (std::uint64_t l = 0; l < s.d; ++l) {
    for (FieldElement h : translations) out.push_back(compose(field, r, {field.one(), h}));
    r = compose(field, gen, r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool contains(const Field& field, const SubgroupDesc& s, const AffineMap& f) {
  check_map(field, f);
  const std::uint64_t step = (field.order() - 1) / s.d;
  const std::uint64_t lg = field.log(f.a);
  if (lg % step != 0) return false;
  const AffineMap r = power(field, rotation_map(field, s), static_cast<std::int64_t>(lg / step));
  // f = r o (1, h) gives h = (f.b - r.b) / r.a.
  return s.h.contains(field, field.div(field.sub(f.b, r.b), r.a));
}

SubgroupDesc describe_group(const Field& field, std::span<const AffineMap> elements) {
  std::vector<FieldElement> translations;
  std::set<std::uint32_t> rotations;
  for (const AffineMap& f : elements) {
    check_map(field, f);
    rotations.insert(f.a.value);
    if (f.a == field.one()) translations.push_back(f.b);
  }
  SubgroupDesc s;
  s.d = rotations.size();
  s.h = Subspace::span(field, translations);
  if (s.d * s.h.size(field) != elements.size()) {
    throw std::invalid_argument("map set is not a group");
  }
  if (s.d > 1) {
    const FieldElement a = rotation(field, s.d);
    const auto it = std::find_if(elements.begin(), elements.end(),
                                 [&](const AffineMap& f) { return f.a == a; });
    if (it == elements.end()) throw std::invalid_argument("map set is not a group");
    s.b = s.h.reduce(field, it->b);
  }
  return s;
}

SubgroupDesc canonicalize(const Field& field, std::span<const AffineMap> generators) {
  const std::uint64_t q = field.order();
  std::vector<bool> seen(q * q, false);
  auto key = [q](const AffineMap& f) { return std::uint64_t{f.a.value} * q + f.b.value; };
  std::vector<AffineMap> group{identity_map()};
  seen[key(identity_map())] = true;
  for (std::size_t next = 0; next < group.size(); ++next) {
    for (const AffineMap& g : generators) {
      const AffineMap h = compose(field, g, group[next]);
      if (!seen[key(h)]) {
        seen[key(h)] = true;
        group.push_back(h);
      }
    }
  }
  return describe_group(field, group);
}

std::pair<SubgroupDesc, AffineMap> conjugate_to_b_zero(const Field& field,
                                                        const SubgroupDesc& s) {
  if (s.b.value == 0) return {s, identity_map()};
  if (s.d == 1) throw std::invalid_argument("b must be 0 when d = 1");
  const FieldElement a = rotation(field, s.d);
  const FieldElement c = field.div(s.b, field.sub(a, field.one()));
  return {SubgroupDesc{s.d, field.zero(), s.h}, AffineMap{field.one(), c}};
}

std::vector<SubgroupDesc> immediate_supergroups(const Field& field, const SubgroupDesc& s) {
  validate(field, s);
  if (s.b.value != 0) throw std::invalid_argument("immediate_supergroups needs b = 0");
  const std::uint32_t hprime = subfield_order(field, subfield_stabilizer(field, s.h));
  const QuotientSpace quot = quotient(field, s.h);
  std::vector<SubgroupDesc> out;
  if (s.d == 1) {
    for (std::uint64_t e : prime_set(hprime - 1)) {
      for (FieldElement b : quot.transversal) out.push_back({e, b, s.h});
    }
  } else {
    for (std::uint64_t e : prime_set(static_cast<std::int64_t>((hprime - 1) / s.d))) {
      out.push_back({s.d * e, field.zero(), s.h});
    }
  }
  for (Subspace& line : lines_of_quotient(field, quot, rotation_field(field, s.d))) {
    out.push_back({s.d, field.zero(), std::move(line)});
  }
  return out;
}

OrbitPartition orbits(const Field& field, const SubgroupDesc& s) {
  validate(field, s);
  std::vector<AffineMap> gens{rotation_map(field, s)};
  for (FieldElement h : s.h.basis()) gens.push_back({field.one(), h});
  std::vector<bool> seen(field.order(), false);
  OrbitPartition part;
  for (std::uint32_t start = 0; start < field.order(); ++start) {
    if (seen[start]) continue;
    std::vector<FieldElement> orbit{{start}};
    seen[start] = true;
    for (std::size_t next = 0; next < orbit.size(); ++next) {
      for (const AffineMap& g : gens) {
        const FieldElement y = apply(field, g, orbit[next]);
        if (!seen[y.value]) {
          seen[y.value] = true;
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    part.sizes.push_back(orbit.size());
    part.orbits.push_back(std::move(orbit));
  }
  std::sort(part.sizes.begin(), part.sizes.end());
  return part;
}

BigInt fixed_subset_count(const Field& field, const SubgroupDesc& s, std::int64_t k) {
  if (k < 0 || k > static_cast<std::int64_t>(field.order())) {
    throw std::out_of_range("k must lie in 0..q");
  }
  return s_qk(field.order(), k, static_cast<std::int64_t>(s.d),
              static_cast<std::int64_t>(s.h.size(field)));
}

SubgroupDesc join(const Field& field, const SubgroupDesc& s,
                  std::span<const SubgroupDesc> selection) {
  validate(field, s);
  if (s.b.value != 0) throw std::invalid_argument("join needs b = 0");
  const Subfield k = rotation_field(field, s.d);
  const std::uint32_t hprime = subfield_order(field, subfield_stabilizer(field, s.h));
  const std::uint32_t hsize = static_cast<std::uint32_t>(s.h.size(field));

  std::set<std::uint64_t> primes;
  std::vector<FieldElement> centres;  // B(C) for d = 1
  std::vector<FieldElement> gens(s.h.basis());
  for (const SubgroupDesc& t : selection) {
    validate(field, t);
    if (t.h == s.h && t.d > s.d && t.d % s.d == 0) {
      const std::uint64_t e = t.d / s.d;
      if (!is_prime(e) || ((hprime - 1) / s.d) % e != 0 || (s.d > 1 && t.b.value != 0)) {
        throw std::invalid_argument("selected group is not an immediate supergroup");
      }
      primes.insert(e);
      if (s.d == 1) {
        centres.push_back(field.div(t.b, field.sub(rotation(field, e), field.one())));
      }
    } else if (t.d == s.d && t.b.value == 0 && s.h.is_subspace_of(field, t.h) &&
               t.h.size(field) == std::uint64_t{hsize} * subfield_order(field, k)) {
      gens.insert(gens.end(), t.h.basis().begin(), t.h.basis().end());
    } else {
      throw std::invalid_argument("selected group is not an immediate supergroup");
    }
  }

  std::uint64_t prod = 1;
  for (std::uint64_t e : primes) prod *= e;
  SubgroupDesc result;
  result.d = s.d * prod;
  for (FieldElement u : centres) gens.push_back(field.sub(u, centres.front()));
  result.h = span(field, gens, rotation_field(field, result.d));
  if (!centres.empty()) {
    const FieldElement am1 = field.sub(rotation(field, result.d), field.one());
    result.b = result.h.reduce(field, field.mul(am1, centres.front()));
    for (FieldElement u : centres) {
      if (result.h.reduce(field, field.mul(am1, u)) != result.b) {
        throw std::logic_error("join depends on the choice of centre");
      }
    }
  }
  return result;
}

SubgroupDesc join_pair(const Field& field, const SubgroupDesc& s, const SubgroupDesc& t) {
  validate(field, s);
  validate(field, t);
  SubgroupDesc result;
  result.d = std::lcm(s.d, t.d);
  std::vector<FieldElement> gens(s.h.basis());
  gens.insert(gens.end(), t.h.basis().begin(), t.h.basis().end());
  std::vector<FieldElement> centres;
  for (const SubgroupDesc* g : {&s, &t}) {
    if (g->d > 1) centres.push_back(fixed_point(field, rotation(field, g->d), g->b));
  }
  if (centres.size() == 2) gens.push_back(field.sub(centres[0], centres[1]));
  result.h = span(field, gens, rotation_field(field, result.d));
  if (!centres.empty()) {
    const FieldElement a = rotation(field, result.d);
    result.b = result.h.reduce(field, field.mul(field.sub(field.one(), a), centres.front()));
  }
  return result;
}

}  // namespace aglstab
