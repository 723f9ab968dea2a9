#include "aglstab/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "parallel.hpp"

namespace aglstab {

namespace {

void require_field_limit(const Field& field, std::uint64_t limit, const char* what) {
  if (field.order() > limit) {
    throw BudgetExceeded(std::string(what) + ": q = " + std::to_string(field.order()) +
                         " exceeds the oracle limit " + std::to_string(limit));
  }
}

void require_budget(const BigInt& candidates, std::uint64_t budget, const char* what) {
  if (candidates > budget) {
    throw BudgetExceeded(std::string(what) + ": " + candidates.str() +
                         " candidate subsets exceed the budget of " + std::to_string(budget));
  }
}

// Calls fn on every union of orbits with total size k, choosing orbits in
// include-first order.  fn returns false to stop.
void for_each_orbit_union(const OrbitPartition& part, std::size_t universe, std::int64_t k,
                          const std::function<bool(const SubsetMask&)>& fn) {
  const auto& orbits = part.orbits;
  std::vector<std::int64_t> suffix(orbits.size() + 1, 0);
  for (std::size_t t = orbits.size(); t-- > 0;) {
    suffix[t] = suffix[t + 1] + static_cast<std::int64_t>(orbits[t].size());
  }
  SubsetMask mask(universe);
  bool running = true;
  std::function<void(std::size_t, std::int64_t)> walk = [&](std::size_t t, std::int64_t need) {
    if (!running) return;
    if (need == 0) {
      running = fn(mask);
      return;
    }
    if (t == orbits.size() || suffix[t] < need) return;
    const auto size = static_cast<std::int64_t>(orbits[t].size());
    if (size <= need) {
      SubsetMask saved = mask;
      for (FieldElement x : orbits[t]) mask.set(x.value);
      walk(t + 1, need - size);
      mask = std::move(saved);
    }
    walk(t + 1, need);
  };
  walk(0, k);
}

}  // namespace

// ---------------------------------------------------------------------------
// SubsetMask

SubsetMask::SubsetMask(std::size_t universe)
    : universe_(universe), words_((universe + 63) / 64, 0) {}

SubsetMask SubsetMask::from_elements(std::size_t universe, std::span<const FieldElement> xs) {
  SubsetMask m(universe);
  for (FieldElement x : xs) {
    if (x.value >= universe) throw std::out_of_range("subset element out of range");
    m.set(x.value);
  }
  return m;
}

std::size_t SubsetMask::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<FieldElement> SubsetMask::elements() const {
  std::vector<FieldElement> out;
  for (std::size_t i = 0; i < universe_; ++i) {
    if (test(i)) out.push_back({static_cast<std::uint32_t>(i)});
  }
  return out;
}

SubsetMask SubsetMask::complement() const {
  SubsetMask m(universe_);
  for (std::size_t i = 0; i < universe_; ++i) {
    if (!test(i)) m.set(i);
  }
  return m;
}

std::string SubsetMask::to_bitstring() const {
  std::string s(universe_, '0');
  for (std::size_t i = 0; i < universe_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

std::strong_ordering operator<=>(const SubsetMask& x, const SubsetMask& y) {
  if (auto c = x.universe_ <=> y.universe_; c != 0) return c;
  for (std::size_t w = x.words_.size(); w-- > 0;) {
    if (auto c = x.words_[w] <=> y.words_[w]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

SubsetMask image(const Field& field, const AffineMap& f, const SubsetMask& b) {
  SubsetMask out(b.universe());
  for (FieldElement x : b.elements()) out.set(apply(field, f, x).value);
  return out;
}

// ---------------------------------------------------------------------------
// Stabilizers

SubgroupDesc stabilizer(const Field& field, const SubsetMask& b, const OracleLimits& limits) {
  require_field_limit(field, limits.max_field_order, "stabilizer");
  if (b.universe() != field.order()) throw std::invalid_argument("subset universe is not F_q");
  // The stabilizer of B equals that of its complement; scan the smaller side.
  const SubsetMask& set = 2 * b.count() <= field.order() ? b : b.complement();
  const auto members = set.elements();
  std::vector<AffineMap> maps;
  for (std::uint32_t a = 1; a < field.order(); ++a) {
    const FieldElement av{a};
    if (members.empty()) {
      for (std::uint32_t t = 0; t < field.order(); ++t) maps.push_back({av, {t}});
      continue;
    }
    // f(x0) must land in B, which pins b to one of |B| candidates.
    const FieldElement ax0 = field.mul(av, members.front());
    for (FieldElement y : members) {
      const AffineMap f{av, field.sub(y, ax0)};
      const bool keeps = std::all_of(members.begin(), members.end(),
                                     [&](FieldElement x) { return set.test(apply(field, f, x).value); });
      if (keeps) maps.push_back(f);
    }
  }
  return describe_group(field, maps);
}

BigInt count_N_bruteforce(const Field& field, const SubgroupDesc& s, std::int64_t k,
                          const OracleLimits& limits) {
  require_field_limit(field, limits.max_field_order, "count_N_bruteforce");
  validate(field, s);
  require_budget(fixed_subset_count(field, s, k), limits.subset_budget, "count_N_bruteforce");
  const OrbitPartition part = orbits(field, s);
  const unsigned workers = std::max(1u, limits.workers);
  std::vector<std::uint64_t> hits(workers, 0);
  detail::parallel_for(workers, workers, [&](std::size_t w, unsigned) {
    std::uint64_t index = 0;
    for_each_orbit_union(part, field.order(), k, [&](const SubsetMask& m) {
      if (index++ % workers == w && stabilizer(field, m, limits) == s) ++hits[w];
      return true;
    });
  });
  BigInt total = 0;
  for (std::uint64_t h : hits) total += h;
  return total;
}

std::optional<SubsetMask> find_subset_with_stabilizer(const Field& field, const SubgroupDesc& s,
                                                      std::int64_t k,
                                                      const OracleLimits& limits) {
  require_field_limit(field, limits.max_field_order, "find_subset_with_stabilizer");
  validate(field, s);
  require_budget(fixed_subset_count(field, s, k), limits.subset_budget,
                 "find_subset_with_stabilizer");
  std::optional<SubsetMask> found;
  for_each_orbit_union(orbits(field, s), field.order(), k, [&](const SubsetMask& m) {
    if (stabilizer(field, m, limits) == s) found = m;
    return !found;
  });
  return found;
}

StabilizerCensus full_census(const Field& field, std::int64_t k, const OracleLimits& limits) {
  require_field_limit(field, limits.max_field_order, "full_census");
  const std::int64_t q = field.order();
  if (k < 0 || k > q) throw std::out_of_range("k must lie in 0..q");
  require_budget(binomial(q, k), limits.subset_budget, "full_census");

  const unsigned workers = std::max(1u, limits.workers);
  std::vector<StabilizerCensus> partial(workers);
  detail::parallel_for(workers, workers, [&](std::size_t w, unsigned) {
    // Lexicographic walk over k-combinations of 0..q-1.
    std::vector<std::int64_t> pick(static_cast<std::size_t>(k));
    for (std::int64_t t = 0; t < k; ++t) pick[t] = t;
    for (std::uint64_t index = 0;; ++index) {
      if (index % workers == w) {
        SubsetMask m(field.order());
        for (std::int64_t x : pick) m.set(static_cast<std::size_t>(x));
        partial[w][stabilizer(field, m, limits)] += 1;
      }
      std::int64_t t = k - 1;
      while (t >= 0 && pick[t] == q - k + t) --t;
      if (t < 0) break;
      ++pick[t];
      for (std::int64_t u = t + 1; u < k; ++u) pick[u] = pick[u - 1] + 1;
    }
  });
  StabilizerCensus census;
  for (const auto& part : partial) {
    for (const auto& [s, n] : part) census[s] += n;
  }
  return census;
}

// ---------------------------------------------------------------------------
// Lattice walk

LatticeCoefficients lattice_coefficients(const Field& field, const SubgroupDesc& s,
                                         const OracleLimits& limits) {
  validate(field, s);
  if (s.b.value != 0) throw std::invalid_argument("lattice walk needs b = 0");
  const auto supers = immediate_supergroups(field, s);
  LatticeCoefficients coeffs;
  if (supers.size() <= limits.explicit_join_limit) {
    std::vector<SubgroupDesc> selection;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << supers.size()); ++mask) {
      selection.clear();
      for (std::size_t t = 0; t < supers.size(); ++t) {
        if (mask >> t & 1) selection.push_back(supers[t]);
      }
      coeffs[join(field, s, selection)] += selection.size() % 2 == 0 ? 1 : -1;
    }
  } else {
    // Fold the supergroups in one at a time; selections with equal joins are
    // merged, so the state never exceeds the number of subgroups above s.
    coeffs[s] = 1;
    for (const SubgroupDesc& t : supers) {
      LatticeCoefficients next = coeffs;
      for (const auto& [j, c] : coeffs) {
        if (c != 0) next[join_pair(field, j, t)] -= c;
      }
      coeffs = std::move(next);
      if (coeffs.size() > limits.lattice_node_budget) {
        throw BudgetExceeded("lattice walk: more than " +
                             std::to_string(limits.lattice_node_budget) + " distinct joins");
      }
    }
  }
  std::erase_if(coeffs, [](const auto& entry) { return entry.second == 0; });
  return coeffs;
}

BigInt count_N_via_lattice(const Field& field, const LatticeCoefficients& coefficients,
                           std::int64_t k) {
  BigInt total = 0;
  for (const auto& [j, c] : coefficients) total += c * fixed_subset_count(field, j, k);
  return total;
}

BigInt count_N_via_lattice(const Field& field, const SubgroupDesc& s, std::int64_t k,
                           const OracleLimits& limits) {
  return count_N_via_lattice(field, lattice_coefficients(field, s, limits), k);
}

// ---------------------------------------------------------------------------
// Subgroup enumeration

std::vector<SubgroupDesc> all_subgroups(const Field& field, const OracleLimits& limits) {
  require_field_limit(field, limits.max_lattice_field_order, "all_subgroups");
  std::vector<SubgroupDesc> out;
  for (std::uint64_t d : divisors(field.order() - 1)) {
    for (const Subspace& h : all_subspaces(field, rotation_field(field, d))) {
      if (d == 1) {
        out.push_back({1, field.zero(), h});
        continue;
      }
      for (FieldElement b : quotient(field, h).transversal) out.push_back({d, b, h});
    }
  }
  return out;
}

ClassShape class_of(const Field& field, const SubgroupDesc& s) {
  validate(field, s);
  const unsigned odp = rotation_field(field, s.d).degree;
  const unsigned hprime = subfield_stabilizer(field, s.h).degree;
  const unsigned i = hprime / odp;
  return {s.d, i, s.h.dim() / (odp * i)};
}

SubgroupDesc class_representative(const Field& field, const ClassShape& shape,
                                  const OracleLimits& limits) {
  require_field_limit(field, limits.max_lattice_field_order, "class_representative");
  const Subfield k = rotation_field(field, shape.d);
  const unsigned dim = k.degree * shape.i * shape.j;
  for (const Subspace& h : all_subspaces(field, k)) {
    if (h.dim() == dim && subfield_stabilizer(field, h).degree == k.degree * shape.i) {
      return {shape.d, field.zero(), h};
    }
  }
  throw std::invalid_argument("no subspace realizes the class (d=" + std::to_string(shape.d) +
                              ", i=" + std::to_string(shape.i) + ", j=" + std::to_string(shape.j) +
                              ")");
}

}  // namespace aglstab
