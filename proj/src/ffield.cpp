#include "aglstab/ffield.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "aglstab/numtheory.hpp"

namespace aglstab {

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients low to high

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inverse_mod(std::uint32_t x, std::uint32_t p) {
  // p is prime and small, so Fermat is fine.
  std::uint64_t result = 1, base = x % p;
  for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo the monic-or-not polynomial b (b nonzero).
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inverse_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * b[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(prod), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  for (; e > 0; e >>= 1) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
  }
  return result;
}

// Digits of n in base p, length len.
Poly to_digits(std::uint64_t n, std::uint32_t p, unsigned len) {
  Poly d(len);
  for (unsigned i = 0; i < len; ++i) {
    d[i] = static_cast<std::uint32_t>(n % p);
    n /= p;
  }
  return d;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  for (unsigned m = 1; 2 * m <= deg; ++m) {
    const std::uint64_t count = *checked_pow(p, m);
    for (std::uint64_t low = 0; low < count; ++low) {
      Poly g = to_digits(low, p, m);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(std::uint32_t p, unsigned alpha) {
  if (alpha == 1) return {0, 1};
  const std::uint64_t count = *checked_pow(p, alpha);
  for (std::uint64_t low = 0; low < count; ++low) {
    Poly f = to_digits(low, p, alpha);
    f.push_back(1);
    if (f[0] != 0 && is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

Field::Field(std::uint64_t p, unsigned alpha) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (alpha == 0) throw std::invalid_argument("alpha must be positive");
  const auto q = checked_pow(p, alpha);
  if (!q || *q > kMaxOrder) {
    throw std::invalid_argument("field order " + std::to_string(p) + "^" + std::to_string(alpha) +
                                " exceeds the supported maximum");
  }
  p_ = static_cast<std::uint32_t>(p);
  alpha_ = alpha;
  q_ = static_cast<std::uint32_t>(*q);
  modulus_ = smallest_irreducible(p_, alpha_);
  pow_p_.resize(alpha_ + 1);
  pow_p_[0] = 1;
  for (unsigned i = 1; i <= alpha_; ++i) pow_p_[i] = pow_p_[i - 1] * p_;

  const auto primes = prime_set(q_ - 1);
  std::uint32_t gen = 1;
  for (;; ++gen) {
    const Poly g = to_digits(gen, p_, alpha_);
    const bool primitive = std::all_of(primes.begin(), primes.end(), [&](std::uint64_t r) {
      return poly_powmod(g, (q_ - 1) / r, modulus_, p_) != Poly{1};
    });
    if (primitive) break;
  }
  generator_ = {gen};

  exp_.resize(q_ - 1);
  log_.assign(q_, 0);
  const Poly g = to_digits(gen, p_, alpha_);
  Poly x{1};
  for (std::uint32_t e = 0; e < q_ - 1; ++e) {
    Poly padded = x;
    padded.resize(alpha_, 0);
    std::uint32_t index = 0;
    for (unsigned i = 0; i < alpha_; ++i) index += padded[i] * pow_p_[i];
    exp_[e] = index;
    log_[index] = e;
    x = poly_mulmod(x, g, modulus_, p_);
  }
}

FieldElement Field::element(std::uint64_t index) const {
  if (index >= q_) throw std::out_of_range("element index out of range");
  return {static_cast<std::uint32_t>(index)};
}

std::vector<std::uint32_t> Field::coords(FieldElement x) const {
  return to_digits(x.value, p_, alpha_);
}

FieldElement Field::from_coords(std::span<const std::uint32_t> coords) const {
  if (coords.size() != alpha_) throw std::invalid_argument("coordinate vector has wrong length");
  std::uint32_t index = 0;
  for (unsigned i = 0; i < alpha_; ++i) {
    if (coords[i] >= p_) throw std::invalid_argument("coordinate out of range");
    index += coords[i] * pow_p_[i];
  }
  return {index};
}

FieldElement Field::add(FieldElement x, FieldElement y) const {
  if (p_ == 2) return {x.value ^ y.value};
  if (alpha_ == 1) return {(x.value + y.value) % p_};
  std::uint32_t result = 0;
  for (unsigned i = 0; i < alpha_; ++i) {
    result += ((digit(x, i) + digit(y, i)) % p_) * pow_p_[i];
  }
  return {result};
}

FieldElement Field::neg(FieldElement x) const {
  if (p_ == 2) return x;
  std::uint32_t result = 0;
  for (unsigned i = 0; i < alpha_; ++i) {
    result += ((p_ - digit(x, i)) % p_) * pow_p_[i];
  }
  return {result};
}

FieldElement Field::sub(FieldElement x, FieldElement y) const { return add(x, neg(y)); }

FieldElement Field::mul(FieldElement x, FieldElement y) const {
  if (x.value == 0 || y.value == 0) return zero();
  const std::uint64_t e = std::uint64_t{log_[x.value]} + log_[y.value];
  return {exp_[e % (q_ - 1)]};
}

FieldElement Field::inv(FieldElement x) const {
  if (x.value == 0) throw std::domain_error("inverse of zero");
  return {exp_[(q_ - 1 - log_[x.value]) % (q_ - 1)]};
}

FieldElement Field::div(FieldElement x, FieldElement y) const { return mul(x, inv(y)); }

FieldElement Field::pow(FieldElement x, std::int64_t e) const {
  if (x.value == 0) {
    if (e < 0) throw std::domain_error("negative power of zero");
    return e == 0 ? one() : zero();
  }
  const std::int64_t n = q_ - 1;
  const std::int64_t r = ((static_cast<std::int64_t>(log_[x.value]) * (e % n)) % n + n) % n;
  return {exp_[static_cast<std::size_t>(r)]};
}

std::uint32_t Field::log(FieldElement x) const {
  if (x.value == 0) throw std::domain_error("log of zero");
  return log_[x.value];
}

std::uint64_t Field::mult_order(FieldElement x) const {
  const std::uint64_t n = q_ - 1;
  return n / std::gcd(n, std::uint64_t{log(x)});
}

Field make_field(std::uint64_t p, std::int64_t alpha) {
  if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
  return Field(p, static_cast<unsigned>(alpha));
}

FieldElement find_generator(const Field& field) { return field.generator(); }

std::uint32_t subfield_order(const Field& field, Subfield k) {
  if (k.degree == 0 || field.alpha() % k.degree != 0) {
    throw std::invalid_argument("subfield degree must divide the field degree");
  }
  return static_cast<std::uint32_t>(*checked_pow(field.p(), k.degree));
}

FieldElement subfield_generator(const Field& field, Subfield k) {
  const std::uint32_t r = subfield_order(field, k);
  return field.exp((field.order() - 1) / (r - 1));
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::span(const Field& field, std::span<const FieldElement> xs) {
  Subspace h;
  for (FieldElement x : xs) h.insert(field, x);
  return h;
}

std::uint64_t Subspace::size(const Field& field) const { return *checked_pow(field.p(), dim()); }

FieldElement Subspace::reduce(const Field& field, FieldElement x) const {
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    const std::uint32_t c = field.digit(x, pivots_[r]);
    if (c != 0) x = field.sub(x, field.mul({c}, basis_[r]));
  }
  return x;
}

bool Subspace::contains(const Field& field, FieldElement x) const {
  return reduce(field, x).value == 0;
}

void Subspace::insert(const Field& field, FieldElement x) {
  x = reduce(field, x);
  if (x.value == 0) return;
  unsigned pivot = field.alpha() - 1;
  while (field.digit(x, pivot) == 0) --pivot;
  x = field.mul(field.inv({field.digit(x, pivot)}), x);
  for (auto& b : basis_) {
    const std::uint32_t c = field.digit(b, pivot);
    if (c != 0) b = field.sub(b, field.mul({c}, x));
  }
  const auto pos = std::find_if(pivots_.begin(), pivots_.end(),
                                [&](unsigned other) { return other < pivot; });
  const auto offset = pos - pivots_.begin();
  basis_.insert(basis_.begin() + offset, x);
  pivots_.insert(pos, pivot);
}

Subspace Subspace::with(const Field& field, FieldElement x) const {
  Subspace h = *this;
  h.insert(field, x);
  return h;
}

bool Subspace::is_subspace_of(const Field& field, const Subspace& other) const {
  return std::all_of(basis_.begin(), basis_.end(),
                     [&](FieldElement b) { return other.contains(field, b); });
}

bool Subspace::closed_under(const Field& field, FieldElement scalar) const {
  return std::all_of(basis_.begin(), basis_.end(),
                     [&](FieldElement b) { return contains(field, field.mul(scalar, b)); });
}

std::vector<FieldElement> Subspace::elements(const Field& field) const {
  std::vector<FieldElement> out{field.zero()};
  for (FieldElement b : basis_) {
    const std::size_t n = out.size();
    for (std::uint32_t c = 1; c < field.p(); ++c) {
      const FieldElement scaled = field.mul({c}, b);
      for (std::size_t i = 0; i < n; ++i) out.push_back(field.add(out[i], scaled));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subspace span(const Field& field, std::span<const FieldElement> xs, Subfield k) {
  const FieldElement g = subfield_generator(field, k);
  std::vector<FieldElement> gens;
  gens.reserve(xs.size() * k.degree);
  for (FieldElement x : xs) {
    FieldElement y = x;
    for (unsigned e = 0; e < k.degree; ++e) {
      gens.push_back(y);
      y = field.mul(g, y);
    }
  }
  return Subspace::span(field, gens);
}

Subspace span(const Field& field, const Subspace& h, Subfield k) {
  return span(field, h.basis(), k);
}

Subfield subfield_stabilizer(const Field& field, const Subspace& h) {
  Subfield best{1};
  for (unsigned m = 1; m <= field.alpha(); ++m) {
    if (field.alpha() % m != 0) continue;
    if (h.closed_under(field, subfield_generator(field, {m}))) best = {m};
  }
  return best;
}

QuotientSpace quotient(const Field& field, const Subspace& h) {
  QuotientSpace result{h, {}};
  result.transversal.reserve(field.order() / h.size(field));
  for (std::uint32_t v = 0; v < field.order(); ++v) {
    if (h.reduce(field, {v}).value == v) result.transversal.push_back({v});
  }
  return result;
}

std::vector<Subspace> lines_of_quotient(const Field& field, const QuotientSpace& quotient,
                                        Subfield k) {
  const Subspace& h = quotient.denominator;
  std::vector<Subspace> lines;
  std::set<std::uint32_t> covered;
  for (FieldElement x : quotient.transversal) {
    if (x.value == 0 || covered.contains(x.value)) continue;
    std::vector<FieldElement> gens(h.basis());
    gens.push_back(x);
    Subspace line = span(field, gens, k);
    for (FieldElement y : line.elements(field)) covered.insert(h.reduce(field, y).value);
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<Subspace> all_subspaces(const Field& field, Subfield k) {
  std::set<Subspace> seen{Subspace{}};
  std::vector<Subspace> frontier{Subspace{}};
  while (!frontier.empty()) {
    std::vector<Subspace> next;
    for (const Subspace& h : frontier) {
      for (Subspace& bigger : lines_of_quotient(field, quotient(field, h), k)) {
        if (seen.insert(bigger).second) next.push_back(std::move(bigger));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace aglstab
