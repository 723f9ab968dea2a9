#include "aglstab/designs.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace aglstab {

namespace {

std::uint64_t exact_div(std::uint64_t num, std::uint64_t den, const char* what) {
  if (den == 0 || num % den != 0) {
    throw std::logic_error(std::string("non-integral design parameter ") + what);
  }
  return num / den;
}

std::uint64_t row_dot(const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y) {
  std::uint64_t n = 0;
  for (std::size_t c = 0; c < x.size(); ++c) n += x[c] & y[c];
  return n;
}

std::uint64_t row_weight(const std::vector<std::uint8_t>& x) {
  return static_cast<std::uint64_t>(std::count(x.begin(), x.end(), 1));
}

}  // namespace

void check_bibd(const IncidenceMatrix& m, const DesignParams& p) {
  if (m.points() != p.v || m.blocks() != p.b) {
    throw std::invalid_argument("incidence matrix has the wrong shape");
  }
  if (p.k < 2 || p.k > p.v) throw std::invalid_argument("block size must satisfy 2 <= k <= v");
  if (p.b * p.k != p.v * p.r || p.r * (p.k - 1) != p.lambda * (p.v - 1)) {
    throw std::invalid_argument("parameters violate bk = vr or r(k-1) = lambda(v-1)");
  }
  for (const auto& row : m.rows) {
    if (row.size() != p.b) throw std::invalid_argument("ragged incidence matrix");
    if (row_weight(row) != p.r) throw std::invalid_argument("row sum differs from r");
  }
  for (std::size_t c = 0; c < p.b; ++c) {
    std::uint64_t sum = 0;
    for (const auto& row : m.rows) sum += row[c];
    if (sum != p.k) throw std::invalid_argument("column sum differs from k");
  }
  for (std::size_t x = 0; x < p.v; ++x) {
    for (std::size_t y = x + 1; y < p.v; ++y) {
      if (row_dot(m.rows[x], m.rows[y]) != p.lambda) {
        throw std::invalid_argument("a pair of points meets in a number of blocks other than lambda");
      }
    }
  }
}

OrbitDesign orbit_design(const Field& field, const SubsetMask& b, const OracleLimits& limits) {
  const std::uint64_t q = field.order();
  const std::uint64_t k = b.count();
  if (b.universe() != q) throw std::invalid_argument("subset universe is not F_q");
  if (k < 2) throw std::invalid_argument("a design block needs at least 2 points");
  if (k == q) throw std::invalid_argument("B = F_q gives a single block; lambda is undefined");

  OrbitDesign design;
  design.stabilizer = stabilizer(field, b, limits);
  std::set<SubsetMask> images;
  for (std::uint32_t a = 1; a < q; ++a) {
    for (std::uint32_t t = 0; t < q; ++t) images.insert(image(field, {{a}, {t}}, b));
  }
  design.blocks.assign(images.begin(), images.end());

  DesignParams& p = design.params;
  p.v = q;
  p.k = k;
  p.b = exact_div(q * (q - 1), subgroup_order(field, design.stabilizer), "b");
  if (p.b != design.blocks.size()) throw std::logic_error("orbit size disagrees with |G|/|G_B|");
  p.r = exact_div(k * p.b, q, "r");
  p.lambda = exact_div(k * (k - 1) * p.b, q * (q - 1), "lambda");

  design.incidence.rows.assign(q, std::vector<std::uint8_t>(p.b, 0));
  for (std::size_t c = 0; c < p.b; ++c) {
    for (FieldElement x : design.blocks[c].elements()) design.incidence.rows[x.value][c] = 1;
  }
  check_bibd(design.incidence, p);
  return design;
}

Code design_to_code(const IncidenceMatrix& m) {
  if (m.points() < 2) throw std::invalid_argument("a code needs at least two codewords");
  const auto& rows = m.rows;
  const std::uint64_t r = row_weight(rows.front());
  const std::uint64_t lambda = row_dot(rows[0], rows[1]);
  std::uint64_t min_distance = m.blocks() + 1;
  for (std::size_t x = 0; x < rows.size(); ++x) {
    if (rows[x].size() != m.blocks()) throw std::invalid_argument("ragged incidence matrix");
    if (row_weight(rows[x]) != r) throw std::invalid_argument("rows have unequal weight");
    for (std::size_t y = x + 1; y < rows.size(); ++y) {
      std::uint64_t dist = 0;
      for (std::size_t c = 0; c < m.blocks(); ++c) dist += rows[x][c] != rows[y][c];
      if (dist == 0) throw std::invalid_argument("two rows of the incidence matrix are equal");
      min_distance = std::min(min_distance, dist);
    }
  }
  if (min_distance != 2 * (r - lambda)) {
    throw std::invalid_argument("minimum distance differs from 2(r - lambda)");
  }

  Code code;
  code.params = {m.blocks(), min_distance, r, rows.size()};
  for (const auto& row : rows) {
    std::string word;
    for (std::uint8_t bit : row) word += bit ? '1' : '0';
    code.codewords.push_back(std::move(word));
  }
  return code;
}

bool johnson_check(const CodeParams& c) {
  if (c.d % 2 != 0) throw std::invalid_argument("constant-weight codes have even distance");
  const BigInt n = c.n, w = c.w, delta = c.d / 2;
  const BigInt den = w * w - n * w + n * delta;
  if (den <= 0) throw std::invalid_argument("Johnson bound does not apply: w^2 - nw + n delta <= 0");
  return BigInt(c.size) * den == n * delta;
}

A2Determination a2_determination(const Field& field, std::int64_t k, std::uint64_t s) {
  const std::uint64_t q = field.order();
  if (k < 2 || static_cast<std::uint64_t>(k) >= q) {
    throw std::invalid_argument("k must satisfy 2 <= k < q");
  }
  if (s == 0 || (q * (q - 1)) % s != 0) {
    throw std::invalid_argument("s = " + std::to_string(s) + " does not divide q(q-1)");
  }
  const std::uint64_t uk = static_cast<std::uint64_t>(k);
  const std::uint64_t dist = 2 * uk * (q - uk), weight = uk * (q - 1);
  if (dist % s != 0 || weight % s != 0) {
    throw std::invalid_argument("A_2 arguments are not integers for s = " + std::to_string(s));
  }
  for (const ClassShape& shape : enumerate_classes(field.p(), field.alpha())) {
    const ClassParams c = make_class_params(field.p(), field.alpha(), k, shape.d, shape.i, shape.j);
    if (shape.d * *checked_pow(field.p(), c.beta) != s || class_violation(c)) continue;
    BigInt n = count_N(c);
    if (n > 0) {
      return {{q * (q - 1) / s, dist / s, weight / s, q}, shape, std::move(n)};
    }
  }
  throw std::invalid_argument("no subgroup of order " + std::to_string(s) +
                              " stabilizes a " + std::to_string(k) + "-subset exactly");
}

std::string blocks_text(const OrbitDesign& design) {
  std::string out;
  for (const SubsetMask& block : design.blocks) {
    bool first = true;
    for (FieldElement x : block.elements()) {
      if (!first) out += ' ';
      out += std::to_string(x.value);
      first = false;
    }
    out += '\n';
  }
  return out;
}

}  // namespace aglstab
