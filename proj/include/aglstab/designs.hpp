#pragma once

// Orbit block designs of AGL(1, q) and the constant-weight codes formed by
// the rows of their incidence matrices.

#include <cstdint>
#include <string>
#include <vector>

#include "aglstab/agl.hpp"
#include "aglstab/bigint.hpp"
#include "aglstab/counting.hpp"
#include "aglstab/ffield.hpp"
#include "aglstab/oracle.hpp"

namespace aglstab {

struct DesignParams {
  std::uint64_t v = 0, b = 0, r = 0, k = 0, lambda = 0;
  friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

/// v x b 0/1 matrix; rows follow field-element order, columns the block order.
struct IncidenceMatrix {
  std::vector<std::vector<std::uint8_t>> rows;

  std::size_t points() const { return rows.size(); }
  std::size_t blocks() const { return rows.empty() ? 0 : rows.front().size(); }
};

struct OrbitDesign {
  DesignParams params;
  SubgroupDesc stabilizer;
  /// Distinct images g(B), ascending by mask value.
  std::vector<SubsetMask> blocks;
  IncidenceMatrix incidence;
};

struct CodeParams {
  std::uint64_t n = 0;
  std::uint64_t d = 0;  // minimum distance, 2 delta
  std::uint64_t w = 0;
  std::uint64_t size = 0;
  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

struct Code {
  CodeParams params;
  std::vector<std::string> codewords;
};

/// Throws std::invalid_argument when the matrix is not the incidence matrix
/// of a design with these parameters.
void check_bibd(const IncidenceMatrix& m, const DesignParams& params);

/// The design whose blocks are the AGL(1, q)-orbit of B.  Requires 2 <= |B| < q.
OrbitDesign orbit_design(const Field& field, const SubsetMask& b, const OracleLimits& limits = {});

/// Rows of m as codewords, with the minimum distance measured pairwise.
Code design_to_code(const IncidenceMatrix& m);

/// Whether size meets the restricted Johnson bound n delta / (w^2 - nw + n delta)
/// with equality.  Throws when the denominator is not positive.
bool johnson_check(const CodeParams& c);

struct A2Determination {
  CodeParams code;  // size is the value of A_2(n, d, w)
  ClassShape witness;
  BigInt witness_count;
};

/// A_2(q(q-1)/s, 2k(q-k)/s, k(q-1)/s) = q, witnessed by a class of order s
/// with a positive count.
A2Determination a2_determination(const Field& field, std::int64_t k, std::uint64_t s);

/// One block per line, as ascending element indices separated by spaces.
std::string blocks_text(const OrbitDesign& design);

}  // namespace aglstab
