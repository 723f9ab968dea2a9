// Acceptance suite: one PASS/FAIL line per criterion.  Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "aglstab/cli.hpp"
#include "aglstab/counting.hpp"
#include "aglstab/designs.hpp"
#include "aglstab/numtheory.hpp"
#include "aglstab/oracle.hpp"

using namespace aglstab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(std::string what) {
    ok = false;
    if (failures.size() < 10) failures.push_back(std::move(what));
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<std::uint64_t> prime_powers_upto(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q <= n; ++q) {
    if (prime_power(q)) out.push_back(q);
  }
  return out;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) { return *checked_pow(b, e); }

std::string shape_str(std::uint64_t q, const ClassShape& s, std::int64_t k) {
  std::ostringstream os;
  os << "q=" << q << " d=" << s.d << " i=" << s.i << " j=" << s.j << " k=" << k;
  return os.str();
}

// N for any 0 <= k <= q: the gated count where the congruence holds, else the
// ungated sum (which the zero pattern says is 0).
BigInt n_any(const ClassParams& c) { return class_violation(c) ? evaluate_N(c) : count_N(c); }

struct CliResult {
  int code;
  std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "aglstab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// 1. Closed form = lattice walk = brute force.
Outcome three_way() {
  Outcome o;
  const auto start = Clock::now();
  OracleLimits limits;
  limits.workers = workers();
  std::size_t checks = 0;
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
    const auto [p, alpha] = *prime_power(q);
    const Field field = make_field(p, alpha);
    for (const ClassShape& shape : enumerate_classes(p, alpha)) {
      const SubgroupDesc rep = class_representative(field, shape, limits);
      const LatticeCoefficients coeffs = lattice_coefficients(field, rep, limits);
      for (std::int64_t k = 0; k <= static_cast<std::int64_t>(q); ++k) {
        const ClassParams c = make_class_params(p, alpha, k, shape.d, shape.i, shape.j);
        const BigInt closed = n_any(c);
        const BigInt lattice = count_N_via_lattice(field, coeffs, k);
        const BigInt brute = count_N_bruteforce(field, rep, k, limits);
        ++checks;
        if (closed != lattice || lattice != brute) {
          o.fail(shape_str(q, shape, k) + ": closed=" + closed.str() + " lattice=" +
                 lattice.str() + " brute=" + brute.str());
        }
      }
    }
  }
  const double t = seconds_since(start);
  if (t >= 300) o.fail("took " + std::to_string(t) + " s");
  o.detail = std::to_string(checks) + " (class, k) checks in " + std::to_string(t) + " s";
  return o;
}

// 2. k = 0, q; k = 1; k = 2 special cases for every prime power q <= 101.
Outcome special_cases() {
  Outcome o;
  std::size_t checks = 0;
  for (std::uint64_t q : prime_powers_upto(101)) {
    const auto [p, alpha] = *prime_power(q);
    for (const ClassShape& shape : enumerate_classes(p, alpha)) {
      const unsigned beta = static_cast<unsigned>(
          mult_order(static_cast<std::int64_t>(p), static_cast<std::int64_t>(shape.d)) * shape.i *
          shape.j);
      const bool full = shape.d == q - 1 && beta == alpha;
      std::map<std::int64_t, std::uint64_t> expected;
      expected[0] = expected[static_cast<std::int64_t>(q)] = full ? 1 : 0;
      if (q == 2) {
        expected[1] = shape.d == 1 && beta == 0 ? 2 : 0;
      } else {
        expected[1] = shape.d == q - 1 && beta == 0 ? 1 : 0;
        if (q % 2 == 0) {
          expected[2] = shape.d == 1 && beta == 1 ? q / 2 : 0;
        } else {
          expected[2] = shape.d == 2 && beta == 0 ? (q - 1) / 2 : 0;
        }
      }
      for (const auto& [k, want] : expected) {
        const ClassParams c = make_class_params(p, alpha, k, shape.d, shape.i, shape.j);
        const BigInt got = n_any(c);
        ++checks;
        if (got != want) {
          o.fail(shape_str(q, shape, k) + ": got " + got.str() + ", want " + std::to_string(want));
        }
      }
    }
  }
  o.detail = std::to_string(checks) + " special-case values for q <= 101";
  return o;
}

// 3. N(S, k) = N(S, q - k) and N(S, k) <= |S'|.
Outcome symmetry_and_bound() {
  Outcome o;
  std::size_t checks = 0;
  for (std::uint64_t q : prime_powers_upto(101)) {
    const auto [p, alpha] = *prime_power(q);
    for (const ClassShape& shape : enumerate_classes(p, alpha)) {
      std::vector<BigInt> n(q + 1);
      for (std::int64_t k = 0; k <= static_cast<std::int64_t>(q); ++k) {
        n[k] = n_any(make_class_params(p, alpha, k, shape.d, shape.i, shape.j));
      }
      const ClassParams c0 = make_class_params(p, alpha, 0, shape.d, shape.i, shape.j);
      for (std::int64_t k = 0; k <= static_cast<std::int64_t>(q); ++k) {
        ++checks;
        const BigInt bound = s_qk(static_cast<std::int64_t>(q), k, static_cast<std::int64_t>(shape.d),
                                  static_cast<std::int64_t>(ipow(p, c0.beta)));
        if (n[k] != n[q - k]) o.fail(shape_str(q, shape, k) + ": N(k) != N(q-k)");
        if (n[k] < 0 || n[k] > bound) {
          o.fail(shape_str(q, shape, k) + ": N=" + n[k].str() + " outside [0, " + bound.str() + "]");
        }
      }
    }
  }
  o.detail = std::to_string(checks) + " (class, k) pairs for q <= 101";
  return o;
}

// 4. Census of all k-subsets for q <= 13.
Outcome partition_identity() {
  Outcome o;
  OracleLimits limits;
  limits.workers = workers();
  std::size_t censuses = 0;
  for (std::uint64_t q : prime_powers_upto(13)) {
    const auto [p, alpha] = *prime_power(q);
    const Field field = make_field(p, alpha);
    const auto groups = all_subgroups(field, limits);
    for (std::int64_t k = 0; k <= static_cast<std::int64_t>(q); ++k) {
      const StabilizerCensus census = full_census(field, k, limits);
      ++censuses;
      BigInt total = 0;
      for (const auto& [s, n] : census) total += n;
      if (total != binomial(static_cast<std::int64_t>(q), k)) {
        o.fail("q=" + std::to_string(q) + " k=" + std::to_string(k) + ": census sums to " +
               total.str());
      }
      for (const SubgroupDesc& s : groups) {
        const ClassShape shape = class_of(field, s);
        const BigInt want = n_any(make_class_params(p, alpha, k, shape.d, shape.i, shape.j));
        const auto it = census.find(s);
        const BigInt got = it == census.end() ? BigInt(0) : it->second;
        if (got != want) {
          o.fail(shape_str(q, shape, k) + " b=" + std::to_string(s.b.value) + ": census " +
                 got.str() + ", closed form " + want.str());
        }
      }
    }
  }

  const Field f7 = make_field(7, 1);
  BigInt order3 = 0, order2 = 0, other = 0;
  for (const auto& [s, n] : full_census(f7, 3, limits)) {
    const auto order = subgroup_order(f7, s);
    (order == 3 ? order3 : order == 2 ? order2 : other) += n;
  }
  if (order3 != 14 || order2 != 21 || other != 0) {
    o.fail("q=7 k=3 ledger: order 3 -> " + order3.str() + ", order 2 -> " + order2.str() +
           ", other -> " + other.str());
  }
  o.detail = std::to_string(censuses) + " censuses for q <= 13; q=7 k=3 ledger 14 + 21 = 35";
  return o;
}

// 5. The (7, 3, 1) zero and positivity for the trivial-translation classes.
Outcome exception_7_3_1() {
  Outcome o;
  if (count_N(make_class_params(7, 1, 3, 1, 1, 0)) != 0) o.fail("N(q=7, k=3, d=1, beta=0) != 0");
  std::size_t instances = 0;
  for (std::uint64_t q : prime_powers_upto(31)) {
    const auto [p, alpha] = *prime_power(q);
    for (std::int64_t k = 3; k <= static_cast<std::int64_t>(q / 2); ++k) {
      if (k % static_cast<std::int64_t>(p) == 0) continue;
      for (std::uint64_t d : divisors(q - 1)) {
        if (k % static_cast<std::int64_t>(d) > 1) continue;
        if (q == 7 && k == 3 && d == 1) continue;
        const unsigned odp =
            static_cast<unsigned>(mult_order(static_cast<std::int64_t>(p), static_cast<std::int64_t>(d)));
        const ClassParams c = make_class_params(p, alpha, k, d, alpha / odp, 0);
        ++instances;
        if (count_N(c) <= 0) o.fail(shape_str(q, c.shape(), k) + ": N = 0");
      }
    }
  }
  if (instances < 50) o.fail("only " + std::to_string(instances) + " instances");
  o.detail = "N(7,3,1) = 0; " + std::to_string(instances) + " positive instances for q <= 31";
  return o;
}

// 6. Design pipeline.
Outcome design_pipeline() {
  Outcome o;
  const CliResult r = cli({"design", "--q", "7", "--k", "3", "--d", "3"});
  for (const char* needle : {"(v,b,r,k,lambda) = (7,14,6,3,2)", "code: n=14 d=8 w=6 size=7",
                             "johnson: 56/8 = 7 (equality)", "A2(14,8,6) = 7"}) {
    if (r.code != 0 || r.out.find(needle) == std::string::npos) {
      o.fail(std::string("design --q 7 --k 3 --d 3 lacks '") + needle + "'");
    }
  }

  // Every orbit meets a block through 0 and 1, so subsets containing both
  // reach every orbit design.
  std::size_t designs = 0;
  for (std::uint64_t q : prime_powers_upto(13)) {
    const auto [p, alpha] = *prime_power(q);
    const Field field = make_field(p, alpha);
    for (std::uint64_t k = 2; k < q; ++k) {
      std::set<SubsetMask> covered;
      std::vector<std::uint32_t> pick(k);
      std::iota(pick.begin(), pick.end(), 0);
      while (true) {
        SubsetMask b(q);
        for (auto x : pick) b.set(x);
        if (!covered.count(b)) {
          try {
            const OrbitDesign design = orbit_design(field, b);
            covered.insert(design.blocks.begin(), design.blocks.end());
            const Code code = design_to_code(design.incidence);
            const DesignParams& dp = design.params;
            if (code.params.d != 2 * (dp.r - dp.lambda) || code.params.w != dp.r ||
                code.params.n != dp.b || !johnson_check(code.params)) {
              o.fail("q=" + std::to_string(q) + " B=" + b.to_bitstring() + ": code check failed");
            }
            ++designs;
          } catch (const std::exception& e) {
            o.fail("q=" + std::to_string(q) + " B=" + b.to_bitstring() + ": " + e.what());
          }
        }
        // Next k-combination of 0..q-1 that keeps 0 and 1.
        std::int64_t t = static_cast<std::int64_t>(k) - 1;
        while (t >= 2 && pick[t] == q - k + t) --t;
        if (t < 2) break;
        ++pick[t];
        for (std::size_t u = t + 1; u < k; ++u) pick[u] = pick[u - 1] + 1;
      }
    }
  }
  o.detail = "q=7 pipeline ok; " + std::to_string(designs) + " orbit designs for q <= 13 checked";
  return o;
}

// 7. Table generation for every prime power q <= 101.
Outcome table_generation() {
  Outcome o;
  double slowest = 0;
  std::size_t rows = 0;
  OracleLimits limits;
  limits.workers = workers();
  for (std::uint64_t q : prime_powers_upto(101)) {
    const auto [p, alpha] = *prime_power(q);
    const auto start = Clock::now();
    const CliResult r = cli({"table", "--q", std::to_string(q), "--format", "csv"});
    const double t = seconds_since(start);
    slowest = std::max(slowest, t);
    if (r.code != 0) {
      o.fail("q=" + std::to_string(q) + ": exit " + std::to_string(r.code));
      continue;
    }
    if (t >= 60) o.fail("q=" + std::to_string(q) + ": " + std::to_string(t) + " s");

    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    if (line != "k,d,odp,i,j,beta,N") o.fail("q=" + std::to_string(q) + ": bad header");
    std::optional<Field> field;
    if (q <= 16) field.emplace(make_field(p, alpha));
    std::map<ClassShape, SubgroupDesc> reps;
    while (std::getline(in, line)) {
      ++rows;
      std::istringstream fields(line);
      std::string cell;
      std::vector<std::string> cells;
      while (std::getline(fields, cell, ',')) cells.push_back(cell);
      if (cells.size() != 7) {
        o.fail("q=" + std::to_string(q) + ": malformed row " + line);
        continue;
      }
      ClassParams c = make_class_params(p, alpha, std::stoll(cells[0]), std::stoull(cells[1]),
                                        static_cast<unsigned>(std::stoul(cells[3])),
                                        static_cast<unsigned>(std::stoul(cells[4])));
      if (std::to_string(c.odp()) != cells[2] || std::to_string(c.beta) != cells[5]) {
        o.fail("q=" + std::to_string(q) + ": odp/beta mismatch in " + line);
      }
      if (auto why = class_violation(c)) o.fail("q=" + std::to_string(q) + ": " + line + ": " + *why);
      if (c.k > static_cast<std::int64_t>(q / 2)) o.fail("q=" + std::to_string(q) + ": k > q/2");
      if (field) {
        auto it = reps.find(c.shape());
        if (it == reps.end()) {
          it = reps.emplace(c.shape(), class_representative(*field, c.shape(), limits)).first;
        }
        const BigInt brute = count_N_bruteforce(*field, it->second, c.k, limits);
        if (brute.str() != cells[6]) o.fail("q=" + std::to_string(q) + ": " + line + " vs oracle " + brute.str());
      }
    }
    // The zero pattern: off-congruence k give 0 for every class.
    for (const ClassShape& shape : enumerate_classes(p, alpha)) {
      for (std::int64_t k = 0; k <= static_cast<std::int64_t>(q); ++k) {
        const ClassParams c = make_class_params(p, alpha, k, shape.d, shape.i, shape.j);
        if (class_violation(c) && evaluate_N(c) != 0) {
          o.fail(shape_str(q, shape, k) + ": nonzero off the congruence");
        }
      }
    }
  }
  o.detail = std::to_string(rows) + " rows for q <= 101; slowest q took " +
             std::to_string(slowest) + " s";
  return o;
}

// 8. Positivity fixtures.
Outcome positivity() {
  Outcome o;
  std::size_t h_cases = 0, trivial_cases = 0;
  for (std::uint64_t q : prime_powers_upto(101)) {
    const auto [p, alpha] = *prime_power(q);
    // Stabilizer of H itself.
    for (unsigned i = 1; i <= alpha; ++i) {
      if (alpha % i != 0) continue;
      std::vector<unsigned> betas;
      if (i == alpha) betas = {0, alpha};
      for (unsigned beta = 1; beta < alpha; ++beta) {
        if (std::gcd(alpha, beta) % i == 0) betas.push_back(beta);
      }
      for (unsigned beta : betas) {
        const ClassParams c =
            make_class_params(p, alpha, static_cast<std::int64_t>(ipow(p, beta)), ipow(p, i) - 1, 1,
                              beta / i);
        ++h_cases;
        if (c.beta != beta || class_violation(c) || count_N(c) <= 0) {
          o.fail("H-stabilizer q=" + std::to_string(q) + " beta=" + std::to_string(beta) +
                 " i=" + std::to_string(i));
        }
      }
    }
    // d = 1, beta = 0.
    for (std::int64_t k = 3; k <= static_cast<std::int64_t>(q / 2); ++k) {
      const bool admissible = p == 2 ? k % 4 == 2 : k % static_cast<std::int64_t>(p) == 0;
      if (!admissible) continue;
      ++trivial_cases;
      if (count_N(make_class_params(p, alpha, k, 1, alpha, 0)) <= 0) {
        o.fail("trivial class q=" + std::to_string(q) + " k=" + std::to_string(k));
      }
    }
  }

  // Products of small block sizes inside a subfield of order p^beta > 2.
  struct Instance {
    std::uint64_t q;
    ClassShape shape;
    std::int64_t k;
    auto operator<=>(const Instance&) const = default;
  };
  std::set<Instance> instances;
  std::size_t skipped_large_k = 0;
  for (std::uint64_t q : prime_powers_upto(1024)) {
    const auto [p, alpha] = *prime_power(q);
    for (unsigned beta = 1; beta < alpha; ++beta) {
      if (alpha % beta != 0 || ipow(p, beta) <= 2) continue;
      const std::uint64_t pb = ipow(p, beta);
      std::vector<std::pair<std::uint64_t, std::uint64_t>> slots;  // (c_i, k_i)
      for (std::uint64_t ci : divisors(pb - 1)) {
        for (std::uint64_t ki = 2; ki <= pb - 2; ++ki) {
          if (ki % p == 0) continue;
          if ((ki % ci == 0 && ki <= pb - 3) || (ki % ci == 1 % ci && ki >= 3)) slots.push_back({ci, ki});
        }
      }
      for (unsigned dt = 1; dt < alpha / beta; ++dt) {
        for (unsigned m = 1; dt + m <= alpha / beta; ++m) {
          std::function<void(unsigned, std::uint64_t, std::uint64_t)> walk =
              [&](unsigned depth, std::uint64_t g, std::uint64_t prod) {
                if (depth == m) {
                  if (g <= 1) return;
                  const unsigned odp = static_cast<unsigned>(
                      mult_order(static_cast<std::int64_t>(p), static_cast<std::int64_t>(g)));
                  const auto scale = checked_pow(p, beta * dt);
                  if (!scale || prod * *scale > q) {
                    ++skipped_large_k;
                    return;
                  }
                  instances.insert({q, {g, beta / odp, dt}, static_cast<std::int64_t>(prod * *scale)});
                  return;
                }
                for (const auto& [ci, ki] : slots) {
                  walk(depth + 1, std::gcd(g, ci), prod * ki);
                }
              };
          walk(0, 0, 1);
        }
      }
    }
  }
  OracleLimits limits;
  limits.workers = workers();
  std::size_t lattice_checked = 0;
  for (const Instance& in : instances) {
    const auto [p, alpha] = *prime_power(in.q);
    const ClassParams c = make_class_params(p, alpha, in.k, in.shape.d, in.shape.i, in.shape.j);
    if (auto why = class_violation(c)) {
      o.fail("subfield product " + shape_str(in.q, in.shape, in.k) + ": " + *why);
      continue;
    }
    const BigInt n = count_N(c);
    if (n <= 0) o.fail("subfield product " + shape_str(in.q, in.shape, in.k) + ": N = 0");
    if (in.q <= 64) {
      const Field field = make_field(p, alpha);
      const BigInt lattice = count_N_via_lattice(field, class_representative(field, in.shape), in.k, limits);
      ++lattice_checked;
      if (lattice != n) o.fail("subfield product " + shape_str(in.q, in.shape, in.k) + ": lattice disagrees");
    }
  }
  if (instances.empty()) o.fail("no subfield-product instance found");
  o.detail = std::to_string(h_cases) + " H-stabilizer, " + std::to_string(trivial_cases) + " trivial-class and " +
             std::to_string(instances.size()) + " subfield-product instances (" +
             std::to_string(lattice_checked) + " also by lattice; " +
             std::to_string(skipped_large_k) + " with k > q skipped)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"three-way agreement", three_way},
      {"closed-form special cases", special_cases},
      {"symmetry and bound", symmetry_and_bound},
      {"partition identity", partition_identity},
      {"(7,3,1) exception", exception_7_3_1},
      {"design pipeline", design_pipeline},
      {"table generation", table_generation},
      {"positivity fixtures", positivity},
  };
  int failed = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Outcome o;
    const auto start = Clock::now();
    try {
      o = criteria[n].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << n + 1 << ": " << criteria[n].first
              << " -- " << o.detail << " [" << seconds_since(start) << " s]\n";
    for (const auto& f : o.failures) std::cout << "    " << f << '\n';
    std::cout.flush();
  }
  return failed;
}
