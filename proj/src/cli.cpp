#include "aglstab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "aglstab/counting.hpp"
#include "aglstab/designs.hpp"
#include "aglstab/ffield.hpp"
#include "aglstab/numtheory.hpp"
#include "aglstab/oracle.hpp"

namespace aglstab {

namespace {

using nlohmann::ordered_json;

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<std::uint64_t> p;
  unsigned alpha = 1;
  std::optional<std::uint64_t> q;
  std::optional<std::int64_t> k, max_k;
  std::optional<std::uint64_t> d;
  std::optional<unsigned> i, j;
  bool full_range = false;
  std::optional<std::string> format;
  std::uint64_t oracle_budget = OracleLimits{}.subset_budget;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::string subset;
};

struct FieldSpec {
  std::uint64_t p;
  unsigned alpha;
  std::uint64_t q;
};

FieldSpec resolve_field(const RunConfig& cfg) {
  if (cfg.q) {
    const auto pp = prime_power(*cfg.q);
    if (!pp) throw InputError("q = " + std::to_string(*cfg.q) + " is not a prime power");
    return {pp->first, pp->second, *cfg.q};
  }
  if (!cfg.p) throw InputError("give --q or --p (and --alpha)");
  if (!is_prime(*cfg.p)) throw InputError(std::to_string(*cfg.p) + " is not prime");
  if (cfg.alpha < 1) throw InputError("alpha must be at least 1");
  const auto q = checked_pow(*cfg.p, cfg.alpha);
  if (!q || *q > (std::uint64_t{1} << 62)) throw InputError("q = p^alpha is too large");
  return {*cfg.p, cfg.alpha, *q};
}

Field open_field(const FieldSpec& f) {
  if (f.q > Field::kMaxOrder) {
    throw BudgetExceeded("q = " + std::to_string(f.q) + " is beyond the field table limit");
  }
  return make_field(f.p, f.alpha);
}

std::string format_of(const RunConfig& cfg, const char* fallback,
                      std::initializer_list<const char*> allowed) {
  const std::string f = cfg.format.value_or(fallback);
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  throw InputError("format " + f + " is not supported by this command");
}

OracleLimits limits_of(const RunConfig& cfg) {
  OracleLimits limits;
  limits.subset_budget = cfg.oracle_budget;
  limits.workers = cfg.workers;
  return limits;
}

std::int64_t last_k(const RunConfig& cfg, std::uint64_t q, std::uint64_t fallback) {
  const std::uint64_t last = cfg.max_k ? static_cast<std::uint64_t>(*cfg.max_k)
                                       : (cfg.full_range ? q : fallback);
  if ((cfg.max_k && *cfg.max_k < 0) || last > q) throw InputError("--max-k must lie in 0..q");
  return static_cast<std::int64_t>(last);
}

ordered_json record_json(const CountRecord& r) {
  return {{"k", r.k},     {"d", r.d},       {"odp", r.odp}, {"i", r.i},
          {"j", r.j},     {"beta", r.beta}, {"N", r.n.str()}};
}

void emit_records(std::ostream& out, const std::vector<CountRecord>& rows, const std::string& fmt) {
  if (fmt == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) arr.push_back(record_json(r));
    out << arr.dump(2) << '\n';
    return;
  }
  if (fmt == "csv") {
    out << "k,d,odp,i,j,beta,N\n";
    for (const auto& r : rows) {
      out << r.k << ',' << r.d << ',' << r.odp << ',' << r.i << ',' << r.j << ',' << r.beta << ','
          << r.n << '\n';
    }
    return;
  }
  for (const auto& r : rows) {
    out << "k=" << r.k << " d=" << r.d << " odp=" << r.odp << " i=" << r.i << " j=" << r.j
        << " beta=" << r.beta << " N=" << r.n << '\n';
  }
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
  const FieldSpec f = resolve_field(cfg);
  const std::string fmt = format_of(cfg, "csv", {"csv", "json", "text"});
  const auto rows = build_table(f.p, f.alpha, last_k(cfg, f.q, f.q / 2), cfg.workers);
  emit_records(out, rows, fmt);
  return kExitOk;
}

int cmd_count(const RunConfig& cfg, std::ostream& out) {
  const FieldSpec f = resolve_field(cfg);
  const std::string fmt = format_of(cfg, "csv", {"csv", "json", "text"});
  if (!cfg.k || !cfg.d || !cfg.i || !cfg.j) throw InputError("count needs --k, --d, --i and --j");
  const ClassParams c = make_class_params(f.p, f.alpha, *cfg.k, *cfg.d, *cfg.i, *cfg.j);
  if (auto why = class_violation(c)) throw InputError(*why);
  const CountRecord row{c.k, c.d, c.odp(), c.i, c.j, c.beta, count_N(c)};
  if (fmt == "json") {
    out << record_json(row).dump(2) << '\n';
  } else {
    emit_records(out, {row}, fmt);
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const FieldSpec f = resolve_field(cfg);
  const std::string fmt = format_of(cfg, "text", {"text", "csv", "json"});
  const OracleLimits limits = limits_of(cfg);
  if (f.q > limits.max_lattice_field_order) {
    throw BudgetExceeded("verify: q = " + std::to_string(f.q) + " exceeds the oracle limit " +
                         std::to_string(limits.max_lattice_field_order));
  }
  const Field field = open_field(f);
  const std::int64_t last = last_k(cfg, f.q, f.q);

  struct Check {
    ClassShape shape;
    std::int64_t k;
    BigInt closed, lattice, brute;
    bool ok() const { return closed == lattice && lattice == brute; }
  };
  std::vector<Check> checks;
  for (const ClassShape& shape : enumerate_classes(f.p, f.alpha)) {
    const SubgroupDesc rep = class_representative(field, shape, limits);
    const LatticeCoefficients coeffs = lattice_coefficients(field, rep, limits);
    for (std::int64_t k = 0; k <= last; ++k) {
      const ClassParams c = make_class_params(f.p, f.alpha, k, shape.d, shape.i, shape.j);
      checks.push_back({shape, k, evaluate_N(c), count_N_via_lattice(field, coeffs, k),
                        count_N_bruteforce(field, rep, k, limits)});
    }
  }
  const bool all_ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok(); });

  if (fmt == "csv") {
    out << "d,i,j,k,closed,lattice,brute,status\n";
    for (const Check& c : checks) {
      out << c.shape.d << ',' << c.shape.i << ',' << c.shape.j << ',' << c.k << ',' << c.closed
          << ',' << c.lattice << ',' << c.brute << ',' << (c.ok() ? "pass" : "FAIL") << '\n';
    }
  } else if (fmt == "json") {
    ordered_json arr = ordered_json::array();
    for (const Check& c : checks) {
      arr.push_back({{"d", c.shape.d}, {"i", c.shape.i}, {"j", c.shape.j}, {"k", c.k},
                     {"closed", c.closed.str()}, {"lattice", c.lattice.str()},
                     {"brute", c.brute.str()}, {"pass", c.ok()}});
    }
    out << ordered_json{{"q", f.q}, {"pass", all_ok}, {"checks", arr}}.dump(2) << '\n';
  } else {
    out << "q=" << f.q << "  rows: class (d,i,j); columns: k = 0.." << last << '\n';
    for (std::size_t t = 0; t < checks.size(); t += static_cast<std::size_t>(last + 1)) {
      const ClassShape& s = checks[t].shape;
      out << '(' << s.d << ',' << s.i << ',' << s.j << ")\t";
      for (std::int64_t k = 0; k <= last; ++k) out << (checks[t + k].ok() ? " ." : " X");
      out << '\n';
    }
    for (const Check& c : checks) {
      if (!c.ok()) {
        out << "mismatch d=" << c.shape.d << " i=" << c.shape.i << " j=" << c.shape.j
            << " k=" << c.k << ": closed=" << c.closed << " lattice=" << c.lattice
            << " brute=" << c.brute << '\n';
      }
    }
    out << (all_ok ? "all " : "not all ") << checks.size() << " checks agree\n";
  }
  if (!all_ok) throw VerificationFailure("closed form, lattice and brute force disagree");
  return kExitOk;
}

SubsetMask parse_subset(const std::string& text, std::uint64_t q) {
  SubsetMask mask(q);
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    unsigned long long x = 0;
    try {
      x = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InputError("bad subset element '" + item + "'");
    if (x >= q) throw InputError("subset element " + item + " is not below q");
    if (mask.test(x)) throw InputError("subset element " + item + " is repeated");
    mask.set(x);
  }
  return mask;
}

SubsetMask witness_subset(const Field& field, const FieldSpec& f, const RunConfig& cfg,
                          const OracleLimits& limits) {
  if (!cfg.k || !cfg.d) throw InputError("design needs --subset, or --k with --d");
  for (const ClassShape& shape : enumerate_classes(f.p, f.alpha)) {
    if (shape.d != *cfg.d || (cfg.i && shape.i != *cfg.i) || (cfg.j && shape.j != *cfg.j)) continue;
    const ClassParams c = make_class_params(f.p, f.alpha, *cfg.k, shape.d, shape.i, shape.j);
    if (class_violation(c) || count_N(c) == 0) continue;
    const SubgroupDesc rep = class_representative(field, shape, limits);
    if (auto found = find_subset_with_stabilizer(field, rep, *cfg.k, limits)) return *found;
    throw VerificationFailure("positive count but no subset found for class (d=" +
                              std::to_string(shape.d) + ", i=" + std::to_string(shape.i) +
                              ", j=" + std::to_string(shape.j) + ")");
  }
  throw InputError("N = 0 for every class with d = " + std::to_string(*cfg.d) + " at k = " +
                   std::to_string(*cfg.k));
}

int cmd_design(const RunConfig& cfg, std::ostream& out) {
  const FieldSpec f = resolve_field(cfg);
  const std::string fmt = format_of(cfg, "text", {"text", "json"});
  const OracleLimits limits = limits_of(cfg);
  const Field field = open_field(f);
  const SubsetMask subset =
      cfg.subset.empty() ? witness_subset(field, f, cfg, limits) : parse_subset(cfg.subset, f.q);
  if (cfg.k && !cfg.subset.empty() && subset.count() != static_cast<std::uint64_t>(*cfg.k)) {
    throw InputError("--k does not match the size of --subset");
  }

  const OrbitDesign design = orbit_design(field, subset, limits);
  const Code code = design_to_code(design.incidence);
  const bool johnson = johnson_check(code.params);
  const std::uint64_t order = subgroup_order(field, design.stabilizer);
  const A2Determination a2 =
      a2_determination(field, static_cast<std::int64_t>(design.params.k), order);
  if (!johnson) throw VerificationFailure("orbit design code misses Johnson equality");

  const DesignParams& p = design.params;
  const CodeParams& c = code.params;
  const std::uint64_t delta = c.d / 2;
  const std::uint64_t num = c.n * delta, den = c.w * c.w + c.n * delta - c.n * c.w;
  std::vector<std::uint32_t> points;
  for (FieldElement x : subset.elements()) points.push_back(x.value);

  if (fmt == "json") {
    ordered_json blocks = ordered_json::array();
    for (const SubsetMask& b : design.blocks) {
      ordered_json block = ordered_json::array();
      for (FieldElement x : b.elements()) block.push_back(x.value);
      blocks.push_back(block);
    }
    ordered_json doc = {
        {"q", f.q},
        {"subset", points},
        {"stabilizer",
         {{"d", design.stabilizer.d}, {"b", design.stabilizer.b.value},
          {"h_order", design.stabilizer.h.size(field)}, {"order", order}}},
        {"params", {{"v", p.v}, {"b", p.b}, {"r", p.r}, {"k", p.k}, {"lambda", p.lambda}}},
        {"blocks", blocks},
        {"code", {{"n", c.n}, {"d", c.d}, {"w", c.w}, {"size", c.size}}},
        {"codewords", code.codewords},
        {"johnson", {{"numerator", num}, {"denominator", den}, {"equality", johnson}}},
        {"a2", {{"n", a2.code.n}, {"d", a2.code.d}, {"w", a2.code.w}, {"value", a2.code.size}}},
    };
    out << doc.dump(2) << '\n';
    return kExitOk;
  }

  out << "subset:";
  for (auto x : points) out << ' ' << x;
  out << "\nstabilizer: d=" << design.stabilizer.d << " b=" << design.stabilizer.b.value
      << " |H|=" << design.stabilizer.h.size(field) << " order=" << order << '\n';
  out << "design: (v,b,r,k,lambda) = (" << p.v << ',' << p.b << ',' << p.r << ',' << p.k << ','
      << p.lambda << ")\n";
  out << "blocks:\n" << blocks_text(design);
  out << "code: n=" << c.n << " d=" << c.d << " w=" << c.w << " size=" << c.size << '\n';
  out << "codewords:\n";
  for (const auto& word : code.codewords) out << word << '\n';
  out << "johnson: " << num << '/' << den << " = " << (den ? num / den : 0)
      << (johnson ? " (equality)" : " (strict)") << '\n';
  out << "A2(" << a2.code.n << ',' << a2.code.d << ',' << a2.code.w << ") = " << a2.code.size
      << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Count subsets of F_q by their stabilizer in AGL(1, q)", "aglstab"};
  app.require_subcommand(1);

  auto add_field_flags = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "characteristic");
    sub->add_option("--alpha", cfg.alpha, "extension degree")->capture_default_str();
    sub->add_option("--q", cfg.q, "field order, factored automatically");
    sub->add_option("--format", cfg.format, "csv, json or text");
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
  };
  auto add_class_flags = [&](CLI::App* sub) {
    sub->add_option("--k", cfg.k, "subset size");
    sub->add_option("--d", cfg.d, "order of the rotation part");
    sub->add_option("--i", cfg.i);
    sub->add_option("--j", cfg.j);
  };
  auto add_range_flags = [&](CLI::App* sub) {
    sub->add_option("--max-k", cfg.max_k, "largest k");
    sub->add_flag("--full-range", cfg.full_range, "run k up to q instead of q/2");
  };

  CLI::App* table = app.add_subcommand("table", "count every class for 0 <= k <= q/2");
  add_field_flags(table);
  add_range_flags(table);

  CLI::App* count = app.add_subcommand("count", "count a single class");
  add_field_flags(count);
  add_class_flags(count);

  CLI::App* verify = app.add_subcommand("verify", "compare closed form, lattice walk and brute force");
  add_field_flags(verify);
  add_range_flags(verify);
  verify->add_option("--oracle-budget", cfg.oracle_budget, "candidate subsets per scan");

  CLI::App* design = app.add_subcommand("design", "build the orbit design and its code");
  add_field_flags(design);
  add_class_flags(design);
  design->add_option("--subset", cfg.subset, "comma-separated element indices");
  design->add_option("--oracle-budget", cfg.oracle_budget, "candidate subsets per scan");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*table) return cmd_table(cfg, out);
    if (*count) return cmd_count(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    return cmd_design(cfg, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudgetExceeded;
  } catch (const VerificationFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerificationFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitVerificationFailure;
  }
}

}  // namespace aglstab
