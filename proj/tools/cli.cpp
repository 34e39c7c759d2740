#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "lgsieve/dickman.hpp"
#include "lgsieve/discrepancy.hpp"
#include "lgsieve/io.hpp"
#include "lgsieve/lgset.hpp"
#include "lgsieve/numeric.hpp"
#include "lgsieve/primes.hpp"
#include "lgsieve/random.hpp"
#include "lgsieve/smoothcount.hpp"

namespace lgsieve::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerificationFailure {
  std::string what;
};

std::string num(double v) { return format_double(v); }

GridRange parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ':')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(piece, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != piece.size()) {
      throw UsageError("--theta: expected start:step:stop, got '" + text + "'");
    }
    parts.push_back(v);
  }
  if (parts.size() != 3) throw UsageError("--theta: expected start:step:stop, got '" + text + "'");
  if (!(parts[1] > 0.0) || parts[2] < parts[0]) {
    throw UsageError("--theta: grid needs step > 0 and stop >= start");
  }
  return {parts[0], parts[1], parts[2]};
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

void validate(RunConfig& cfg) {
  const auto open01 = [](double v) { return v > 0.0 && v < 1.0; };
  require(cfg.x >= 4, "--x: must be >= 4");
  require(open01(cfg.delta), "--delta: must lie in (0, 1), got " + num(cfg.delta));
  require(open01(cfg.epsilon), "--epsilon: must lie in (0, 1), got " + num(cfg.epsilon));
  if (cfg.c) {
    require(*cfg.c > cfg.delta && *cfg.c <= 1.0,
            "--c: must lie in (delta, 1], got " + num(*cfg.c));
  }
  require(open01(cfg.gamma), "--gamma: must lie in (0, 1), got " + num(cfg.gamma));
  require(cfg.workers >= 1, "--workers: must be >= 1");

  switch (cfg.command) {
    case Command::theorem2:
    case Command::sumset:
      require(cfg.theta > cfg.delta && cfg.theta <= 1.0,
              "--theta: must lie in (delta, 1], got " + num(cfg.theta));
      break;
    case Command::sweep:
      require(cfg.theta_grid.has_value(), "--theta: sweep needs a start:step:stop grid");
      for (const double t : cfg.theta_grid->points()) {
        require(t > cfg.delta && t <= 1.0, "--theta: grid point " + num(t) +
                                               " outside (delta, 1]");
      }
      require(cfg.seeds >= 1, "--seeds: must be >= 1");
      break;
    case Command::dickman:
      require(cfg.max_u >= 0.0 && std::isfinite(cfg.max_u), "--max-u: must be >= 0");
      require(cfg.step > 0.0 && cfg.step <= 1.0, "--step: must lie in (0, 1]");
      require(std::fabs(std::nearbyint(1.0 / cfg.step) * cfg.step - 1.0) <= 1e-9,
              "--step: 1/step must be an integer");
      require(cfg.du > 0.0, "--du: must be positive");
      require(cfg.empirical_x >= 2, "--empirical-x: must be >= 2");
      break;
    case Command::sieve_check:
      require(cfg.size >= 1 && cfg.size <= cfg.x, "--size: must lie in [1, x]");
      require(cfg.trials >= 1, "--trials: must be >= 1");
      break;
    default:
      break;
  }
  if (cfg.command == Command::sumset || cfg.command == Command::sweep) {
    const std::uint64_t pool = cfg.lg_at_2x ? cfg.x : cfg.x / 2;
    require(cfg.size_a >= 1 && cfg.size_a <= pool,
            "--size-a: must lie in [1, " + std::to_string(pool) + "]");
    require(cfg.size_b >= 1 && cfg.size_b <= pool,
            "--size-b: must lie in [1, " + std::to_string(pool) + "]");
  }
  if (cfg.table_limit) require(*cfg.table_limit >= 2, "--table-limit: must be >= 2");
}

void add_lg_options(CLI::App* sub, RunConfig& cfg, bool with_input) {
  sub->add_option("--x", cfg.x, "Global bound x");
  sub->add_option("--delta", cfg.delta, "Member primes exceed x^delta");
  sub->add_option_function<double>("--c", [&cfg](double v) { cfg.c = v; },
                                   "Cutoff exponent (default: chosen from --epsilon)");
  sub->add_option("--epsilon", cfg.epsilon, "Target coverage deficiency");
  sub->add_option_function<std::uint64_t>(
      "--table-limit", [&cfg](std::uint64_t v) { cfg.table_limit = v; },
      "Override the prime table ceiling");
  if (with_input) {
    sub->add_option_function<std::string>("--in", [&cfg](const std::string& p) { cfg.in = p; },
                                          "Load the LG set from JSON");
  }
}

void add_output_options(CLI::App* sub, RunConfig& cfg, std::optional<Format>& format) {
  sub->add_option_function<std::string>("--out", [&cfg](const std::string& p) { cfg.out = p; },
                                        "Output file (default: stdout)");
  sub->add_option_function<Format>("--format", [&format](Format f) { format = f; }, "csv or json")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}}));
}

Format default_format(Command command) {
  switch (command) {
    case Command::build:
    case Command::verify:
    case Command::theorem2:
    case Command::sumset:
      return Format::json;
    default:
      return Format::csv;
  }
}

// ---------------------------------------------------------------------------
// run() helpers

std::uint64_t table_bound(const RunConfig& cfg, std::uint64_t needed) {
  const std::uint64_t ceiling = cfg.table_limit ? *cfg.table_limit : table_ceiling();
  if (needed > ceiling) {
    throw ResourceLimitError("x = " + std::to_string(needed) + " exceeds the table ceiling " +
                             std::to_string(ceiling) +
                             " (raise it with --table-limit or LGSIEVE_TABLE_LIMIT)");
  }
  return ceiling;
}

struct Workspace {
  PrimeTable table;
  LGSet set;
  double cutoff;
};

Workspace prepare(const RunConfig& cfg, std::uint64_t x) {
  if (cfg.in) {
    LGSet set = load_lgset(*cfg.in);
    const std::uint64_t ceiling = table_bound(cfg, set.x());
    PrimeTable table(set.x(), ceiling);
    const double cutoff = cfg.c ? *cfg.c : set.params().c;
    return {std::move(table), std::move(set), cutoff};
  }
  const std::uint64_t ceiling = table_bound(cfg, x);
  PrimeTable table(x, ceiling);
  LGParams params{x, cfg.delta, 1.0, cfg.epsilon};
  LGSet set = construct(params, table);
  const double cutoff = cfg.c ? *cfg.c : choose_cutoff(set, cfg.epsilon);
  set = set.with_cutoff(cutoff);
  return {std::move(table), std::move(set), cutoff};
}

json violations_json(const LcmReport& report) {
  json arr = json::array();
  for (const auto& v : report.violations) arr.push_back({v.a, v.b, v.lcm});
  return arr;
}

json sieve_json(const SieveReport& r) {
  return {{"gamma", r.gamma},
          {"sigma", r.sigma},
          {"sum1", r.sum1},
          {"sum2", r.sum2},
          {"epsilon_prime", r.epsilon_prime},
          {"lhs1", r.lhs1},
          {"lhs2", r.lhs2},
          {"hyp1", r.hyp1_holds},
          {"hyp2", r.hyp2_holds},
          {"smooth_total", r.smooth_total},
          {"tau", r.tau},
          {"center", r.center},
          {"bound", r.bound},
          {"lower_bound", r.lower_bound},
          {"conclusion_tested", r.conclusion_tested},
          {"conclusion", r.conclusion_holds},
          {"lower_bound_holds", r.lower_bound_holds},
          {"sandwich", r.sandwich_holds}};
}

json discrepancy_summary_json(const DiscrepancyReport& r) {
  return {{"size", r.set_size},        {"cutoff", r.cutoff},
          {"x_power", r.x_power},      {"epsilon", r.epsilon},
          {"epsilon_prime", r.epsilon_prime},
          {"lhs", r.lhs},              {"lhs_expanded", r.lhs_expanded},
          {"rhs", r.rhs},              {"rhs_exact", r.rhs_exact},
          {"pair_sum", r.pair_sum},    {"pair_bound", r.pair_bound},
          {"pair_bound_holds", r.pair_bound_holds},
          {"below_rhs", r.below_rhs},  {"below_rhs_exact", r.below_rhs_exact},
          {"identity_holds", r.identity_holds}};
}

json experiment_json(const RunConfig& cfg, const LGSet& set, const ExperimentReport& r) {
  json doc;
  doc["params"] = {{"x", r.x},
                   {"delta", set.params().delta},
                   {"c", r.config.cutoff},
                   {"theta", r.config.theta},
                   {"gamma", r.config.gamma},
                   {"size_a", r.size_a},
                   {"size_b", r.size_b},
                   {"seed", cfg.seed},
                   {"lg_at_2x", cfg.lg_at_2x}};
  doc["sums"] = {{"sum1", r.sum1},
                 {"sum2", r.sum2},
                 {"epsilon_prime", r.epsilon_prime},
                 {"working_epsilon", r.working_epsilon},
                 {"rho_theta", r.rho_theta}};
  doc["hypotheses"] = {{"hyp1", r.sieve.hyp1_holds},
                       {"hyp2", r.sieve.hyp2_holds},
                       {"lhs1", r.sieve.lhs1},
                       {"lhs2", r.sieve.lhs2},
                       {"size_condition", r.size_condition_met},
                       {"rho_condition", r.rho_condition_met}};
  doc["bounds"] = {{"center", r.sieve.center},
                   {"bound", r.sieve.bound},
                   {"lower_bound", r.sieve.lower_bound},
                   {"variance_a", r.variance_a.lhs},
                   {"variance_b", r.variance_b.lhs},
                   {"rhs_a", r.variance_a.rhs_exact},
                   {"rhs_b", r.variance_b.rhs_exact},
                   {"cross_term_n1", r.cross_term_n1},
                   {"cross_term_n2", r.cross_term_n2},
                   {"cauchy_schwarz_bound", r.cauchy_schwarz_bound}};
  doc["direct_counts"] = {{"sigma", r.sigma},
                          {"smooth_count", r.smooth_count},
                          {"smooth_fraction", r.smooth_fraction},
                          {"sigma_sum1", r.sigma_sum1},
                          {"deviation", r.deviation},
                          {"deviation_rho", r.deviation_rho},
                          {"tau", r.sieve.tau}};
  doc["verdicts"] = {{"conclusion_tested", r.sieve.conclusion_tested},
                     {"conclusion", r.sieve.conclusion_holds},
                     {"lower_bound", r.sieve.lower_bound_holds},
                     {"sandwich", r.sieve.sandwich_holds},
                     {"residue_identity", r.residue_identity_holds},
                     {"moduli_checked", r.moduli_checked},
                     {"cross_within_bound", r.cross_within_bound}};
  doc["warnings"] = r.warnings;
  return doc;
}

constexpr const char* kSweepHeader =
    "x,delta,c,theta,gamma,setsizeA,setsizeB,seed,smooth_count,sigma_sum1,rho_theta,"
    "deviation,hyp1,hyp2,conclusion";

std::string sweep_row(const LGSet& set, std::uint64_t seed, const ExperimentReport& r) {
  auto flag = [](bool b) { return b ? std::string("1") : std::string("0"); };
  std::string row = std::to_string(r.x);
  row += ',' + num(set.params().delta);
  row += ',' + num(r.config.cutoff);
  row += ',' + num(r.config.theta);
  row += ',' + num(r.config.gamma);
  row += ',' + std::to_string(r.size_a);
  row += ',' + std::to_string(r.size_b);
  row += ',' + std::to_string(seed);
  row += ',' + std::to_string(r.smooth_count);
  row += ',' + num(r.sigma_sum1);
  row += ',' + num(r.rho_theta);
  row += ',' + num(r.deviation);
  row += ',' + flag(r.sieve.hyp1_holds);
  row += ',' + flag(r.sieve.hyp2_holds);
  row += ',' + flag(r.sieve.conclusion_holds);
  return row;
}

struct SampledSets {
  std::vector<std::uint64_t> a;
  std::vector<std::uint64_t> b;
};

// A is drawn first, then B, from one SplitMix64 stream seeded with `seed`.
SampledSets sample_sets(const RunConfig& cfg, std::uint64_t pool, std::uint64_t seed) {
  SplitMix64 rng(seed);
  SampledSets s;
  s.a = sample_without_replacement(pool, cfg.size_a, rng);
  s.b = sample_without_replacement(pool, cfg.size_b, rng);
  return s;
}

WeightedSet make_weights(const RunConfig& cfg, std::uint64_t x) {
  SplitMix64 rng(cfg.seed);
  switch (cfg.weights) {
    case WeightKind::ones: {
      std::vector<double> w(x + 1, 1.0);
      w[0] = 0.0;
      return WeightedSet::from_dense(x, std::move(w));
    }
    case WeightKind::random_dense: {
      std::vector<double> w(x + 1, 0.0);
      for (std::uint64_t n = 1; n <= x; ++n) w[n] = static_cast<double>(rng.below(4));
      return WeightedSet::from_dense(x, std::move(w));
    }
    case WeightKind::random_sparse: {
      std::vector<WeightedSet::Entry> entries;
      const std::uint64_t k = std::max<std::uint64_t>(1, x / 128);
      for (const std::uint64_t n : sample_without_replacement(x, k, rng)) {
        entries.emplace_back(n, static_cast<double>(1 + rng.below(3)));
      }
      return WeightedSet::from_entries(x, std::move(entries));
    }
  }
  throw std::logic_error("unknown weight kind");
}

void run_build(const RunConfig& cfg, std::ostream& out) {
  const Workspace ws = prepare(cfg, cfg.x);
  out << lgset_to_json(ws.set);
}

void run_verify(const RunConfig& cfg, std::ostream& out) {
  const Workspace ws = prepare(cfg, cfg.x);
  const LcmReport lcm = verify_pairwise_lcm(ws.set);
  json chain_failures = json::array();
  for (const std::uint64_t n : ws.set.members()) {
    if (!satisfies_chain_conditions(n, ws.set.x(), ws.set.prime_floor(), ws.table)) {
      chain_failures.push_back(n);
    }
  }
  const bool ok = lcm.ok() && chain_failures.empty();
  json doc{{"x", ws.set.x()},
           {"delta", ws.set.params().delta},
           {"c", ws.set.params().c},
           {"members", ws.set.size()},
           {"pairs_examined", lcm.pairs_examined},
           {"violations", violations_json(lcm)},
           {"chain_failures", chain_failures},
           {"ok", ok}};
  out << doc.dump(2) << '\n';
  if (!ok) throw VerificationFailure{"LG set verification failed"};
}

void run_coverage(const RunConfig& cfg, std::ostream& out) {
  const Workspace ws = prepare(cfg, cfg.x);
  const CoverageReport r = coverage(ws.set, ws.cutoff, ws.table, cfg.workers);
  if (cfg.format == Format::json) {
    json doc{{"x", r.x},
             {"delta", ws.set.params().delta},
             {"cutoff", r.cutoff_exponent},
             {"members_below_cutoff", r.members_below_cutoff},
             {"covered", r.covered_count},
             {"exceptional", r.exceptional_count},
             {"harmonic_sum", r.harmonic_sum},
             {"epsilon_prime", r.epsilon_prime}};
    out << doc.dump(2) << '\n';
  } else {
    out << kCoverageCsvHeader << '\n' << coverage_csv_row(r, ws.set.params().delta) << '\n';
  }
}

void run_dickman(const RunConfig& cfg, std::ostream& out) {
  const DickmanTable rho(cfg.max_u, cfg.step);
  const std::uint64_t ceiling = table_bound(cfg, cfg.empirical_x);
  const PrimeTable table(cfg.empirical_x, ceiling);
  const auto lpf = largest_factor_array(cfg.empirical_x, table);
  const double xd = static_cast<double>(cfg.empirical_x);

  out << "u,rho,empirical_rho,x\n";
  const auto rows = static_cast<std::uint64_t>(std::floor(cfg.max_u / cfg.du + 1e-9));
  for (std::uint64_t i = 0; i <= rows; ++i) {
    const double u = std::round(static_cast<double>(i) * cfg.du * 1e12) / 1e12;
    double empirical = 1.0;
    if (u > 1.0) {
      const long double y = power_threshold(cfg.empirical_x, 1.0 / u);
      std::uint64_t count = 1;
      for (std::uint64_t n = 2; n <= cfg.empirical_x; ++n) {
        if (static_cast<long double>(lpf[n]) <= y) ++count;
      }
      empirical = static_cast<double>(count) / xd;
    }
    out << num(u) << ',' << num(rho.rho(u)) << ',' << num(empirical) << ',' << cfg.empirical_x
        << '\n';
  }
}

void run_sieve_check(const RunConfig& cfg, std::ostream& out) {
  const Workspace ws = prepare(cfg, cfg.x);
  SplitMix64 rng(cfg.seed);
  bool ok = true;
  std::vector<DiscrepancyReport> reports;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    const auto c = sample_without_replacement(ws.set.x(), cfg.size, rng);
    reports.push_back(variance_report(c, ws.set, ws.cutoff, cfg.epsilon));
    const auto& r = reports.back();
    ok = ok && r.pair_bound_holds && r.below_rhs_exact && r.identity_holds;
  }

  if (cfg.format == Format::json) {
    json doc = json::array();
    for (const auto& r : reports) doc.push_back(discrepancy_summary_json(r));
    out << doc.dump(2) << '\n';
  } else if (cfg.trials == 1) {
    out << discrepancy_csv(reports.front());
  } else {
    out << "trial,size,lhs,rhs,rhs_exact,pair_sum,pair_bound,below_rhs,below_rhs_exact\n";
    for (std::size_t t = 0; t < reports.size(); ++t) {
      const auto& r = reports[t];
      out << t << ',' << r.set_size << ',' << num(r.lhs) << ',' << num(r.rhs) << ','
          << num(r.rhs_exact) << ',' << r.pair_sum << ',' << r.pair_bound << ','
          << (r.below_rhs ? 1 : 0) << ',' << (r.below_rhs_exact ? 1 : 0) << '\n';
    }
  }
  if (!ok) throw VerificationFailure{"discrepancy bound violated"};
}

void run_theorem2(const RunConfig& cfg, std::ostream& out) {
  const Workspace ws = prepare(cfg, cfg.x);
  const SmoothPartition part = partition(ws.set, cfg.theta, ws.cutoff, ws.table);
  const WeightedSet w = make_weights(cfg, ws.set.x());
  const SieveReport r = sieve_report(w, part, ws.set, cfg.gamma, ws.table);
  if (cfg.format == Format::json) {
    json doc{{"x", ws.set.x()},       {"delta", ws.set.params().delta},
             {"c", ws.cutoff},        {"theta", cfg.theta},
             {"seed", cfg.seed},      {"support", w.support_size()},
             {"report", sieve_json(r)}};
    out << doc.dump(2) << '\n';
  } else {
    out << "x,delta,c,theta,gamma,seed,sigma,sum1,sum2,lhs1,lhs2,smooth_total,tau,hyp1,hyp2,"
           "conclusion,sandwich\n";
    out << ws.set.x() << ',' << num(ws.set.params().delta) << ',' << num(ws.cutoff) << ','
        << num(cfg.theta) << ',' << num(cfg.gamma) << ',' << cfg.seed << ',' << num(r.sigma)
        << ',' << num(r.sum1) << ',' << num(r.sum2) << ',' << num(r.lhs1) << ','
        << num(r.lhs2) << ',' << num(r.smooth_total) << ',' << num(r.tau) << ','
        << (r.hyp1_holds ? 1 : 0) << ',' << (r.hyp2_holds ? 1 : 0) << ','
        << (r.conclusion_holds ? 1 : 0) << ',' << (r.sandwich_holds ? 1 : 0) << '\n';
  }
  if (!r.sandwich_holds || (r.conclusion_tested && !r.conclusion_holds)) {
    throw VerificationFailure{"smooth sieve implication failed"};
  }
}

bool unconditional_checks_pass(const ExperimentReport& r) {
  return r.residue_identity_holds && r.cross_within_bound && r.sieve.sandwich_holds;
}

void run_sumset(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::uint64_t lg_x = cfg.lg_at_2x ? 2 * cfg.x : cfg.x;
  const Workspace ws = prepare(cfg, lg_x);
  const auto sets = sample_sets(cfg, ws.set.x() / 2, cfg.seed);
  const ExperimentReport r = theorem3_experiment(
      sets.a, sets.b, ws.set, {cfg.theta, cfg.gamma, ws.cutoff}, ws.table);
  for (const auto& w : r.warnings) err << "warning: " << w << '\n';
  if (cfg.format == Format::json) {
    out << experiment_json(cfg, ws.set, r).dump(2) << '\n';
  } else {
    out << kSweepHeader << '\n' << sweep_row(ws.set, cfg.seed, r) << '\n';
  }
  if (!unconditional_checks_pass(r)) throw VerificationFailure{"sumset identity failed"};
}

void run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::uint64_t lg_x = cfg.lg_at_2x ? 2 * cfg.x : cfg.x;
  const Workspace ws = prepare(cfg, lg_x);
  bool ok = true;
  json docs = json::array();
  if (cfg.format == Format::csv) out << kSweepHeader << '\n';
  for (const double theta : cfg.theta_grid->points()) {
    for (std::uint64_t k = 0; k < cfg.seeds; ++k) {
      const std::uint64_t seed = cfg.seed + k;
      const auto sets = sample_sets(cfg, ws.set.x() / 2, seed);
      const ExperimentReport r =
          theorem3_experiment(sets.a, sets.b, ws.set, {theta, cfg.gamma, ws.cutoff}, ws.table);
      ok = ok && unconditional_checks_pass(r);
      if (cfg.format == Format::csv) {
        out << sweep_row(ws.set, seed, r) << '\n';
      } else {
        RunConfig row_cfg = cfg;
        row_cfg.seed = seed;
        docs.push_back(experiment_json(row_cfg, ws.set, r));
      }
    }
  }
  if (cfg.format == Format::json) out << docs.dump(2) << '\n';
  if (!ok) {
    err << "error: an unconditional identity failed in the sweep\n";
    throw VerificationFailure{"sweep identity failed"};
  }
}

}  // namespace

std::vector<double> GridRange::points() const {
  std::vector<double> pts;
  for (std::uint64_t i = 0;; ++i) {
    const double v = start + static_cast<double>(i) * step;
    if (v > stop + 1e-9) break;
    pts.push_back(std::round(v * 1e12) / 1e12);
  }
  return pts;
}

ParseResult parse_args(const std::vector<std::string>& argv) {
  RunConfig cfg;
  std::optional<Format> format;
  CLI::App app{"Local-global sets and the smooth sieve", "lgsieve"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lgsieve 0.1.0");

  auto* build = app.add_subcommand("build", "Construct an LG set and write it as JSON");
  add_lg_options(build, cfg, false);
  add_output_options(build, cfg, format);

  auto* verify = app.add_subcommand("verify", "Check pairwise lcm > x and the chain conditions");
  add_lg_options(verify, cfg, true);
  add_output_options(verify, cfg, format);

  auto* cov = app.add_subcommand("coverage", "Exhaustive coverage scan of [1, x]");
  add_lg_options(cov, cfg, true);
  add_output_options(cov, cfg, format);
  cov->add_option("--workers", cfg.workers, "Threads for the scan");

  auto* dickman = app.add_subcommand("dickman", "Tabulate rho(u) next to finite-x densities");
  dickman->add_option("--max-u", cfg.max_u, "Largest u");
  dickman->add_option("--step", cfg.step, "Integration step (1/step must be an integer)");
  dickman->add_option("--du", cfg.du, "Spacing of output rows");
  dickman->add_option("--x,--empirical-x", cfg.empirical_x, "x for Psi(x, x^(1/u)) / x");
  dickman->add_option_function<std::uint64_t>(
      "--table-limit", [&cfg](std::uint64_t v) { cfg.table_limit = v; },
      "Override the prime table ceiling");
  add_output_options(dickman, cfg, format);

  auto* sieve = app.add_subcommand("sieve-check", "Residue variance over LG moduli");
  add_lg_options(sieve, cfg, true);
  add_output_options(sieve, cfg, format);
  sieve->add_option("--size", cfg.size, "Random set size |C|");
  sieve->add_option("--trials", cfg.trials, "Number of random sets");
  sieve->add_option("--seed", cfg.seed, "PRNG seed");

  auto* thm2 = app.add_subcommand("theorem2", "Smooth sieve implication on one weight function");
  add_lg_options(thm2, cfg, true);
  add_output_options(thm2, cfg, format);
  thm2->add_option("--theta", cfg.theta, "Smoothness exponent");
  thm2->add_option("--gamma", cfg.gamma, "Hypothesis slack");
  thm2->add_option("--seed", cfg.seed, "PRNG seed");
  thm2->add_option("--weights", cfg.weights, "ones, random-dense or random-sparse")
      ->transform(CLI::CheckedTransformer(std::map<std::string, WeightKind>{
          {"ones", WeightKind::ones},
          {"random-dense", WeightKind::random_dense},
          {"random-sparse", WeightKind::random_sparse}}));

  std::string theta_text;
  auto* sumset = app.add_subcommand("sumset", "Smooth sums a + b for random A, B");
  auto* sweep = app.add_subcommand("sweep", "Sumset experiment over a theta grid");
  for (auto* sub : {sumset, sweep}) {
    add_lg_options(sub, cfg, true);
    add_output_options(sub, cfg, format);
    sub->add_option("--gamma", cfg.gamma, "Hypothesis slack");
    sub->add_option("--size-a", cfg.size_a, "|A|");
    sub->add_option("--size-b", cfg.size_b, "|B|");
    sub->add_option("--seed", cfg.seed, "PRNG seed");
    sub->add_flag("--lg-at-2x", cfg.lg_at_2x,
                  "Build the LG set at 2x and draw A, B from [1, x]");
  }
  sumset->add_option("--theta", cfg.theta, "Smoothness exponent");
  sweep->add_option("--theta", theta_text, "Grid start:step:stop")->required();
  sweep->add_option("--seeds", cfg.seeds, "Seeds per grid point (seed, seed+1, ...)");

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    return {std::nullopt, kExitUsage, app.help()};
  } catch (const CLI::CallForVersion&) {
    return {std::nullopt, kExitUsage, "lgsieve 0.1.0"};
  } catch (const CLI::ParseError& e) {
    return {std::nullopt, kExitUsage, e.what()};
  }

  const std::pair<CLI::App*, Command> table[] = {
      {build, Command::build},         {verify, Command::verify},
      {cov, Command::coverage},        {dickman, Command::dickman},
      {sieve, Command::sieve_check},   {thm2, Command::theorem2},
      {sumset, Command::sumset},       {sweep, Command::sweep}};
  for (const auto& [sub, command] : table) {
    if (sub->parsed()) cfg.command = command;
  }

  cfg.format = format.value_or(default_format(cfg.command));
  try {
    if (cfg.command == Command::sweep) cfg.theta_grid = parse_grid(theta_text);
    validate(cfg);
  } catch (const UsageError& e) {
    return {std::nullopt, kExitUsage, e.what()};
  }
  return {cfg, kExitOk, {}};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  int status = kExitOk;
  try {
    switch (config.command) {
      case Command::build: run_build(config, buffer); break;
      case Command::verify: run_verify(config, buffer); break;
      case Command::coverage: run_coverage(config, buffer); break;
      case Command::dickman: run_dickman(config, buffer); break;
      case Command::sieve_check: run_sieve_check(config, buffer); break;
      case Command::theorem2: run_theorem2(config, buffer); break;
      case Command::sumset: run_sumset(config, buffer, err); break;
      case Command::sweep: run_sweep(config, buffer, err); break;
    }
  } catch (const VerificationFailure& f) {
    // The report is still written so the failure can be inspected.
    err << "error: " << f.what << '\n';
    status = kExitVerificationFailed;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }

  if (!config.out) {
    out << buffer.str();
    return status;
  }
  std::ofstream file(*config.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open " << config.out->string() << " for writing\n";
    return kExitIo;
  }
  file << buffer.str();
  if (!file) {
    err << "error: write failed: " << config.out->string() << '\n';
    return kExitIo;
  }
  return status;
}

}  // namespace lgsieve::cli
