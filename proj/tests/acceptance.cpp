// Acceptance runner. Prints one PASS/FAIL line per criterion; exits nonzero
// if any selected criterion fails.
//
//   acceptance            run all ten
//   acceptance --only N   run criterion N

#include <lgsieve/dickman.hpp>
#include <lgsieve/discrepancy.hpp>
#include <lgsieve/lgset.hpp>
#include <lgsieve/random.hpp>
#include <lgsieve/smoothcount.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace lgsieve;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const PrimeTable& table() {
  static const PrimeTable t(100'000);
  return t;
}

constexpr std::uint64_t kGridX[] = {1'000, 10'000, 100'000};
constexpr double kGridDelta[] = {0.05, 0.1, 0.2};

std::vector<std::uint64_t> to_vector(std::span<const std::uint64_t> s) {
  return {s.begin(), s.end()};
}

// 1. pairwise lcm > x over the grid, under a minute
Outcome criterion_1() {
  const auto t0 = Clock::now();
  std::uint64_t violations = 0;
  std::uint64_t pairs = 0;
  for (const auto x : kGridX) {
    for (const auto d : kGridDelta) {
      const LGSet set = construct(LGParams{x, d, 1.0, 0.2}, table());
      const LcmReport r = verify_pairwise_lcm(set);
      violations += r.violations.size();
      pairs += r.pairs_examined;
    }
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && secs < 60.0,
          fmt("%llu violations over %llu pairs, %.2f s (limit 60 s)",
              static_cast<unsigned long long>(violations), static_cast<unsigned long long>(pairs),
              secs)};
}

// 2. at most one member divides each m, and find_divisor agrees with a scan
Outcome criterion_2() {
  std::uint64_t multi = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t checked = 0;
  for (const auto x : kGridX) {
    for (const auto d : kGridDelta) {
      const LGSet set = construct(LGParams{x, d, 1.0, 0.2}, table());
      const auto scan = oracle::scan_multiples(to_vector(set.members()), x);
      for (std::uint64_t m = 1; m <= x; ++m) {
        ++checked;
        if (scan.count[m] > 1) ++multi;
        const auto found = find_divisor(m, set, table());
        const bool agree = scan.count[m] == 0 ? !found.has_value()
                                              : (found && *found == scan.divisor[m]);
        if (!agree) ++mismatches;
      }
    }
  }
  return {multi == 0 && mismatches == 0,
          fmt("%llu m checked, %llu with >1 divisor, %llu find_divisor mismatches",
              static_cast<unsigned long long>(checked), static_cast<unsigned long long>(multi),
              static_cast<unsigned long long>(mismatches))};
}

// 3. harmonic sum vs covered fraction at c = 1 and the chosen cutoff
Outcome criterion_3() {
  int failures = 0;
  int cases = 0;
  double worst_slack = 1e300;
  for (const auto x : kGridX) {
    for (const auto d : kGridDelta) {
      const LGSet set = construct(LGParams{x, d, 1.0, 0.2}, table());
      for (const double c : {1.0, choose_cutoff(set, 0.2)}) {
        const CoverageReport r = coverage(set, c, table());
        const double xd = static_cast<double>(x);
        const double gap = std::fabs(r.harmonic_sum - static_cast<double>(r.covered_count) / xd);
        const double allowed = static_cast<double>(r.members_below_cutoff) / xd + 1.0 / xd;
        ++cases;
        if (!(gap <= allowed)) ++failures;
        worst_slack = std::min(worst_slack, allowed - gap);
      }
    }
  }
  return {failures == 0,
          fmt("%d/%d cases within bound, smallest slack %.3g", cases - failures, cases,
              worst_slack)};
}

// 4. construct equals the brute-force membership scan at x = 10^4
Outcome criterion_4() {
  constexpr std::uint64_t x = 10'000;
  std::uint64_t discrepancies = 0;
  std::uint64_t members = 0;
  for (const auto d : kGridDelta) {
    const LGSet set = construct(LGParams{x, d, 1.0, 0.2}, table());
    const auto floor =
        static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(x), d)));
    for (std::uint64_t n = 1; n <= x; ++n) {
      if (oracle::chain_member(n, x, floor) != set.contains(n)) ++discrepancies;
    }
    members += set.size();
  }
  return {discrepancies == 0,
          fmt("%llu discrepancies over 3 x 10^4 candidates (%llu members total)",
              static_cast<unsigned long long>(discrepancies),
              static_cast<unsigned long long>(members))};
}

// 5. counting step and sharpened variance bound on 100 random sets
Outcome criterion_5() {
  constexpr std::uint64_t x = 10'000;
  const LGSet set = construct(LGParams{x, 0.1, 1.0, 0.2}, table());
  const double chosen = choose_cutoff(set, 0.2);
  SplitMix64 rng(20'240'501);
  int pair_failures = 0;
  int bound_failures = 0;
  double worst_ratio = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = sample_without_replacement(x, 1'000, rng);
    for (const double cutoff : {1.0, chosen}) {
      const DiscrepancyReport r = variance_report(c, set, cutoff, 0.2);
      const double n = static_cast<double>(c.size());
      const double bound = n * (r.x_power + r.epsilon_prime * n);
      if (!(r.pair_sum <= c.size() * (c.size() - 1))) ++pair_failures;
      if (!(r.lhs < bound)) ++bound_failures;
      worst_ratio = std::max(worst_ratio, r.lhs / bound);
    }
  }
  return {pair_failures == 0 && bound_failures == 0,
          fmt("200 runs (c = 1 and c = %.2f): %d pair-count failures, %d bound failures, "
              "max lhs/bound %.4f",
              chosen, pair_failures, bound_failures, worst_ratio)};
}

// 6. rho(2) analytically, and rho against finite-x densities at x = 10^6
Outcome criterion_6() {
  const auto t0 = Clock::now();
  const DickmanTable rho(5.0);
  const PrimeTable big(1'000'000);
  const double err2 = std::fabs(rho.rho(2.0) - (1.0 - std::log(2.0)));
  bool ok = err2 < 1e-6;
  std::string detail = fmt("|rho(2) - (1 - ln 2)| = %.2e;", err2);
  for (const double u : {1.5, 2.0, 2.5, 3.0}) {
    const double emp = empirical_rho(1'000'000, u, big);
    const double gap = std::fabs(rho.rho(u) - emp);
    ok = ok && gap < 0.02;
    detail += fmt(" u=%.1f gap %.4f;", u, gap);
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < 30.0;
  detail += fmt(" limit 0.02, %.2f s (limit 30 s)", secs);
  return {ok, detail};
}

// 7. m with LG divisor q is x^theta-smooth iff q is in N1
Outcome criterion_7() {
  constexpr std::uint64_t x = 10'000;
  const LGSet set = construct(LGParams{x, 0.1, 1.0, 0.2}, table());
  std::uint64_t exceptions = 0;
  std::uint64_t checked = 0;
  for (const double theta : {0.4, 0.6}) {
    const SmoothPartition part = partition(set, theta, 1.0, table());
    std::vector<bool> in_n1(x + 1, false);
    for (const auto q : part.n1) in_n1[q] = true;
    const long double y = std::pow(static_cast<long double>(x), static_cast<long double>(theta));
    for (std::uint64_t m = 1; m <= x; ++m) {
      const auto q = find_divisor(m, set, table());
      if (!q) continue;
      ++checked;
      const bool smooth = static_cast<long double>(oracle::largest_prime(m)) <= y;
      if (smooth != in_n1[*q]) ++exceptions;
    }
  }
  return {exceptions == 0,
          fmt("%llu exceptions among %llu m with an LG divisor",
              static_cast<unsigned long long>(exceptions),
              static_cast<unsigned long long>(checked))};
}

// 8. conclusion whenever both hypotheses hold; sandwich always
Outcome criterion_8() {
  constexpr std::uint64_t x = 10'000;
  constexpr int kWanted = 50;
  const LGSet set = construct(LGParams{x, 0.1, 1.0, 0.2}, table());
  const SmoothPartition part = partition(set, 0.5, 1.0, table());
  SplitMix64 rng(8);

  int hyp_true = 0;
  int conclusion_ok = 0;
  int sandwich_fail = 0;
  int trials = 0;
  int dense_used = 0;
  int sparse_used = 0;
  while (hyp_true < kWanted && trials < 5'000) {
    ++trials;
    const bool dense = trials % 2 == 1;
    // dense: more than x/64 nonzero entries; sparse: at most x/64
    const std::uint64_t support = dense ? 200 + rng.below(x - 200) : 20 + rng.below(136);
    std::vector<WeightedSet::Entry> entries;
    const int shape = static_cast<int>(rng.below(3));
    for (const auto n : sample_without_replacement(x, support, rng)) {
      double w = 1.0;
      if (shape == 1) w = 0.01 + rng.unit();
      if (shape == 2) w = static_cast<double>(1 + rng.below(20));
      entries.emplace_back(n, w);
    }
    const WeightedSet ws = WeightedSet::from_entries(x, std::move(entries));
    const SieveReport r = sieve_report(ws, part, set, 0.2, table());
    if (!r.sandwich_holds) ++sandwich_fail;
    if (r.hyp1_holds && r.hyp2_holds) {
      ++hyp_true;
      (ws.is_dense() ? dense_used : sparse_used) += 1;
      if (r.conclusion_holds) ++conclusion_ok;
    }
  }
  const bool pass = hyp_true == kWanted && conclusion_ok == kWanted && sandwich_fail == 0;
  return {pass, fmt("%d/%d hypothesis-true sets (%d dense, %d sparse) satisfy the conclusion; "
                    "sandwich failures %d over %d trials",
                    conclusion_ok, hyp_true, dense_used, sparse_used, sandwich_fail, trials)};
}

// 9. sumset experiment over 10 seeds
Outcome criterion_9() {
  const auto t0 = Clock::now();
  constexpr std::uint64_t x = 100'000;
  const LGSet full = construct(LGParams{x, 0.05, 1.0, 0.2}, table());
  const double c = choose_cutoff(full, 0.2);
  const LGSet set = full.with_cutoff(c);
  const ExperimentConfig cfg{0.5, 0.1, c};

  int close = 0;
  int identity_ok = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SplitMix64 rng(seed);
    const auto a = sample_without_replacement(x / 2, 5'000, rng);
    const auto b = sample_without_replacement(x / 2, 5'000, rng);
    const ExperimentReport r = theorem3_experiment(a, b, set, cfg, table());
    if (std::fabs(r.deviation) < 0.05) ++close;
    if (r.residue_identity_holds) ++identity_ok;
    worst = std::max(worst, std::fabs(r.deviation));
  }
  const double secs = seconds_since(t0);
  return {close >= 9 && identity_ok == 10 && secs < 300.0,
          fmt("c = %.2f: %d/10 seeds with |fraction - sum1| < 0.05 (need 9, max %.4f); "
              "residue identity %d/10; %.1f s (limit 300 s)",
              c, close, worst, identity_ok, secs)};
}

// 10. difference count for A = {1..100}, q = 5
Outcome criterion_10() {
  std::vector<std::uint64_t> a;
  for (std::uint64_t i = 1; i <= 100; ++i) a.push_back(i);
  const WeightedSet w = difference_weights(a, 100);
  const double sieve = w.multiples_sum(5);
  const ResidueHistogram h = residue_histogram(a, 5);
  std::uint64_t binom = 0;
  for (const auto k : h.counts) binom += k * (k - 1) / 2;
  return {sieve == 950.0 && binom == 950,
          fmt("divisor-weighted count %.0f, binomial formula %llu, expected 950", sieve,
              static_cast<unsigned long long>(binom))};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{
      criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
      criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};

  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "--only: criterion must be 1..%zu\n", criteria.size());
    return 2;
  }

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %zu: %s\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
