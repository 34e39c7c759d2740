#include "lgsieve/smoothcount.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "lgsieve/dickman.hpp"
#include "lgsieve/numeric.hpp"

namespace lgsieve {

namespace {

void require_distinct_in(std::span<const std::uint64_t> values, std::uint64_t lo,
                         std::uint64_t hi, const char* what) {
  std::vector<std::uint64_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument(std::string(what) + ": elements must be distinct");
  }
  if (!sorted.empty() && (sorted.front() < lo || sorted.back() > hi)) {
    throw std::invalid_argument(std::string(what) + ": elements must lie in [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

double inverse_sum(std::span<const std::uint64_t> qs) {
  CompensatedSum s;
  for (const std::uint64_t q : qs) s += 1.0 / static_cast<double>(q);
  return s.value();
}

}  // namespace

SmoothPartition partition(const LGSet& set, double theta, double cutoff,
                          const PrimeTable& table) {
  const double delta = set.params().delta;
  if (!(theta > delta && theta <= 1.0)) {
    throw std::invalid_argument("partition: theta must lie in (delta, 1]");
  }
  if (!(cutoff > delta && cutoff <= 1.0)) {
    throw std::invalid_argument("partition: cutoff must lie in (delta, 1]");
  }
  const long double smooth_bound = power_threshold(set.x(), theta);
  SmoothPartition p;
  p.theta = theta;
  p.cutoff = cutoff;
  for (const std::uint64_t q : set.members_below(cutoff)) {
    if (at_most(largest_prime_factor(q, table), smooth_bound)) {
      p.n1.push_back(q);
    } else {
      p.n2.push_back(q);
    }
  }
  p.sum1 = inverse_sum(p.n1);
  p.sum2 = inverse_sum(p.n2);
  return p;
}

WeightedSet WeightedSet::from_dense(std::uint64_t bound, std::vector<double> weights) {
  if (weights.size() != bound + 1) {
    throw std::invalid_argument("WeightedSet: dense weights must have bound + 1 entries");
  }
  if (weights[0] != 0.0) throw std::invalid_argument("WeightedSet: w(0) must be zero");
  WeightedSet w;
  w.bound_ = bound;
  w.dense_ = std::move(weights);
  w.finish();
  return w;
}

WeightedSet WeightedSet::from_entries(std::uint64_t bound, std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  std::vector<Entry> merged;
  for (const auto& [n, v] : entries) {
    if (n < 1 || n > bound) throw std::invalid_argument("WeightedSet: n outside [1, bound]");
    if (!merged.empty() && merged.back().first == n) {
      merged.back().second += v;
    } else {
      merged.emplace_back(n, v);
    }
  }
  WeightedSet w;
  w.bound_ = bound;
  w.sparse_ = std::move(merged);
  w.finish();
  return w;
}

void WeightedSet::finish() {
  auto check = [](double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("WeightedSet: weights must be finite and nonnegative");
    }
  };
  if (!dense_.empty()) {
    for (const double v : dense_) check(v);
    support_ = static_cast<std::size_t>(
        std::count_if(dense_.begin(), dense_.end(), [](double v) { return v > 0.0; }));
  } else {
    for (const auto& e : sparse_) check(e.second);
    std::erase_if(sparse_, [](const Entry& e) { return e.second == 0.0; });
    support_ = sparse_.size();
  }

  // Re-pack according to density.
  const bool want_dense = support_ > bound_ / 64;
  if (want_dense && dense_.empty()) {
    dense_.assign(bound_ + 1, 0.0);
    for (const auto& [n, v] : sparse_) dense_[n] = v;
    sparse_.clear();
    sparse_.shrink_to_fit();
  } else if (!want_dense && !dense_.empty()) {
    for (std::uint64_t n = 1; n <= bound_; ++n) {
      if (dense_[n] > 0.0) sparse_.emplace_back(n, dense_[n]);
    }
    dense_.clear();
    dense_.shrink_to_fit();
  }

  CompensatedSum s;
  for_each([&s](std::uint64_t, double v) { s += v; });
  sigma_ = s.value();
}

double WeightedSet::weight(std::uint64_t n) const {
  if (n > bound_) return 0.0;
  if (is_dense()) return dense_[n];
  const auto it = std::lower_bound(sparse_.begin(), sparse_.end(), n,
                                   [](const Entry& e, std::uint64_t v) { return e.first < v; });
  return (it != sparse_.end() && it->first == n) ? it->second : 0.0;
}

double WeightedSet::multiples_sum(std::uint64_t q) const {
  if (q == 0) throw std::invalid_argument("multiples_sum: q must be positive");
  CompensatedSum s;
  if (is_dense()) {
    for (std::uint64_t n = q; n <= bound_; n += q) s += dense_[n];
  } else {
    for (std::uint64_t n = q; n <= bound_; n += q) s += weight(n);
  }
  return s.value();
}

std::pair<double, double> divisor_weighted_sums(const WeightedSet& weights,
                                                const SmoothPartition& part, const LGSet& set) {
  if (weights.bound() != set.x()) {
    throw std::invalid_argument("divisor_weighted_sums: weight bound must equal x");
  }
  CompensatedSum lhs1;
  CompensatedSum lhs2;
  for (const std::uint64_t q : part.n1) lhs1 += weights.multiples_sum(q);
  for (const std::uint64_t q : part.n2) lhs2 += weights.multiples_sum(q);
  return {lhs1.value(), lhs2.value()};
}

SieveReport sieve_report(const WeightedSet& weights, const SmoothPartition& part,
                         const LGSet& set, double gamma, const PrimeTable& table) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("sieve_report: gamma must lie in (0, 1)");
  }
  SieveReport r;
  r.gamma = gamma;
  r.sigma = weights.sigma();
  r.sum1 = part.sum1;
  r.sum2 = part.sum2;
  r.epsilon_prime = 1.0 - harmonic_sum(set, part.cutoff);
  std::tie(r.lhs1, r.lhs2) = divisor_weighted_sums(weights, part, set);
  r.hyp1_holds = r.lhs1 > (1.0 - gamma) * r.sigma * r.sum1;
  r.hyp2_holds = r.lhs2 > (1.0 - gamma) * r.sigma * r.sum2;

  const auto y = static_cast<double>(power_threshold(set.x(), part.theta));
  CompensatedSum smooth;
  CompensatedSum tau;
  weights.for_each([&](std::uint64_t s, double w) {
    if (is_smooth(s, y, table)) smooth += w;
    const auto q = find_divisor(s, set, table);
    if (q && std::binary_search(part.n2.begin(), part.n2.end(), *q)) tau += w;
  });
  r.smooth_total = smooth.value();
  r.tau = tau.value();

  r.center = r.sigma * r.sum1;
  r.bound = 2.0 * gamma * r.sigma;
  r.lower_bound = (1.0 - gamma) * r.sigma * r.sum1;
  r.conclusion_tested = r.hyp1_holds && r.hyp2_holds;
  r.conclusion_holds = std::fabs(r.smooth_total - r.center) < r.bound;
  r.lower_bound_holds = r.smooth_total > r.lower_bound;

  // The three totals are accumulated in different orders; allow for rounding.
  const double slack = 1e-9 * std::max(r.sigma, 1.0);
  r.sandwich_holds =
      r.lhs1 <= r.smooth_total + slack && r.smooth_total <= r.sigma - r.tau + slack;
  return r;
}

WeightedSet sumset_weights(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                           std::uint64_t bound) {
  require_distinct_in(a, 1, bound / 2, "sumset_weights(A)");
  require_distinct_in(b, 1, bound / 2, "sumset_weights(B)");
  std::vector<std::uint64_t> counts(bound + 1, 0);
  for (const std::uint64_t u : a) {
    for (const std::uint64_t v : b) ++counts[u + v];
  }
  std::vector<double> w(counts.begin(), counts.end());
  return WeightedSet::from_dense(bound, std::move(w));
}

WeightedSet difference_weights(std::span<const std::uint64_t> a, std::uint64_t bound) {
  require_distinct_in(a, 1, bound, "difference_weights");
  std::vector<std::uint64_t> sorted(a.begin(), a.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::uint64_t> counts(bound + 1, 0);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) ++counts[sorted[i] - sorted[j]];
  }
  std::vector<double> w(counts.begin(), counts.end());
  return WeightedSet::from_dense(bound, std::move(w));
}

ResidueConvolution residue_convolution(std::span<const std::uint64_t> a,
                                       std::span<const std::uint64_t> b,
                                       const WeightedSet& sumset, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("residue_convolution: q must be positive");
  ResidueConvolution r;
  r.q = q;
  for (std::uint64_t n = q; n <= sumset.bound(); n += q) {
    r.multiples_weight += static_cast<std::uint64_t>(sumset.weight(n));
  }
  const ResidueHistogram ha = residue_histogram(a, q);
  const ResidueHistogram hb = residue_histogram(b, q);
  for (std::uint64_t res = 0; res < q; ++res) {
    r.class_products += ha.counts[res] * hb.counts[(q - res) % q];
  }
  return r;
}

namespace {

// One pass per modulus over the residue classes of A and B: both sides of
// the convolution identity and the absolute cross term.
struct ModulusScan {
  double cross = 0.0;
  bool identity = true;
};

class ClassScanner {
 public:
  ClassScanner(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
               std::uint64_t max_q)
      : a_(a), b_(b), count_a_(max_q, 0), count_b_(max_q, 0), seen_(max_q, 0) {}

  ModulusScan scan(std::uint64_t q, const WeightedSet& w) {
    touched_a_.clear();
    touched_b_.clear();
    for (const std::uint64_t v : a_) {
      if (count_a_[v % q]++ == 0) touched_a_.push_back(v % q);
    }
    for (const std::uint64_t v : b_) {
      if (count_b_[v % q]++ == 0) touched_b_.push_back(v % q);
    }

    std::uint64_t products = 0;
    for (const std::uint64_t r : touched_a_) products += count_a_[r] * count_b_[(q - r) % q];
    std::uint64_t multiples = 0;
    for (std::uint64_t n = q; n <= w.bound(); n += q) {
      multiples += static_cast<std::uint64_t>(w.weight(n));
    }

    const double mean_a = static_cast<double>(a_.size()) / static_cast<double>(q);
    const double mean_b = static_cast<double>(b_.size()) / static_cast<double>(q);
    CompensatedSum cross;
    std::uint64_t visited = 0;
    auto visit = [&](std::uint64_t r) {
      if (seen_[r]) return;
      seen_[r] = 1;
      ++visited;
      const double da = std::fabs(static_cast<double>(count_a_[r]) - mean_a);
      const double db = std::fabs(static_cast<double>(count_b_[(q - r) % q]) - mean_b);
      cross += da * db;
    };
    for (const std::uint64_t r : touched_a_) visit(r);
    for (const std::uint64_t r : touched_b_) visit((q - r) % q);
    cross += static_cast<double>(q - visited) * mean_a * mean_b;

    for (const std::uint64_t r : touched_a_) {
      count_a_[r] = 0;
      seen_[r] = 0;
    }
    for (const std::uint64_t r : touched_b_) {
      count_b_[r] = 0;
      seen_[(q - r) % q] = 0;
    }
    return {cross.value(), products == multiples};
  }

 private:
  std::span<const std::uint64_t> a_;
  std::span<const std::uint64_t> b_;
  std::vector<std::uint64_t> count_a_;
  std::vector<std::uint64_t> count_b_;
  std::vector<std::uint8_t> seen_;
  std::vector<std::uint64_t> touched_a_;
  std::vector<std::uint64_t> touched_b_;
};

}  // namespace

ExperimentReport theorem3_experiment(std::span<const std::uint64_t> a,
                                     std::span<const std::uint64_t> b, const LGSet& set,
                                     const ExperimentConfig& config, const PrimeTable& table) {
  const std::uint64_t x = set.x();
  const WeightedSet w = sumset_weights(a, b, x);
  const SmoothPartition part = partition(set, config.theta, config.cutoff, table);

  ExperimentReport r;
  r.config = config;
  r.x = x;
  r.size_a = a.size();
  r.size_b = b.size();
  r.sigma = r.size_a * r.size_b;
  r.sum1 = part.sum1;
  r.sum2 = part.sum2;
  r.sieve = sieve_report(w, part, set, config.gamma, table);
  r.epsilon_prime = r.sieve.epsilon_prime;

  // Direct pair count, independent of the weight function.
  const auto lpf = largest_factor_array(x, table);
  const long double y = power_threshold(x, config.theta);
  std::vector<std::uint8_t> smooth(x + 1, 0);
  for (std::uint64_t n = 1; n <= x; ++n) smooth[n] = at_most(lpf[n], y) ? 1 : 0;
  for (const std::uint64_t u : a) {
    for (const std::uint64_t v : b) r.smooth_count += smooth[u + v];
  }

  const double sigma = static_cast<double>(r.sigma);
  r.smooth_fraction = r.sigma == 0 ? 0.0 : static_cast<double>(r.smooth_count) / sigma;
  r.sigma_sum1 = sigma * r.sum1;
  const DickmanTable dickman(std::ceil(1.0 / config.theta) + 1.0);
  r.rho_theta = dickman.rho(1.0 / config.theta);
  r.deviation = r.smooth_fraction - r.sum1;
  r.deviation_rho = r.smooth_fraction - r.rho_theta;

  const double eps = std::max(r.epsilon_prime, 0.0) / 2.0;
  r.variance_a = variance_report(a, set, config.cutoff, eps);
  r.variance_b = variance_report(b, set, config.cutoff, eps);
  r.variance_a.terms.clear();
  r.variance_b.terms.clear();
  r.cauchy_schwarz_bound = std::sqrt(r.variance_a.lhs * r.variance_b.lhs);

  const auto moduli = set.members_below(config.cutoff);
  ClassScanner scanner(a, b, moduli.empty() ? 1 : moduli.back());
  CompensatedSum cross1;
  CompensatedSum cross2;
  r.residue_identity_holds = true;
  for (const std::uint64_t q : part.n1) {
    const ModulusScan s = scanner.scan(q, w);
    cross1 += s.cross;
    r.residue_identity_holds = r.residue_identity_holds && s.identity;
  }
  for (const std::uint64_t q : part.n2) {
    const ModulusScan s = scanner.scan(q, w);
    cross2 += s.cross;
    r.residue_identity_holds = r.residue_identity_holds && s.identity;
  }
  r.moduli_checked = part.n1.size() + part.n2.size();
  r.cross_term_n1 = cross1.value();
  r.cross_term_n2 = cross2.value();
  const double slack = 1e-9 * std::max(r.cauchy_schwarz_bound, 1.0);
  r.cross_within_bound = r.cross_term_n1 <= r.cauchy_schwarz_bound + slack &&
                         r.cross_term_n2 <= r.cauchy_schwarz_bound + slack;

  r.working_epsilon = config.gamma / 12.0 * std::min(r.sum1, r.sum2);
  const auto x_power = static_cast<double>(power_threshold(x, config.cutoff));
  r.size_condition_met = r.working_epsilon > 0.0 &&
                         static_cast<double>(r.size_a) > x_power / r.working_epsilon &&
                         static_cast<double>(r.size_b) > x_power / r.working_epsilon;
  r.rho_condition_met = std::fabs(r.sum1 - r.rho_theta) < config.gamma / 4.0;

  if (!r.size_condition_met) {
    r.warnings.emplace_back("set sizes do not exceed x^c / working epsilon");
  }
  if (!r.rho_condition_met) {
    r.warnings.emplace_back("sum over N1 is not within gamma/4 of rho(1/theta)");
  }
  if (r.epsilon_prime / 2.0 >= r.working_epsilon) {
    r.warnings.emplace_back("measured epsilon'/2 exceeds working epsilon");
  }
  return r;
}

}  // namespace lgsieve
