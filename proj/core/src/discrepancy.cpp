#include "lgsieve/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lgsieve/numeric.hpp"

namespace lgsieve {

ResidueHistogram residue_histogram(std::span<const std::uint64_t> elements, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("residue_histogram: modulus must be positive");
  ResidueHistogram h{q, std::vector<std::uint64_t>(q, 0), elements.size()};
  for (const std::uint64_t e : elements) ++h.counts[e % q];
  return h;
}

DiscrepancyReport variance_report(std::span<const std::uint64_t> elements, const LGSet& set,
                                  double cutoff, double epsilon) {
  if (!(cutoff > set.params().delta && cutoff <= 1.0)) {
    throw std::invalid_argument("variance_report: cutoff must lie in (delta, 1]");
  }
  std::vector<std::uint64_t> sorted(elements.begin(), elements.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("variance_report: elements must be distinct");
  }
  if (!sorted.empty() && (sorted.front() < 1 || sorted.back() > set.x())) {
    throw std::invalid_argument("variance_report: elements must lie in [1, x]");
  }

  const auto moduli = set.members_below(cutoff);
  const std::uint64_t n = sorted.size();
  const double size = static_cast<double>(n);

  DiscrepancyReport r;
  r.set_size = n;
  r.cutoff = cutoff;
  r.x_power = static_cast<double>(power_threshold(set.x(), cutoff));
  r.epsilon = epsilon;
  r.epsilon_prime = 1.0 - harmonic_sum(set, cutoff);
  r.terms.reserve(moduli.size());

  const std::uint64_t max_q = moduli.empty() ? 1 : moduli.back();
  std::vector<std::uint64_t> counts(max_q, 0);
  std::vector<std::uint64_t> touched;
  touched.reserve(n);

  CompensatedSum lhs;
  CompensatedSum inverse_sum;
  std::uint64_t total_sum_sq = 0;
  for (const std::uint64_t q : moduli) {
    touched.clear();
    for (const std::uint64_t e : sorted) {
      const std::uint64_t a = e % q;
      if (counts[a]++ == 0) touched.push_back(a);
    }
    const double mean = size / static_cast<double>(q);
    std::uint64_t sum_sq = 0;
    CompensatedSum contribution;
    for (const std::uint64_t a : touched) {
      const std::uint64_t c = counts[a];
      sum_sq += c * c;
      const double d = static_cast<double>(c) - mean;
      contribution += d * d;
      counts[a] = 0;
    }
    contribution += static_cast<double>(q - touched.size()) * mean * mean;

    r.terms.push_back({q, sum_sq, contribution.value()});
    lhs += contribution.value();
    inverse_sum += 1.0 / static_cast<double>(q);
    total_sum_sq += sum_sq;
    r.pair_sum += sum_sq - n;
  }

  r.lhs = lhs.value();
  r.lhs_expanded = static_cast<double>(total_sum_sq) - size * size * inverse_sum.value();
  r.rhs = size * (2.0 * epsilon * size + r.x_power);
  r.rhs_exact = size * (r.x_power + r.epsilon_prime * size);
  r.pair_bound = n * (n > 0 ? n - 1 : 0);

  r.pair_bound_holds = r.pair_sum <= r.pair_bound;
  r.below_rhs = r.lhs < r.rhs;
  r.below_rhs_exact = r.lhs < r.rhs_exact;
  const double scale = std::max({std::fabs(r.lhs), std::fabs(r.lhs_expanded), 1.0});
  r.identity_holds = std::fabs(r.lhs - r.lhs_expanded) <= 1e-6 * scale;
  return r;
}

}  // namespace lgsieve
