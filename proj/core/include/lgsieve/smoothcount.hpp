#pragma once

// The smooth sieve. If m <= x has its LG divisor q below x^c, then m is
// x^theta-smooth exactly when q is, so lower bounds on how much weight sits
// on multiples of the smooth members (N1) and of the non-smooth members (N2)
// pin down how much weight sits on smooth integers.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lgsieve/discrepancy.hpp"
#include "lgsieve/lgset.hpp"
#include "lgsieve/primes.hpp"

namespace lgsieve {

struct SmoothPartition {
  double theta = 1.0;
  double cutoff = 1.0;
  std::vector<std::uint64_t> n1;  // x^theta-smooth members below x^cutoff
  std::vector<std::uint64_t> n2;  // the other members below x^cutoff
  double sum1 = 0.0;              // sum of 1/q over n1
  double sum2 = 0.0;              // sum of 1/q over n2
};

/// Throws std::invalid_argument unless delta < theta <= 1 and
/// delta < cutoff <= 1.
SmoothPartition partition(const LGSet& set, double theta, double cutoff,
                          const PrimeTable& table);

/// Nonnegative weights on [1, bound]. Stored densely when more than
/// bound/64 entries are nonzero, as a sorted sparse list otherwise.
class WeightedSet {
 public:
  using Entry = std::pair<std::uint64_t, double>;

  /// `weights` is indexed 0..bound; weights[0] must be zero.
  static WeightedSet from_dense(std::uint64_t bound, std::vector<double> weights);
  /// Entries with equal n are summed; zero weights are dropped.
  static WeightedSet from_entries(std::uint64_t bound, std::vector<Entry> entries);

  [[nodiscard]] std::uint64_t bound() const noexcept { return bound_; }
  [[nodiscard]] double sigma() const noexcept { return sigma_; }
  [[nodiscard]] bool is_dense() const noexcept { return !dense_.empty(); }
  [[nodiscard]] std::size_t support_size() const noexcept { return support_; }
  [[nodiscard]] double weight(std::uint64_t n) const;

  /// Sum of w(s) over multiples s of q in [1, bound].
  [[nodiscard]] double multiples_sum(std::uint64_t q) const;

  /// Calls f(n, w) for every n with w(n) > 0, ascending.
  template <typename F>
  void for_each(F&& f) const {
    if (is_dense()) {
      for (std::uint64_t n = 1; n <= bound_; ++n) {
        if (dense_[n] > 0.0) f(n, dense_[n]);
      }
    } else {
      for (const auto& [n, w] : sparse_) f(n, w);
    }
  }

 private:
  WeightedSet() = default;
  void finish();

  std::uint64_t bound_ = 0;
  double sigma_ = 0.0;
  std::size_t support_ = 0;
  std::vector<double> dense_;
  std::vector<Entry> sparse_;
};

/// lhs_i = sum over q in N_i of the weight on multiples of q.
/// Requires weights.bound() == set.x().
std::pair<double, double> divisor_weighted_sums(const WeightedSet& weights,
                                                const SmoothPartition& part, const LGSet& set);

struct SieveReport {
  double gamma = 0.0;
  double sigma = 0.0;
  double sum1 = 0.0;
  double sum2 = 0.0;
  double epsilon_prime = 0.0;
  double lhs1 = 0.0;
  double lhs2 = 0.0;
  bool hyp1_holds = false;  // lhs1 > (1 - gamma) sigma sum1
  bool hyp2_holds = false;  // lhs2 > (1 - gamma) sigma sum2
  double smooth_total = 0.0;  // weight on x^theta-smooth s, by factorization
  double tau = 0.0;           // weight on s whose LG divisor lies in N2
  double center = 0.0;        // sigma sum1
  double bound = 0.0;         // 2 gamma sigma
  double lower_bound = 0.0;   // (1 - gamma) sigma sum1
  bool conclusion_tested = false;  // both hypotheses held
  bool conclusion_holds = false;   // |smooth_total - center| < bound
  bool lower_bound_holds = false;  // smooth_total > lower_bound
  bool sandwich_holds = false;     // lhs1 <= smooth_total <= sigma - tau
};

/// Evaluates the two hypotheses and the conclusion independently. The
/// conclusion is only meaningful when conclusion_tested is set.
SieveReport sieve_report(const WeightedSet& weights, const SmoothPartition& part,
                         const LGSet& set, double gamma, const PrimeTable& table);

/// w(n) = #{(a, b) in A x B : a + b = n}. A and B must hold distinct values
/// in [1, bound/2].
WeightedSet sumset_weights(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                           std::uint64_t bound);

/// w(n) = #{(a, a') in A^2 : a - a' = n > 0}. A must hold distinct values in
/// [1, bound].
WeightedSet difference_weights(std::span<const std::uint64_t> a, std::uint64_t bound);

struct ResidueConvolution {
  std::uint64_t q = 0;
  std::uint64_t multiples_weight = 0;  // sum of w(n) over q | n
  std::uint64_t class_products = 0;    // sum_a A(a, q) B(-a mod q, q)
  [[nodiscard]] bool holds() const noexcept { return multiples_weight == class_products; }
};

/// Both sides of the residue convolution identity for one modulus.
ResidueConvolution residue_convolution(std::span<const std::uint64_t> a,
                                       std::span<const std::uint64_t> b,
                                       const WeightedSet& sumset, std::uint64_t q);

struct ExperimentConfig {
  double theta = 0.5;
  double gamma = 0.1;
  double cutoff = 1.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::uint64_t x = 0;
  std::uint64_t size_a = 0;
  std::uint64_t size_b = 0;
  std::uint64_t sigma = 0;         // |A| |B|
  std::uint64_t smooth_count = 0;  // pairs with a + b x^theta-smooth, counted directly
  double smooth_fraction = 0.0;
  double sum1 = 0.0;
  double sum2 = 0.0;
  double sigma_sum1 = 0.0;
  double rho_theta = 0.0;  // rho(1/theta)
  double deviation = 0.0;  // smooth_fraction - sum1
  double deviation_rho = 0.0;
  double epsilon_prime = 0.0;
  SieveReport sieve;

  DiscrepancyReport variance_a;  // per-modulus terms dropped
  DiscrepancyReport variance_b;
  double cross_term_n1 = 0.0;  // sum_q sum_a |A(a,q) - |A|/q| |B(-a,q) - |B|/q|
  double cross_term_n2 = 0.0;
  double cauchy_schwarz_bound = 0.0;  // sqrt(variance_a.lhs * variance_b.lhs)
  bool cross_within_bound = false;

  std::uint64_t moduli_checked = 0;
  bool residue_identity_holds = false;

  double working_epsilon = 0.0;  // gamma/12 * min(sum1, sum2)
  bool size_condition_met = false;  // |A|, |B| > x^c / working_epsilon
  bool rho_condition_met = false;   // |sum1 - rho(1/theta)| < gamma/4
  std::vector<std::string> warnings;
};

/// Sumset experiment over A + B with the smooth sieve. Unmet size or
/// approximation conditions are recorded as warnings; the run proceeds.
ExperimentReport theorem3_experiment(std::span<const std::uint64_t> a,
                                     std::span<const std::uint64_t> b, const LGSet& set,
                                     const ExperimentConfig& config, const PrimeTable& table);

}  // namespace lgsieve
