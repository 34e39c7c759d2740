#pragma once

// Explicit local-global sets.
//
// Members are squarefree n = p1 p2 ... pk <= x with p1 > ... > pk > x^delta
// such that x >= p_i * (p1...p_i) for every i < k and p_k * (p1...pk) > x.
// Distinct members have lcm > x, so every m <= x has at most one member
// divisor; the members below x^c cover all but a small fraction of [1, x].

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lgsieve/primes.hpp"

namespace lgsieve {

struct LGParams {
  std::uint64_t x = 0;
  double delta = 0.0;           // member primes exceed x^delta
  double c = 1.0;               // cutoff exponent for the "small" members
  double epsilon_target = 0.2;  // advisory coverage deficiency

  /// Throws std::invalid_argument unless 0 < delta < c <= 1,
  /// 0 < epsilon_target < 1 and x >= 4.
  void validate() const;
};

class LGSet {
 public:
  LGSet(LGParams params, std::vector<std::uint64_t> members);

  [[nodiscard]] const LGParams& params() const noexcept { return params_; }
  [[nodiscard]] std::uint64_t x() const noexcept { return params_.x; }
  [[nodiscard]] std::span<const std::uint64_t> members() const noexcept { return members_; }
  [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
  [[nodiscard]] bool contains(std::uint64_t n) const noexcept {
    return n <= params_.x && index_[n];
  }

  /// floor(x^delta); member primes are strictly larger.
  [[nodiscard]] std::uint64_t prime_floor() const noexcept { return prime_floor_; }

  /// Members strictly below x^cutoff, ascending.
  [[nodiscard]] std::span<const std::uint64_t> members_below(double cutoff) const;

  /// Same members with a different cutoff exponent recorded in params.
  [[nodiscard]] LGSet with_cutoff(double c) const;

  friend bool operator==(const LGSet& a, const LGSet& b) {
    return a.params_.x == b.params_.x && a.params_.delta == b.params_.delta &&
           a.params_.c == b.params_.c && a.members_ == b.members_;
  }

 private:
  LGParams params_;
  std::uint64_t prime_floor_ = 0;
  std::vector<std::uint64_t> members_;
  std::vector<bool> index_;
};

/// Depth-first enumeration over strictly decreasing prime chains.
LGSet construct(const LGParams& params, const PrimeTable& table);

/// True iff n satisfies the membership conditions directly (factorizes n).
bool satisfies_chain_conditions(std::uint64_t n, std::uint64_t x, std::uint64_t prime_floor,
                                const PrimeTable& table);

/// The unique member dividing m, found by walking m's large primes from the
/// top down. Throws std::invalid_argument unless 1 <= m <= x.
std::optional<std::uint64_t> find_divisor(std::uint64_t m, const LGSet& set,
                                          const PrimeTable& table);

struct LcmViolation {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t lcm = 0;
  friend bool operator==(const LcmViolation&, const LcmViolation&) = default;
};

struct LcmReport {
  std::uint64_t pairs_examined = 0;  // all unordered distinct pairs
  std::vector<LcmViolation> violations;
  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

/// Checks lcm(a, b) > x for every distinct pair. A pair has lcm <= x exactly
/// when some m <= x is a common multiple, so one pass over the multiples of
/// every element finds all violations in O(x log x) rather than O(|N|^2).
/// `elements` need not come from construct().
LcmReport verify_pairwise_lcm(std::span<const std::uint64_t> elements, std::uint64_t x);
LcmReport verify_pairwise_lcm(const LGSet& set);

struct CoverageReport {
  double cutoff_exponent = 1.0;
  std::uint64_t x = 0;
  std::uint64_t members_below_cutoff = 0;
  std::uint64_t covered_count = 0;      // m in [1, x] with a member divisor < x^cutoff
  std::uint64_t exceptional_count = 0;  // the rest, including m = 1
  double harmonic_sum = 0.0;            // sum of 1/n over members n < x^cutoff
  double epsilon_prime = 1.0;           // 1 - harmonic_sum
};

/// Sum of 1/n over members n < x^cutoff (compensated, ascending order).
double harmonic_sum(const LGSet& set, double cutoff);

/// Exhaustive scan of m = 1..x. `workers` splits the range; the result does
/// not depend on it. Throws std::logic_error if the accounting identities
/// fail, and std::invalid_argument unless delta < cutoff <= 1.
CoverageReport coverage(const LGSet& set, double cutoff, const PrimeTable& table,
                        unsigned workers = 1);

/// Smallest c = k/100 in (delta, 1] whose tail sum of 1/n over members
/// n >= x^c is below epsilon/2; 1.0 when no grid point qualifies.
double choose_cutoff(const LGSet& set, double epsilon);

}  // namespace lgsieve
