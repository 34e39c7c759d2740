#pragma once

// Residue-class discrepancy over LG moduli. For distinct b, c <= x the
// difference b - c has at most one LG divisor, which caps the number of
// same-class pairs and hence the variance
//   sum_{q in N, q < x^c} sum_a (C(a, q) - |C|/q)^2.

#include <cstdint>
#include <span>
#include <vector>

#include "lgsieve/lgset.hpp"

namespace lgsieve {

struct ResidueHistogram {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> counts;  // counts[a] = #{e : e = a mod q}
  std::uint64_t total = 0;
};

/// Throws std::invalid_argument when q == 0.
ResidueHistogram residue_histogram(std::span<const std::uint64_t> elements, std::uint64_t q);

struct ModulusTerm {
  std::uint64_t q = 0;
  std::uint64_t sum_sq = 0;   // sum_a C(a, q)^2
  double contribution = 0.0;  // sum_a (C(a, q) - |C|/q)^2
};

struct DiscrepancyReport {
  std::uint64_t set_size = 0;
  double cutoff = 1.0;
  double x_power = 0.0;        // x^cutoff
  double epsilon = 0.0;        // caller-supplied
  double epsilon_prime = 0.0;  // 1 - sum of 1/q over the moduli
  double lhs = 0.0;            // summed directly over residue classes
  double lhs_expanded = 0.0;   // sum C(a,q)^2 - |C|^2 sum 1/q
  double rhs = 0.0;            // |C| (2 epsilon |C| + x^c)
  double rhs_exact = 0.0;      // |C| (x^c + epsilon' |C|)
  std::uint64_t pair_sum = 0;  // sum_q sum_a C(a,q) (C(a,q) - 1)
  std::uint64_t pair_bound = 0;  // |C| (|C| - 1)

  bool pair_bound_holds = false;
  bool below_rhs = false;
  bool below_rhs_exact = false;
  bool identity_holds = false;  // lhs and lhs_expanded agree to 1e-6 relative

  std::vector<ModulusTerm> terms;  // one per modulus, ascending q
};

/// Elements must be distinct and lie in [1, x]; cutoff must exceed delta.
DiscrepancyReport variance_report(std::span<const std::uint64_t> elements, const LGSet& set,
                                  double cutoff, double epsilon);

}  // namespace lgsieve
