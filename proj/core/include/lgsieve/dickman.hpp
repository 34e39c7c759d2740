#pragma once

// Dickman's function rho(u): the density of x^(1/u)-smooth integers as
// x -> infinity. Tabulated from the delay equation u rho'(u) = -rho(u - 1)
// with rho = 1 on [0, 1].

#include <cstdint>
#include <vector>

#include "lgsieve/primes.hpp"

namespace lgsieve {

inline constexpr double kDefaultDickmanStep = 1.0 / 1024.0;

class DickmanTable {
 public:
  /// `step` must divide 1 (1/step an integer up to rounding) so that u - 1
  /// falls on the grid. Throws std::invalid_argument otherwise.
  DickmanTable(double max_u, double step = kDefaultDickmanStep);

  [[nodiscard]] double step() const noexcept { return step_; }
  [[nodiscard]] double max_u() const noexcept { return max_u_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

  /// Linear interpolation on the grid. Throws std::out_of_range outside
  /// [0, max_u].
  [[nodiscard]] double rho(double u) const;

 private:
  double step_;
  double max_u_;
  std::vector<double> values_;
};

/// Psi(x, x^(1/u)) / x. Requires u >= 1 and x <= table.limit().
double empirical_rho(std::uint64_t x, double u, const PrimeTable& table);

}  // namespace lgsieve
