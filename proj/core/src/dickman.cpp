#include "lgsieve/dickman.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lgsieve/numeric.hpp"

namespace lgsieve {

DickmanTable::DickmanTable(double max_u, double step) : step_(step), max_u_(max_u) {
  if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("dickman: step must lie in (0, 1]");
  if (!(max_u >= 0.0) || !std::isfinite(max_u)) {
    throw std::invalid_argument("dickman: max_u must be a finite nonnegative number");
  }
  const double per_unit = std::nearbyint(1.0 / step);
  if (std::fabs(per_unit * step - 1.0) > 1e-9) {
    throw std::invalid_argument("dickman: 1/step must be an integer");
  }
  const auto m = static_cast<std::size_t>(per_unit);
  step_ = 1.0 / per_unit;

  const auto last = static_cast<std::size_t>(std::ceil(max_u / step_ - 1e-9));
  values_.assign(last + 1, 1.0);

  // Integrating the delay equation gives u rho(u) = integral_{u-1}^{u} rho(t) dt.
  // The trapezoidal rule on that window is implicit only in rho(u):
  //   rho(u) (u - h/2) = h (rho(u-1)/2 + interior points).
  // Stepping rho(u) = rho(u-h) - int rho(t-1)/t instead leaves an absolute
  // error of order h^2 that never decays and drives rho negative near u = 8.
  double interior = 0.0;
  for (std::size_t i = m + 1; i <= last; ++i) {
    if (i == m + 1 || i % m == 0) {
      // resync the running window sum so cancellation cannot accumulate
      interior = 0.0;
      for (std::size_t j = i - m + 1; j < i; ++j) interior += values_[j];
    }
    const double u = static_cast<double>(i) * step_;
    values_[i] = step_ * (0.5 * values_[i - m] + interior) / (u - 0.5 * step_);
    interior += values_[i] - values_[i - m + 1];
  }
}

double DickmanTable::rho(double u) const {
  if (!(u >= 0.0) || u > max_u_) throw std::out_of_range("dickman: u outside [0, max_u]");
  if (u <= 1.0) return 1.0;
  const double pos = u / step_;
  const double nearest = std::nearbyint(pos);
  if (std::fabs(pos - nearest) < 1e-9) {
    return values_[std::min(static_cast<std::size_t>(nearest), values_.size() - 1)];
  }
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= values_.size()) return values_.back();
  const double frac = pos - static_cast<double>(i);
  return values_[i] + frac * (values_[i + 1] - values_[i]);
}

double empirical_rho(std::uint64_t x, double u, const PrimeTable& table) {
  if (!(u >= 1.0)) throw std::invalid_argument("empirical_rho: u must be >= 1");
  if (x == 0) throw std::invalid_argument("empirical_rho: x must be positive");
  const auto y = static_cast<double>(power_threshold(x, 1.0 / u));
  return static_cast<double>(psi_count(x, y, table)) / static_cast<double>(x);
}

}  // namespace lgsieve
