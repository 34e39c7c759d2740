#pragma once

// Small numeric helpers shared by every module: compensated summation and
// real-valued thresholds of the form x^e compared against integers.

#include <cmath>
#include <cstdint>

namespace lgsieve {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double v) noexcept {
    add(v);
    return *this;
  }
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// x^e in extended precision. Results within a few ulps of an integer are
/// snapped to it, so 100^0.5 and (10^5)^0.2 both come out as exactly 10.
inline long double power_threshold(std::uint64_t x, double e) {
  const long double v = std::pow(static_cast<long double>(x), static_cast<long double>(e));
  const long double r = std::nearbyint(v);
  if (std::fabs(v - r) <= 1e-12L * (r < 1.0L ? 1.0L : r)) return r;
  return v;
}

/// floor(x^e) with the same snapping as power_threshold.
inline std::uint64_t floor_power(std::uint64_t x, double e) {
  return static_cast<std::uint64_t>(std::floor(power_threshold(x, e)));
}

/// Exact "n <= t" for an integer against a long double threshold.
inline bool at_most(std::uint64_t n, long double t) noexcept {
  return static_cast<long double>(n) <= t;
}

/// Exact "n < t" for an integer against a long double threshold.
inline bool below(std::uint64_t n, long double t) noexcept {
  return static_cast<long double>(n) < t;
}

}  // namespace lgsieve
