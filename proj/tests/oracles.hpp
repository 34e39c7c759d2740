#pragma once

// Test-only reference implementations. Nothing here touches the sieve in
// lgsieve/primes.hpp, so agreement with the library is meaningful.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

// Trial division, ascending (prime, exponent) pairs.
inline std::vector<std::pair<std::uint64_t, unsigned>> trial_factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> f;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

// Segmented sieve of Eratosthenes; returns pi(limit).
inline std::uint64_t segmented_prime_count(std::uint64_t limit) {
  if (limit < 2) return 0;
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  std::vector<std::uint64_t> base;
  for (std::uint64_t p = 2; p <= root; ++p) {
    bool prime = true;
    for (const std::uint64_t b : base) {
      if (b * b > p) break;
      if (p % b == 0) {
        prime = false;
        break;
      }
    }
    if (prime) base.push_back(p);
  }
  constexpr std::uint64_t kSegment = 1 << 15;
  std::uint64_t count = 0;
  std::vector<bool> composite(kSegment);
  for (std::uint64_t lo = 2; lo <= limit; lo += kSegment) {
    const std::uint64_t hi = std::min(limit + 1, lo + kSegment);
    std::fill(composite.begin(), composite.end(), false);
    for (const std::uint64_t p : base) {
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t m = start; m < hi; m += p) composite[m - lo] = true;
    }
    for (std::uint64_t n = lo; n < hi; ++n) {
      if (!composite[n - lo]) ++count;
    }
  }
  return count;
}

// Membership by direct check of the chain conditions on a trial-division
// factorization.
inline bool chain_member(std::uint64_t n, std::uint64_t x, std::uint64_t prime_floor) {
  if (n < 2 || n > x) return false;
  auto f = trial_factor(n);
  for (const auto& [p, e] : f) {
    if (e != 1 || p <= prime_floor) return false;
  }
  std::reverse(f.begin(), f.end());
  std::uint64_t product = 1;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::uint64_t p = f[i].first;
    product *= p;
    // x / product >= p for every prefix but the last; 1 <= x / product < p for the last.
    const long double ratio = static_cast<long double>(x) / static_cast<long double>(product);
    if (i + 1 < f.size()) {
      if (x < p * product) return false;
    } else if (!(ratio >= 1.0L && x < p * product)) {
      return false;
    }
  }
  return true;
}

// For every m <= x: number of elements dividing m and the last one seen.
struct DivisorScan {
  std::vector<std::uint32_t> count;
  std::vector<std::uint64_t> divisor;
};

inline DivisorScan scan_multiples(const std::vector<std::uint64_t>& elements, std::uint64_t x) {
  DivisorScan s{std::vector<std::uint32_t>(x + 1, 0), std::vector<std::uint64_t>(x + 1, 0)};
  for (const std::uint64_t e : elements) {
    for (std::uint64_t m = e; m <= x; m += e) {
      ++s.count[m];
      s.divisor[m] = e;
    }
  }
  return s;
}

// O(k^2) gcd scan for lcm(a, b) <= x.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> lcm_violations_bruteforce(
    std::vector<std::uint64_t> elements, std::uint64_t x) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      const std::uint64_t a = elements[i];
      const std::uint64_t b = elements[j];
      if (a / std::gcd(a, b) * b <= x) out.emplace_back(a, b);
    }
  }
  return out;
}

// Largest prime factor by trial division; 1 for n = 1.
inline std::uint64_t largest_prime(std::uint64_t n) {
  const auto f = trial_factor(n);
  return f.empty() ? 1 : f.back().first;
}

// Composite Simpson on [a, b] with n (even) panels.
template <typename F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle
