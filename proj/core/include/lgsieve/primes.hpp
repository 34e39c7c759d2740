#pragma once

// Smallest-prime-factor sieve, factorization, and exact smooth-number counts.
//
// Everything else in the library is checked against this layer, so it is
// deliberately plain: one linear sieve, no wheel, no segmentation.

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lgsieve {

/// Thrown when a requested table would exceed the configured memory ceiling.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultTableCeiling = 100'000'000;

/// Table ceiling honoring the LGSIEVE_TABLE_LIMIT environment variable.
std::uint64_t table_ceiling();

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  std::uint64_t n = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing

  [[nodiscard]] std::uint64_t product() const;
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

class PrimeTable {
 public:
  /// Sieve every integer in [2, limit]. Throws std::invalid_argument when
  /// limit < 2 and ResourceLimitError when limit > ceiling.
  explicit PrimeTable(std::uint64_t limit, std::uint64_t ceiling = table_ceiling());

  [[nodiscard]] std::uint64_t limit() const noexcept { return limit_; }
  [[nodiscard]] std::span<const std::uint32_t> primes() const noexcept { return primes_; }

  /// Smallest prime factor of n, 2 <= n <= limit.
  [[nodiscard]] std::uint32_t smallest_factor(std::uint64_t n) const;
  [[nodiscard]] bool is_prime(std::uint64_t n) const;

  /// Raw smallest-factor array, indexed 0..limit; entries 0 and 1 are 0.
  [[nodiscard]] std::span<const std::uint32_t> smallest_factor_data() const noexcept {
    return spf_;
  }

  /// Binary cache: "LGSPF1", little-endian u64 limit, then limit+1
  /// little-endian u32 smallest-factor entries.
  void save(const std::filesystem::path& path) const;
  static PrimeTable load(const std::filesystem::path& path,
                         std::uint64_t ceiling = table_ceiling());

 private:
  PrimeTable() = default;
  void rebuild_primes();

  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

Factorization factorize(std::uint64_t n, const PrimeTable& table);

/// Distinct prime factors of n in increasing order (empty for n = 1).
std::vector<std::uint64_t> distinct_primes(std::uint64_t n, const PrimeTable& table);

/// P(n), the largest prime factor. Undefined (invalid_argument) for n < 2.
std::uint64_t largest_prime_factor(std::uint64_t n, const PrimeTable& table);

/// True iff every prime factor of n is <= y. n = 1 is smooth for every y.
bool is_smooth(std::uint64_t n, double y, const PrimeTable& table);

/// Psi(x, y) = #{1 <= n <= x : n is y-smooth}.
std::uint64_t psi_count(std::uint64_t x, double y, const PrimeTable& table);

/// Largest prime factor of every n in [0, x]; entries 0 and 1 are 1.
std::vector<std::uint32_t> largest_factor_array(std::uint64_t x, const PrimeTable& table);

}  // namespace lgsieve
