#include "lgsieve/primes.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <limits>

namespace lgsieve {

namespace {

constexpr std::array<char, 6> kCacheMagic{'L', 'G', 'S', 'P', 'F', '1'};

void require_in_table(std::uint64_t n, const PrimeTable& table, const char* what) {
  if (n > table.limit()) {
    throw std::invalid_argument(std::string(what) + ": " + std::to_string(n) +
                                " exceeds table limit " + std::to_string(table.limit()));
  }
}

template <typename T>
void write_le(std::ostream& out, T v) {
  std::array<unsigned char, sizeof(T)> buf{};
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(buf.data()), buf.size());
}

template <typename T>
T read_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> buf{};
  in.read(reinterpret_cast<char*>(buf.data()), buf.size());
  if (!in) throw std::runtime_error("prime table cache: truncated file");
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
  return v;
}

}  // namespace

std::uint64_t table_ceiling() {
  const char* env = std::getenv("LGSIEVE_TABLE_LIMIT");
  if (env == nullptr || *env == '\0') return kDefaultTableCeiling;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v < 2) {
    throw std::invalid_argument(std::string("LGSIEVE_TABLE_LIMIT: not a valid limit: ") + env);
  }
  return v;
}

std::uint64_t Factorization::product() const {
  std::uint64_t r = 1;
  for (const auto& [p, e] : factors) {
    for (unsigned i = 0; i < e; ++i) r *= p;
  }
  return r;
}

PrimeTable::PrimeTable(std::uint64_t limit, std::uint64_t ceiling) : limit_(limit) {
  if (limit < 2) throw std::invalid_argument("prime table limit must be >= 2");
  if (limit > ceiling) {
    throw ResourceLimitError("prime table limit " + std::to_string(limit) +
                             " exceeds ceiling " + std::to_string(ceiling));
  }
  if (limit > std::numeric_limits<std::uint32_t>::max()) {
    throw ResourceLimitError("prime table limit does not fit 32-bit entries");
  }

  // Linear sieve: every composite is crossed out once, by its smallest prime.
  spf_.assign(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    const std::uint32_t si = spf_[i];
    for (const std::uint32_t p : primes_) {
      if (p > si || static_cast<std::uint64_t>(p) * i > limit) break;
      spf_[p * i] = p;
    }
  }
}

void PrimeTable::rebuild_primes() {
  primes_.clear();
  for (std::uint64_t i = 2; i <= limit_; ++i) {
    if (spf_[i] == i) primes_.push_back(static_cast<std::uint32_t>(i));
  }
}

std::uint32_t PrimeTable::smallest_factor(std::uint64_t n) const {
  if (n < 2 || n > limit_) {
    throw std::invalid_argument("smallest_factor: " + std::to_string(n) + " outside [2, " +
                                std::to_string(limit_) + "]");
  }
  return spf_[n];
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n > limit_) throw std::invalid_argument("is_prime: beyond sieve limit");
  return n >= 2 && spf_[n] == n;
}

void PrimeTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(kCacheMagic.data(), kCacheMagic.size());
  write_le<std::uint64_t>(out, limit_);
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(spf_.data()),
              static_cast<std::streamsize>(spf_.size() * sizeof(std::uint32_t)));
  } else {
    for (const std::uint32_t v : spf_) write_le(out, v);
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

PrimeTable PrimeTable::load(const std::filesystem::path& path, std::uint64_t ceiling) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::array<char, 6> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kCacheMagic) {
    throw std::runtime_error("prime table cache: bad magic in " + path.string());
  }
  PrimeTable t;
  t.limit_ = read_le<std::uint64_t>(in);
  if (t.limit_ < 2) throw std::runtime_error("prime table cache: limit < 2");
  if (t.limit_ > ceiling) throw ResourceLimitError("prime table cache exceeds ceiling");
  t.spf_.resize(t.limit_ + 1);
  if constexpr (std::endian::native == std::endian::little) {
    in.read(reinterpret_cast<char*>(t.spf_.data()),
            static_cast<std::streamsize>(t.spf_.size() * sizeof(std::uint32_t)));
    if (!in) throw std::runtime_error("prime table cache: truncated file");
  } else {
    for (auto& v : t.spf_) v = read_le<std::uint32_t>(in);
  }
  for (std::uint64_t n = 2; n <= t.limit_; ++n) {
    const std::uint32_t p = t.spf_[n];
    if (p < 2 || n % p != 0) throw std::runtime_error("prime table cache: corrupt entry");
  }
  t.rebuild_primes();
  return t;
}

Factorization factorize(std::uint64_t n, const PrimeTable& table) {
  if (n < 2) throw std::invalid_argument("factorize: n must be >= 2");
  require_in_table(n, table, "factorize");
  const auto spf = table.smallest_factor_data();
  Factorization f{n, {}};
  while (n > 1) {
    const std::uint64_t p = spf[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  return f;
}

std::vector<std::uint64_t> distinct_primes(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw std::invalid_argument("distinct_primes: n must be >= 1");
  require_in_table(n, table, "distinct_primes");
  const auto spf = table.smallest_factor_data();
  std::vector<std::uint64_t> out;
  while (n > 1) {
    const std::uint64_t p = spf[n];
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  return out;
}

std::uint64_t largest_prime_factor(std::uint64_t n, const PrimeTable& table) {
  if (n < 2) throw std::invalid_argument("largest_prime_factor: undefined for n < 2");
  require_in_table(n, table, "largest_prime_factor");
  const auto spf = table.smallest_factor_data();
  std::uint64_t p = 0;
  while (n > 1) {
    p = spf[n];
    n /= p;
  }
  return p;
}

bool is_smooth(std::uint64_t n, double y, const PrimeTable& table) {
  if (n == 0) throw std::invalid_argument("is_smooth: n must be >= 1");
  if (n == 1) return true;
  return static_cast<double>(largest_prime_factor(n, table)) <= y;
}

std::vector<std::uint32_t> largest_factor_array(std::uint64_t x, const PrimeTable& table) {
  require_in_table(x, table, "largest_factor_array");
  const auto spf = table.smallest_factor_data();
  std::vector<std::uint32_t> lpf(x + 1, 1);
  for (std::uint64_t n = 2; n <= x; ++n) {
    const std::uint32_t p = spf[n];
    lpf[n] = std::max(p, lpf[n / p]);
  }
  return lpf;
}

std::uint64_t psi_count(std::uint64_t x, double y, const PrimeTable& table) {
  require_in_table(x, table, "psi_count");
  if (x == 0) return 0;
  const auto lpf = largest_factor_array(x, table);
  std::uint64_t count = 1;  // n = 1
  for (std::uint64_t n = 2; n <= x; ++n) {
    if (static_cast<double>(lpf[n]) <= y) ++count;
  }
  return count;
}

}  // namespace lgsieve
