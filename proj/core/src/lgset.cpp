#include "lgsieve/lgset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "lgsieve/numeric.hpp"

namespace lgsieve {

void LGParams::validate() const {
  if (x < 4) throw std::invalid_argument("x must be >= 4");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(c > delta && c <= 1.0)) throw std::invalid_argument("c must lie in (delta, 1]");
  if (!(epsilon_target > 0.0 && epsilon_target < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
}

LGSet::LGSet(LGParams params, std::vector<std::uint64_t> members)
    : params_(params), members_(std::move(members)) {
  params_.validate();
  prime_floor_ = floor_power(params_.x, params_.delta);
  index_.assign(params_.x + 1, false);
  std::uint64_t prev = 1;
  for (const std::uint64_t n : members_) {
    if (n <= prev || n > params_.x) {
      throw std::invalid_argument("LG members must be strictly increasing within [2, x]");
    }
    index_[n] = true;
    prev = n;
  }
}

std::span<const std::uint64_t> LGSet::members_below(double cutoff) const {
  const long double t = power_threshold(params_.x, cutoff);
  const auto end = std::partition_point(members_.begin(), members_.end(),
                                        [t](std::uint64_t n) { return below(n, t); });
  return {members_.data(), static_cast<std::size_t>(end - members_.begin())};
}

LGSet LGSet::with_cutoff(double c) const {
  LGParams p = params_;
  p.c = c;
  return LGSet(p, members_);
}

namespace {

struct ChainEnumerator {
  std::uint64_t x;
  std::span<const std::uint32_t> primes;  // only primes above the floor
  std::vector<std::uint64_t>& out;

  // `product` ends in primes[last] and satisfies x >= primes[last] * product.
  void extend(std::uint64_t product, std::size_t last) {
    for (std::size_t j = 0; j < last; ++j) {
      const std::uint64_t q = primes[j];
      const std::uint64_t next = product * q;  // < product * primes[last] <= x
      if (q * next > x) {
        out.push_back(next);
      } else {
        extend(next, j);
      }
    }
  }
};

void require_m(std::uint64_t m, std::uint64_t x) {
  if (m < 1 || m > x) {
    throw std::invalid_argument("m = " + std::to_string(m) + " outside [1, " +
                                std::to_string(x) + "]");
  }
}

}  // namespace

LGSet construct(const LGParams& params, const PrimeTable& table) {
  params.validate();
  if (table.limit() < params.x) {
    throw std::invalid_argument("prime table limit " + std::to_string(table.limit()) +
                                " is below x = " + std::to_string(params.x));
  }
  const std::uint64_t floor = floor_power(params.x, params.delta);
  const auto all = table.primes();
  const auto lo = std::upper_bound(all.begin(), all.end(), floor);
  const auto hi = std::upper_bound(all.begin(), all.end(), params.x);
  const std::span<const std::uint32_t> usable(lo, hi);

  std::vector<std::uint64_t> members;
  ChainEnumerator walk{params.x, usable, members};
  for (std::size_t j = 0; j < usable.size(); ++j) {
    const std::uint64_t p = usable[j];
    if (p * p > params.x) {
      members.push_back(p);
    } else {
      walk.extend(p, j);
    }
  }
  std::sort(members.begin(), members.end());
  return LGSet(params, std::move(members));
}

bool satisfies_chain_conditions(std::uint64_t n, std::uint64_t x, std::uint64_t prime_floor,
                                const PrimeTable& table) {
  if (n < 2 || n > x) return false;
  const Factorization f = factorize(n, table);
  for (const auto& [p, e] : f.factors) {
    if (e != 1 || p <= prime_floor) return false;
  }
  std::uint64_t product = 1;
  const std::size_t k = f.factors.size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t p = f.factors[k - 1 - i].prime;  // descending
    product *= p;
    const bool last = (i + 1 == k);
    if (!last && x < p * product) return false;
    if (last && !(product <= x && x < p * product)) return false;
  }
  return true;
}

std::optional<std::uint64_t> find_divisor(std::uint64_t m, const LGSet& set,
                                          const PrimeTable& table) {
  require_m(m, set.x());
  if (m > table.limit()) throw std::invalid_argument("find_divisor: prime table too small");
  const std::uint64_t x = set.x();
  const std::uint64_t floor = set.prime_floor();
  const auto spf = table.smallest_factor_data();

  // Distinct primes of m above the floor, ascending. 2^64 has at most 15.
  std::array<std::uint64_t, 16> large{};
  std::size_t count = 0;
  for (std::uint64_t r = m; r > 1;) {
    const std::uint64_t p = spf[r];
    if (p > floor) large[count++] = p;
    while (r % p == 0) r /= p;
  }

  std::uint64_t product = 1;
  for (std::size_t i = count; i-- > 0;) {
    const std::uint64_t q = large[i];
    product *= q;
    if (x < q * product) return product;
  }
  return std::nullopt;
}

LcmReport verify_pairwise_lcm(std::span<const std::uint64_t> elements, std::uint64_t x) {
  std::vector<std::uint64_t> sorted(elements.begin(), elements.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  LcmReport report;
  const std::uint64_t k = sorted.size();
  report.pairs_examined = k * (k - (k > 0 ? 1 : 0)) / 2;

  std::vector<std::uint8_t> hits(x + 1, 0);
  for (const std::uint64_t e : sorted) {
    if (e == 0 || e > x) continue;
    for (std::uint64_t m = e; m <= x; m += e) {
      if (hits[m] < 2) ++hits[m];
    }
  }

  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> shared;
  for (const std::uint64_t e : sorted) {
    if (e == 0 || e > x) continue;
    for (std::uint64_t m = e; m <= x; m += e) {
      if (hits[m] >= 2) shared[m].push_back(e);
    }
  }

  for (const auto& [m, divs] : shared) {
    for (std::size_t i = 0; i < divs.size(); ++i) {
      for (std::size_t j = i + 1; j < divs.size(); ++j) {
        const std::uint64_t l = std::lcm(divs[i], divs[j]);
        if (l == m) report.violations.push_back({divs[i], divs[j], l});
      }
    }
  }
  std::sort(report.violations.begin(), report.violations.end(),
            [](const LcmViolation& u, const LcmViolation& v) {
              return std::tie(u.a, u.b) < std::tie(v.a, v.b);
            });
  return report;
}

LcmReport verify_pairwise_lcm(const LGSet& set) {
  return verify_pairwise_lcm(set.members(), set.x());
}

double harmonic_sum(const LGSet& set, double cutoff) {
  CompensatedSum s;
  for (const std::uint64_t n : set.members_below(cutoff)) s += 1.0 / static_cast<double>(n);
  return s.value();
}

CoverageReport coverage(const LGSet& set, double cutoff, const PrimeTable& table,
                        unsigned workers) {
  const double delta = set.params().delta;
  if (!(cutoff > delta && cutoff <= 1.0)) {
    throw std::invalid_argument("coverage: cutoff must lie in (delta, 1]");
  }
  if (table.limit() < set.x()) throw std::invalid_argument("coverage: prime table too small");

  const std::uint64_t x = set.x();
  const long double t = power_threshold(x, cutoff);
  auto scan = [&](std::uint64_t from, std::uint64_t to) {
    std::uint64_t covered = 0;
    for (std::uint64_t m = from; m < to; ++m) {
      const auto d = find_divisor(m, set, table);
      if (d && below(*d, t)) ++covered;
    }
    return covered;
  };

  workers = std::max(1U, workers);
  std::vector<std::uint64_t> partial(workers, 0);
  if (workers == 1) {
    partial[0] = scan(1, x + 1);
  } else {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (x + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t from = 1 + w * chunk;
      const std::uint64_t to = std::min(x + 1, from + chunk);
      if (from >= to) break;
      pool.emplace_back([&, w, from, to] { partial[w] = scan(from, to); });
    }
  }

  CoverageReport r;
  r.cutoff_exponent = cutoff;
  r.x = x;
  r.members_below_cutoff = set.members_below(cutoff).size();
  r.covered_count = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
  r.exceptional_count = x - r.covered_count;
  r.harmonic_sum = harmonic_sum(set, cutoff);
  r.epsilon_prime = 1.0 - r.harmonic_sum;

  const double xd = static_cast<double>(x);
  const double gap = std::fabs(r.harmonic_sum - static_cast<double>(r.covered_count) / xd);
  const double allowance = (static_cast<double>(r.members_below_cutoff) + 1.0) / xd;
  if (r.covered_count + r.exceptional_count != x || gap > allowance) {
    throw std::logic_error("coverage accounting identity violated");
  }
  return r;
}

double choose_cutoff(const LGSet& set, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("choose_cutoff: epsilon must lie in (0, 1)");
  }
  const auto members = set.members();
  // suffix[i] = sum of 1/n over members[i..]
  std::vector<double> suffix(members.size() + 1, 0.0);
  CompensatedSum s;
  for (std::size_t i = members.size(); i-- > 0;) {
    s += 1.0 / static_cast<double>(members[i]);
    suffix[i] = s.value();
  }
  for (int k = 1; k <= 100; ++k) {
    const double c = k / 100.0;
    if (c <= set.params().delta) continue;
    const double tail = suffix[set.members_below(c).size()];
    if (tail < epsilon / 2.0) return c;
  }
  return 1.0;
}

}  // namespace lgsieve
