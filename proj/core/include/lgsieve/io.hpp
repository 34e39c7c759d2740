#pragma once

// Serialization: LG sets as JSON, reports as CSV. Numbers are written in the
// shortest decimal form that round-trips, so output bytes are stable.

#include <filesystem>
#include <string>
#include <string_view>

#include "lgsieve/discrepancy.hpp"
#include "lgsieve/lgset.hpp"

namespace lgsieve {

std::string format_double(double v);

/// {"x": ..., "delta": ..., "c": ..., "members": [...]} with members ascending.
std::string lgset_to_json(const LGSet& set);
/// Throws std::invalid_argument on malformed documents.
LGSet lgset_from_json(std::string_view text);

void save_lgset(const LGSet& set, const std::filesystem::path& path);
LGSet load_lgset(const std::filesystem::path& path);

inline constexpr std::string_view kCoverageCsvHeader =
    "x,delta,cutoff,covered,exceptional,harmonic_sum,epsilon_prime";

std::string coverage_csv_row(const CoverageReport& report, double delta);

/// "q,sum_sq,contribution" per modulus, then a "total" summary row.
std::string discrepancy_csv(const DiscrepancyReport& report);

}  // namespace lgsieve
