#pragma once

// Command-line front end. parse_args() validates everything up front; run()
// is deterministic given the config (and its seed).
//
// Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 I/O error.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lgsieve::cli {

enum class Command { build, verify, coverage, dickman, sieve_check, theorem2, sumset, sweep };
enum class Format { csv, json };
enum class WeightKind { ones, random_dense, random_sparse };

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

struct GridRange {
  double start = 0.0;
  double step = 0.0;
  double stop = 0.0;
  [[nodiscard]] std::vector<double> points() const;
};

struct RunConfig {
  Command command = Command::build;

  std::uint64_t x = 100'000;
  double delta = 0.05;
  std::optional<double> c;  // chosen from epsilon when absent
  double epsilon = 0.2;
  double theta = 0.5;
  double gamma = 0.1;
  std::uint64_t seed = 1;

  std::uint64_t size_a = 5'000;
  std::uint64_t size_b = 5'000;
  std::uint64_t size = 1'000;  // sieve-check set size
  std::uint64_t trials = 1;
  std::uint64_t seeds = 1;     // sweep: seeds per grid point
  WeightKind weights = WeightKind::random_dense;
  bool lg_at_2x = false;
  std::optional<GridRange> theta_grid;

  double max_u = 5.0;
  double step = 1.0 / 1024.0;
  double du = 0.25;
  std::uint64_t empirical_x = 100'000;

  std::optional<std::filesystem::path> in;
  std::optional<std::filesystem::path> out;
  Format format = Format::csv;
  std::optional<std::uint64_t> table_limit;
  unsigned workers = 1;
};

struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = kExitOk;  // nonzero when config is empty
  std::string message;      // usage text or the error naming the bad flag
};

/// argv[0] is the program name.
ParseResult parse_args(const std::vector<std::string>& argv);

/// Writes artifacts to config.out (or `out` when unset) and diagnostics to
/// `err`. Returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace lgsieve::cli
