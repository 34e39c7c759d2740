#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  const auto parsed = lgsieve::cli::parse_args(args);
  if (!parsed.config) {
    (parsed.exit_code == lgsieve::cli::kExitOk ? std::cout : std::cerr) << parsed.message << '\n';
    return parsed.exit_code;
  }
  return lgsieve::cli::run(*parsed.config, std::cout, std::cerr);
}
