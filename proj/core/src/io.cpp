#include "lgsieve/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lgsieve {

std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return {buf, end};
}

std::string lgset_to_json(const LGSet& set) {
  nlohmann::ordered_json doc;
  doc["x"] = set.x();
  doc["delta"] = set.params().delta;
  doc["c"] = set.params().c;
  doc["members"] = std::vector<std::uint64_t>(set.members().begin(), set.members().end());
  return doc.dump() + "\n";
}

LGSet lgset_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    LGParams p;
    p.x = doc.at("x").get<std::uint64_t>();
    p.delta = doc.at("delta").get<double>();
    p.c = doc.at("c").get<double>();
    auto members = doc.at("members").get<std::vector<std::uint64_t>>();
    return LGSet(p, std::move(members));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("LG set JSON: ") + e.what());
  }
}

void save_lgset(const LGSet& set, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << lgset_to_json(set);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

LGSet load_lgset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return lgset_from_json(ss.str());
}

std::string coverage_csv_row(const CoverageReport& r, double delta) {
  std::string row = std::to_string(r.x);
  row += ',' + format_double(delta);
  row += ',' + format_double(r.cutoff_exponent);
  row += ',' + std::to_string(r.covered_count);
  row += ',' + std::to_string(r.exceptional_count);
  row += ',' + format_double(r.harmonic_sum);
  row += ',' + format_double(r.epsilon_prime);
  return row;
}

std::string discrepancy_csv(const DiscrepancyReport& r) {
  std::string out = "q,sum_sq,contribution\n";
  std::uint64_t total_sq = 0;
  for (const auto& t : r.terms) {
    out += std::to_string(t.q) + ',' + std::to_string(t.sum_sq) + ',' +
           format_double(t.contribution) + '\n';
    total_sq += t.sum_sq;
  }
  out += "total," + std::to_string(total_sq) + ',' + format_double(r.lhs) + '\n';
  return out;
}

}  // namespace lgsieve
