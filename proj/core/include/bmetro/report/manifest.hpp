#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bmetro::report {

struct OutputRecord {
  std::string file;      // path relative to the output directory
  std::string fnv1a64;   // 16 hex digits of the file content hash
};

/// Everything needed to replay a run and check its outputs.
struct Manifest {
  std::string command;                       // e.g. "table", "figure"
  std::map<std::string, std::string> config; // RunConfig::to_map()
  std::string version;
  std::uint64_t seed = 0;
  std::string started_at;                    // UTC, ISO 8601
  double wall_time_seconds = 0.0;
  std::vector<OutputRecord> outputs;
};

std::string fnv1a64_hex(std::string_view bytes);

std::string manifest_to_json(const Manifest& m);
Manifest manifest_from_json(const std::string& text);

void write_manifest(const Manifest& m, const std::string& path);
Manifest read_manifest(const std::string& path);

/// Library version string.
std::string version();

}  // namespace bmetro::report
