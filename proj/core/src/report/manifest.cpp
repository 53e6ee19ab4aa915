#include "bmetro/report/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bmetro/error.hpp"

#ifndef BMETRO_VERSION
#define BMETRO_VERSION "unknown"
#endif

namespace bmetro::report {

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string version() { return BMETRO_VERSION; }

std::string manifest_to_json(const Manifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["version"] = m.version;
  j["seed"] = m.seed;
  j["started_at"] = m.started_at;
  j["wall_time_seconds"] = m.wall_time_seconds;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : m.config) cfg[k] = v;
  j["config"] = cfg;
  nlohmann::ordered_json outs = nlohmann::ordered_json::array();
  for (const auto& o : m.outputs) outs.push_back({{"file", o.file}, {"fnv1a64", o.fnv1a64}});
  j["outputs"] = outs;
  return j.dump(2) + "\n";
}

Manifest manifest_from_json(const std::string& text) {
  Manifest m;
  try {
    const auto j = nlohmann::json::parse(text);
    m.command = j.at("command").get<std::string>();
    m.version = j.value("version", "");
    m.seed = j.value("seed", std::uint64_t{0});
    m.started_at = j.value("started_at", "");
    m.wall_time_seconds = j.value("wall_time_seconds", 0.0);
    for (const auto& [k, v] : j.at("config").items()) m.config[k] = v.get<std::string>();
    if (j.contains("outputs")) {
      for (const auto& o : j["outputs"]) {
        m.outputs.push_back({o.at("file").get<std::string>(), o.at("fnv1a64").get<std::string>()});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw_invalid(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

void write_manifest(const Manifest& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_invalid("cannot write manifest '" + path + "'");
  out << manifest_to_json(m);
}

Manifest read_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_invalid("cannot read manifest '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return manifest_from_json(buf.str());
}

}  // namespace bmetro::report
