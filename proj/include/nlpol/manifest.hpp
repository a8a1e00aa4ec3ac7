#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nlpol {

std::string code_version();

struct RunManifest {
  std::string command;
  std::string preset;  // empty when a config file was used
  std::string config_path;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  std::string started;  // ISO 8601 UTC
  std::string finished;
  std::vector<std::string> outputs;
  std::vector<std::string> arguments;
  std::string resolved_config;  // canonical YAML actually run
};

std::string utc_timestamp();

// Writes <output>.manifest.json next to every output in m.outputs.
void write_manifests(const RunManifest& m);
std::string manifest_json(const RunManifest& m);

}  // namespace nlpol
