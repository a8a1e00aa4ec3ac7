#include "nlpol/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <json.hpp>

#include "nlpol/error.hpp"

namespace nlpol {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["preset"] = m.preset;
  j["config_path"] = m.config_path;
  j["overrides"] = m.overrides;
  j["seed"] = m.seed;
  j["code_version"] = code_version();
  j["started"] = m.started;
  j["finished"] = m.finished;
  j["outputs"] = m.outputs;
  j["arguments"] = m.arguments;
  j["resolved_config"] = m.resolved_config;
  return j.dump(2) + "\n";
}

void write_manifests(const RunManifest& m) {
  const std::string text = manifest_json(m);
  for (const auto& path : m.outputs) {
    std::ofstream out(path + ".manifest.json", std::ios::binary);
    if (!out) throw IoError("cannot write manifest for " + path);
    out << text;
  }
}

}  // namespace nlpol
