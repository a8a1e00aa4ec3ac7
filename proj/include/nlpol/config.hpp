#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nlpol/scenario.hpp"

namespace nlpol {

// Presets compiled into the library: (name, YAML text).
const std::vector<std::pair<std::string, std::string>>& shipped_presets();
std::vector<std::string> preset_names();
const std::string& preset_text(const std::string& name);

// Parses a scenario from YAML text after applying "section.key=value" overrides. Unknown
// sections or keys, malformed values and malformed overrides throw ConfigError.
Scenario parse_scenario(const std::string& yaml, const std::vector<std::string>& overrides = {});

Scenario load_preset(const std::string& name, const std::vector<std::string>& overrides = {});

// Throws IoError when the file cannot be read.
Scenario load_scenario_file(const std::string& path, const std::vector<std::string>& overrides = {});

// Canonical YAML with every key and 17 significant digits; parse(serialize(s)) == s.
std::string serialize_scenario(const Scenario& s);

}  // namespace nlpol
