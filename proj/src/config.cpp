#include "nlpol/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "nlpol/error.hpp"

namespace nlpol {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename E>
struct EnumNames {
  std::vector<std::pair<E, const char*>> names;

  E parse(const std::string& text, const std::string& path) const {
    for (const auto& [value, name] : names)
      if (text == name) return value;
    std::string allowed;
    for (const auto& entry : names) allowed += std::string(allowed.empty() ? "" : ", ") + entry.second;
    throw ConfigError(path + ": unknown value '" + text + "' (expected one of " + allowed + ")");
  }

  const char* name(E value) const {
    for (const auto& [v, n] : names)
      if (v == value) return n;
    return "?";
  }
};

const EnumNames<KernelKind> kKernel{{{KernelKind::Grating, "grating"}, {KernelKind::LocalDelta, "local"}}};
const EnumNames<Scheme> kScheme{
    {{Scheme::MeanField, "mean-field"}, {Scheme::FullThreeTerm, "full-three-term"}}};
const EnumNames<Composition> kComposition{
    {{Composition::Strang, "strang"}, {Composition::Lie, "lie"}}};
const EnumNames<DispersionSign> kSign{
    {{DispersionSign::Analytic, "analytic"}, {DispersionSign::AsPrinted, "as-printed"}}};
const EnumNames<ConvolutionMode> kConvolution{
    {{ConvolutionMode::Circular, "circular"}, {ConvolutionMode::FiniteWindow, "finite-window"}}};
const EnumNames<FeatureKind> kFeature{{{FeatureKind::RotonDip, "roton-dip"},
                                       {FeatureKind::SpectrumPeak, "spectrum-peak"},
                                       {FeatureKind::GrowthPeak, "growth-peak"}}};

template <typename T>
T scalar(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) throw ConfigError(path + ": expected a scalar value");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(path + ": cannot convert '" + node.Scalar() + "'");
  }
}

struct Field {
  std::string section;
  std::string key;
  std::function<void(Scenario&, const YAML::Node&, const std::string&)> read;
  std::function<std::string(const Scenario&)> write;  // YAML flow text
};

Field number(std::string section, std::string key, double Scenario::*member) {
  return {section, key,
          [member](Scenario& s, const YAML::Node& n, const std::string& p) { s.*member = scalar<double>(n, p); },
          [member](const Scenario& s) { return format_double(s.*member); }};
}

template <typename Rec>
Field nested(std::string section, std::string key, Rec Scenario::*rec, double Rec::*member) {
  return {section, key,
          [rec, member](Scenario& s, const YAML::Node& n, const std::string& p) {
            s.*rec.*member = scalar<double>(n, p);
          },
          [rec, member](const Scenario& s) { return format_double(s.*rec.*member); }};
}

template <typename I>
Field integer(std::string section, std::string key, I Scenario::*member) {
  return {section, key,
          [member](Scenario& s, const YAML::Node& n, const std::string& p) {
            const auto text = scalar<std::string>(n, p);
            if (text.empty() || text[0] == '-') throw ConfigError(p + ": expected a non-negative integer");
            s.*member = static_cast<I>(scalar<unsigned long long>(n, p));
          },
          [member](const Scenario& s) { return std::to_string(s.*member); }};
}

template <typename E, typename Get, typename Set>
Field enumeration(std::string section, std::string key, const EnumNames<E>& names, Get get, Set set) {
  return {section, key,
          [&names, set](Scenario& s, const YAML::Node& n, const std::string& p) {
            set(s, names.parse(scalar<std::string>(n, p), p));
          },
          [&names, get](const Scenario& s) { return std::string(names.name(get(s))); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(nested("medium", "atom_density", &Scenario::medium, &MediumParams::atom_density));
    f.push_back(nested("medium", "mode_area", &Scenario::medium, &MediumParams::mode_area));
    f.push_back(nested("medium", "length", &Scenario::medium, &MediumParams::length));
    f.push_back(nested("medium", "cross_section", &Scenario::medium, &MediumParams::cross_section));
    f.push_back(nested("medium", "gamma", &Scenario::medium, &MediumParams::gamma));
    f.push_back(nested("medium", "light_speed", &Scenario::medium, &MediumParams::light_speed));
    f.push_back(nested("medium", "probe_wavenumber", &Scenario::medium, &MediumParams::probe_wavenumber));
    f.push_back(nested("eit", "rabi", &Scenario::eit, &EitParams::rabi));
    f.push_back(nested("eit", "coupling_detuning", &Scenario::eit, &EitParams::coupling_detuning));
    f.push_back(number("polariton", "coupling", &Scenario::coupling));
    f.push_back(number("polariton", "tan2_theta", &Scenario::tan2_theta));
    f.push_back(enumeration(
        "potential", "kernel", kKernel, [](const Scenario& s) { return s.kernel; },
        [](Scenario& s, KernelKind k) { s.kernel = k; }));
    f.push_back(number("potential", "range", &Scenario::range));
    f.push_back(number("potential", "laser_wavenumber", &Scenario::laser_wavenumber));
    f.push_back(number("potential", "tilt", &Scenario::tilt));
    f.push_back(number("potential", "grating_period", &Scenario::grating_period));
    f.push_back(number("potential", "local_strength_factor", &Scenario::local_strength_factor));
    f.push_back(number("laser", "intensity", &Scenario::intensity));
    f.push_back(number("laser", "rabi2_per_intensity", &Scenario::rabi2_per_intensity));
    f.push_back(number("laser", "detuning", &Scenario::laser_detuning));
    f.push_back(number("laser", "eta", &Scenario::eta));
    f.push_back(number("laser", "gamma", &Scenario::laser_gamma));
    f.push_back(nested("cw", "photon_density", &Scenario::cw, &CwBackground::photon_density));
    f.push_back(nested("cw", "phase", &Scenario::cw, &CwBackground::phase));
    f.push_back(number("noise", "amplitude", &Scenario::noise_amplitude));
    f.push_back(number("noise", "cutoff", &Scenario::noise_cutoff));
    f.push_back(number("decoherence", "kappa", &Scenario::kappa));
    f.push_back(number("decoherence", "upper_detuning", &Scenario::upper_detuning));
    f.push_back(integer("grid", "points", &Scenario::grid_points));
    f.push_back(number("grid", "length", &Scenario::grid_length));
    f.push_back(enumeration(
        "scheme", "kind", kScheme, [](const Scenario& s) { return s.scheme.scheme; },
        [](Scenario& s, Scheme v) { s.scheme.scheme = v; }));
    f.push_back(nested("scheme", "dt", &Scenario::scheme, &SchemeConfig::dt));
    f.push_back(enumeration(
        "scheme", "composition", kComposition, [](const Scenario& s) { return s.scheme.composition; },
        [](Scenario& s, Composition v) { s.scheme.composition = v; }));
    f.push_back({"scheme", "residual_substeps",
                 [](Scenario& s, const YAML::Node& n, const std::string& p) {
                   const long v = scalar<long>(n, p);
                   if (v < 1) throw ConfigError(p + ": must be at least 1");
                   s.scheme.residual_substeps = static_cast<unsigned>(v);
                 },
                 [](const Scenario& s) { return std::to_string(s.scheme.residual_substeps); }});
    f.push_back(enumeration(
        "scheme", "dispersion_sign", kSign, [](const Scenario& s) { return s.scheme.dispersion_sign; },
        [](Scenario& s, DispersionSign v) { s.scheme.dispersion_sign = v; }));
    f.push_back(enumeration(
        "scheme", "convolution", kConvolution, [](const Scenario& s) { return s.scheme.convolution; },
        [](Scenario& s, ConvolutionMode v) { s.scheme.convolution = v; }));
    f.push_back(nested("scheme", "stability_guard", &Scenario::scheme, &SchemeConfig::stability_guard));
    f.push_back({"scheme", "enforce_guard",
                 [](Scenario& s, const YAML::Node& n, const std::string& p) {
                   s.scheme.enforce_guard = scalar<bool>(n, p);
                 },
                 [](const Scenario& s) { return std::string(s.scheme.enforce_guard ? "true" : "false"); }});
    f.push_back(number("run", "t_final", &Scenario::t_final));
    f.push_back({"run", "observe_transits",
                 [](Scenario& s, const YAML::Node& n, const std::string& p) {
                   if (!n.IsSequence()) throw ConfigError(p + ": expected a list");
                   s.observe_transits.clear();
                   for (std::size_t i = 0; i < n.size(); ++i)
                     s.observe_transits.push_back(scalar<double>(n[i], p));
                 },
                 [](const Scenario& s) {
                   std::string out = "[";
                   for (std::size_t i = 0; i < s.observe_transits.size(); ++i)
                     out += (i ? ", " : "") + format_double(s.observe_transits[i]);
                   return out + "]";
                 }});
    f.push_back(integer("run", "ensemble", &Scenario::ensemble));
    f.push_back(integer("run", "seed", &Scenario::seed));
    f.push_back(integer("run", "workers", &Scenario::workers));
    f.push_back(enumeration(
        "run", "feature", kFeature, [](const Scenario& s) { return s.feature; },
        [](Scenario& s, FeatureKind v) { s.feature = v; }));
    return f;
  }();
  return table;
}

void apply_override(YAML::Node& root, const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + text + "' is not key=value");
  const std::string path = text.substr(0, eq);
  const std::string value = text.substr(eq + 1);
  const auto dot = path.find('.');
  YAML::Node parsed;
  try {
    parsed = YAML::Load(value);
  } catch (const YAML::Exception& e) {
    throw ConfigError("override '" + text + "': " + e.what());
  }
  if (dot == std::string::npos) {
    if (path != "name") throw ConfigError("override '" + path + "' needs section.key");
    root["name"] = parsed;
    return;
  }
  const std::string section = path.substr(0, dot);
  const std::string key = path.substr(dot + 1);
  if (key.empty() || key.find('.') != std::string::npos)
    throw ConfigError("override '" + path + "' must be section.key");
  root[section][key] = parsed;
}

Scenario from_node(const YAML::Node& root) {
  if (!root.IsMap()) throw ConfigError("config must be a mapping of sections");
  std::map<std::string, std::map<std::string, const Field*>> index;
  for (const auto& f : fields()) index[f.section][f.key] = &f;

  Scenario s;
  std::set<std::string> seen;
  for (const auto& entry : root) {
    const auto section = entry.first.as<std::string>();
    if (!seen.insert(section).second) throw ConfigError("duplicate section '" + section + "'");
    if (section == "name") {
      s.name = scalar<std::string>(entry.second, "name");
      continue;
    }
    const auto it = index.find(section);
    if (it == index.end()) throw ConfigError("unknown config section '" + section + "'");
    if (!entry.second.IsMap()) throw ConfigError("section '" + section + "' must be a mapping");
    for (const auto& kv : entry.second) {
      const auto key = kv.first.as<std::string>();
      const auto f = it->second.find(key);
      if (f == it->second.end()) throw ConfigError("unknown config key '" + section + "." + key + "'");
      f->second->read(s, kv.second, section + "." + key);
    }
  }
  return s;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : shipped_presets()) names.push_back(p.first);
  return names;
}

const std::string& preset_text(const std::string& name) {
  for (const auto& p : shipped_presets())
    if (p.first == name) return p.second;
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw ConfigError("unknown preset '" + name + "' (available: " + known + ")");
}

Scenario parse_scenario(const std::string& yaml, const std::vector<std::string>& overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  for (const auto& o : overrides) apply_override(root, o);
  try {
    return from_node(root);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

Scenario load_preset(const std::string& name, const std::vector<std::string>& overrides) {
  return parse_scenario(preset_text(name), overrides);
}

Scenario load_scenario_file(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(), overrides);
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  YAML::Emitter name_out;
  name_out << s.name;
  out << "name: " << name_out.c_str() << "\n";
  std::string section;
  for (const auto& f : fields()) {
    if (f.section != section) {
      section = f.section;
      out << section << ":\n";
    }
    out << "  " << f.key << ": " << f.write(s) << "\n";
  }
  return out.str();
}

}  // namespace nlpol
