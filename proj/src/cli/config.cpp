#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "tdesign/cli.hpp"
#include "tdesign/io.hpp"

namespace tdesign::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

struct Bad {
  std::string why;
};

double to_double(std::string_view v) {
  const auto d = io::parse_double(v);
  if (!d || !std::isfinite(*d)) throw Bad{"expected a finite number"};
  return *d;
}

double to_positive(std::string_view v) {
  const double d = to_double(v);
  if (!(d > 0.0)) throw Bad{"expected a positive number"};
  return d;
}

template <class Int>
Int to_int(std::string_view v) {
  Int out{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) throw Bad{"expected an integer"};
  return out;
}

int to_positive_int(std::string_view v) {
  const int i = to_int<int>(v);
  if (i < 1) throw Bad{"expected a positive integer"};
  return i;
}

Vec3 to_vec3(std::string_view v) {
  const auto parts = split(v, ',');
  if (parts.size() != 3) throw Bad{"expected three comma-separated numbers"};
  return {to_double(parts[0]), to_double(parts[1]), to_double(parts[2])};
}

bool to_bool(std::string_view v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw Bad{"expected true or false"};
}

using Setter = std::function<void(ScenarioConfig&, std::string_view, const std::filesystem::path&)>;

const std::vector<std::pair<std::string, Setter>>& schema() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"design.t_list",
       [](ScenarioConfig& c, std::string_view v, const auto&) {
         if (v.empty()) throw Bad{"t list is empty"};
         c.t_list.clear();
         for (const auto part : split(v, ',')) {
           const int t = to_int<int>(part);
           if (t < 1 || t > 32) throw Bad{"t must lie in [1, 32]"};
           c.t_list.push_back(t);
         }
       }},
      {"design.source",
       [](ScenarioConfig& c, std::string_view v, const auto&) {
         if (v == "catalog") {
           c.design_source = DesignSource::catalog;
         } else if (v == "solve") {
           c.design_source = DesignSource::solve;
         } else if (v == "file") {
           c.design_source = DesignSource::file;
         } else {
           throw Bad{"expected catalog, solve or file"};
         }
       }},
      {"design.n",
       [](ScenarioConfig& c, std::string_view v, const auto&) {
         c.design_n = to_int<int>(v);
         if (c.design_n < 0) throw Bad{"expected a non-negative integer"};
       }},
      {"design.seed",
       [](ScenarioConfig& c, std::string_view v, const auto&) {
         c.design_seed = to_int<std::uint64_t>(v);
       }},
      {"design.file",
       [](ScenarioConfig& c, std::string_view v, const std::filesystem::path& base) {
         if (v.empty()) throw Bad{"expected a path"};
         std::filesystem::path p{std::string(v)};
         c.design_file = p.is_relative() && !base.empty() ? base / p : p;
       }},
      {"body.kind",
       [](ScenarioConfig& c, std::string_view v, const auto&) {
         if (v == "charge") {
           c.body_kind = Kind::charge;
         } else if (v == "mass") {
           c.body_kind = Kind::mass;
         } else {
           throw Bad{"expected charge or mass"};
         }
       }},
      {"body.radius_m", [](ScenarioConfig& c, std::string_view v, const auto&) { c.body_radius_m = to_positive(v); }},
      {"body.unit_weight", [](ScenarioConfig& c, std::string_view v, const auto&) { c.body_unit_weight = to_double(v); }},
      {"body.central_radius_m",
       [](ScenarioConfig& c, std::string_view v, const auto&) { c.body_central_radius_m = to_positive(v); }},
      {"body.total_mass_kg",
       [](ScenarioConfig& c, std::string_view v, const auto&) { c.body_total_mass_kg = to_positive(v); }},
      {"body.density_kg_m3",
       [](ScenarioConfig& c, std::string_view v, const auto&) { c.body_density_kg_m3 = to_positive(v); }},
      {"signal.position_m", [](ScenarioConfig& c, std::string_view v, const auto&) { c.signal_position_m = to_vec3(v); }},
      {"signal.strength", [](ScenarioConfig& c, std::string_view v, const auto&) { c.signal_strength = to_double(v); }},
      {"noise.position_m", [](ScenarioConfig& c, std::string_view v, const auto&) { c.noise_position_m = to_vec3(v); }},
      {"noise.strength", [](ScenarioConfig& c, std::string_view v, const auto&) { c.noise_strength = to_double(v); }},
      {"noise.pair",
       [](ScenarioConfig& c, std::string_view v, const auto&) {
         if (v == "signal_optimized") {
           c.noise_pair = NoisePair::signal_optimized;
         } else if (v == "worst_case") {
           c.noise_pair = NoisePair::worst_case;
         } else {
           throw Bad{"expected signal_optimized or worst_case"};
         }
       }},
      {"separation_m", [](ScenarioConfig& c, std::string_view v, const auto&) { c.separation_m = to_vec3(v); }},
      {"optimizer.enabled", [](ScenarioConfig& c, std::string_view v, const auto&) { c.optimize = to_bool(v); }},
      {"optimizer.restarts",
       [](ScenarioConfig& c, std::string_view v, const auto&) { c.optimizer.restarts = to_positive_int(v); }},
      {"optimizer.seed",
       [](ScenarioConfig& c, std::string_view v, const auto&) { c.optimizer.seed = to_int<std::uint64_t>(v); }},
      {"optimizer.max_iters",
       [](ScenarioConfig& c, std::string_view v, const auto&) { c.optimizer.max_iters = to_positive_int(v); }},
      {"optimizer.xtol", [](ScenarioConfig& c, std::string_view v, const auto&) { c.optimizer.xtol = to_positive(v); }},
      {"optimizer.ftol", [](ScenarioConfig& c, std::string_view v, const auto&) { c.optimizer.ftol = to_positive(v); }},
      {"optimizer.initial_step",
       [](ScenarioConfig& c, std::string_view v, const auto&) { c.optimizer.initial_step = to_positive(v); }},
      {"evolution.time_s",
       [](ScenarioConfig& c, std::string_view v, const auto&) {
         c.evolution_time_s = to_double(v);
         if (c.evolution_time_s < 0.0) throw Bad{"expected a non-negative time"};
       }},
      {"output.csv",
       [](ScenarioConfig& c, std::string_view v, const auto&) { c.output_csv = std::string(v); }},
      {"output.svg",
       [](ScenarioConfig& c, std::string_view v, const auto&) { c.output_svg = std::string(v); }},
  };
  return table;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> keys, const std::string& detail)
    : Error(detail), keys_(std::move(keys)) {}

std::map<std::string, RawEntry> parse_config_text(std::string_view text) {
  std::map<std::string, RawEntry> out;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(lineno, "expected `key = value`");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ParseError(lineno, "empty key");
    if (out.count(key)) throw ParseError(lineno, "duplicate key '" + key + "'");
    out[key] = {std::string(trim(line.substr(eq + 1))), lineno};
  }
  return out;
}

bool ScenarioConfig::has(std::string_view key) const {
  return std::find(present.begin(), present.end(), key) != present.end();
}

void ScenarioConfig::require(const std::vector<std::string>& keys) const {
  std::vector<std::string> missing;
  for (const auto& k : keys) {
    if (!has(k)) missing.push_back(k);
  }
  if (missing.empty()) return;
  std::string msg = "missing required keys:";
  for (const auto& k : missing) msg += " " + k;
  throw ConfigError(missing, msg);
}

ScenarioConfig load_config(const std::map<std::string, RawEntry>& raw,
                           const std::filesystem::path& base_dir) {
  ScenarioConfig cfg;
  std::vector<std::string> bad_keys;
  std::ostringstream msg;
  const auto& table = schema();
  for (const auto& [key, entry] : raw) {
    const auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == key; });
    if (it == table.end()) {
      bad_keys.push_back(key);
      msg << "\n  line " << entry.line << ": unknown key '" << key << "'";
      continue;
    }
    try {
      it->second(cfg, entry.value, base_dir);
      cfg.present.push_back(key);
    } catch (const Bad& b) {
      bad_keys.push_back(key);
      msg << "\n  line " << entry.line << ": " << key << ": " << b.why;
    }
  }
  if (!bad_keys.empty()) throw ConfigError(bad_keys, "invalid config:" + msg.str());
  return cfg;
}

ScenarioConfig load_config_file(const std::filesystem::path& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const Error& e) {
    throw ConfigError({}, e.what());
  }
  return load_config(parse_config_text(text), path.parent_path());
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& e : schema()) k.push_back(e.first);
    return k;
  }();
  return keys;
}

std::filesystem::path output_path(const std::filesystem::path& p) {
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("TDESIGN_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
    return std::filesystem::path(dir) / p;
  }
  return p;
}

}  // namespace tdesign::cli
