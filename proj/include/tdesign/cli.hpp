#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdesign/error.hpp"
#include "tdesign/geometry.hpp"
#include "tdesign/optimize.hpp"
#include "tdesign/phases.hpp"

namespace tdesign::cli {

enum ExitCode : int { ok = 0, check_failed = 1, bad_input = 2, non_convergence = 3 };

/// Config validation failure; keys() lists every offending key.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> keys, const std::string& detail);
  const std::vector<std::string>& keys() const noexcept { return keys_; }

 private:
  std::vector<std::string> keys_;
};

struct RawEntry {
  std::string value;
  std::size_t line = 0;
};

/// `key = value` lines; '#' starts a comment; blank lines ignored.
/// Throws ParseError for lines without '=', empty keys or duplicate keys.
std::map<std::string, RawEntry> parse_config_text(std::string_view text);

enum class DesignSource { catalog, solve, file };

/// Typed scenario. Fields keep their defaults when the key is absent;
/// commands check their required keys with require().
struct ScenarioConfig {
  std::vector<int> t_list;
  DesignSource design_source = DesignSource::catalog;  // catalog falls back to the solver
  int design_n = 0;                                    // 0: default size
  std::uint64_t design_seed = 0;
  std::filesystem::path design_file;

  Kind body_kind = Kind::charge;
  double body_radius_m = 2e-6;
  double body_unit_weight = 1.602176634e-19;
  double body_central_radius_m = 1e-5;
  double body_total_mass_kg = 1.83e-11;
  double body_density_kg_m3 = 3510.0;

  Vec3 signal_position_m{0.0, 0.0, 10e-6};
  double signal_strength = 1.602176634e-19;
  Vec3 noise_position_m{0.0, 0.0, 200e-6};
  double noise_strength = 1.602176634e-16;
  NoisePair noise_pair = NoisePair::signal_optimized;

  Vec3 separation_m{10e-6, 0.0, 0.0};
  bool optimize = true;
  OptimizerConfig optimizer;
  double evolution_time_s = 1.0;

  std::filesystem::path output_csv;
  std::filesystem::path output_svg;

  std::vector<std::string> present;  // keys given in the file

  bool has(std::string_view key) const;
  /// Throws ConfigError naming every missing key.
  void require(const std::vector<std::string>& keys) const;
};

/// Strict conversion: unknown keys and malformed values are collected and
/// reported together in one ConfigError. Relative design.file paths resolve
/// against `base_dir`.
ScenarioConfig load_config(const std::map<std::string, RawEntry>& raw,
                           const std::filesystem::path& base_dir = {});
ScenarioConfig load_config_file(const std::filesystem::path& path);

/// Every recognised key.
const std::vector<std::string>& known_keys();

/// Resolves an output path: relative paths go under $TDESIGN_OUTPUT_DIR when set.
std::filesystem::path output_path(const std::filesystem::path& p);

/// Entry point; `args` excludes the program name. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tdesign::cli
