#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>

namespace qcournot {

/// Defaults shared by the CLI commands. Read from a flat `key = value` file;
/// `#` starts a comment. Command-line flags take precedence.
struct RunConfig {
  double default_k = 4.0;
  double default_gamma = 0.0;
  std::uint64_t mc_samples = 1'000'000;
  std::uint64_t mc_seed = 1;
  double series_tail_tol = 1e-12;
  int output_precision = 12;

  void validate() const;
};

/// Environment variable naming the config file used when --config is absent.
inline constexpr const char* kConfigEnvVar = "QCOURNOT_CONFIG";

RunConfig parse_config(std::istream& in, const RunConfig& base = {});
RunConfig load_config_file(const std::string& path, const RunConfig& base = {});

/// --config if given, otherwise $QCOURNOT_CONFIG if set, otherwise built-in defaults.
RunConfig resolve_config(const std::optional<std::string>& flag_path);

}  // namespace qcournot
