#include "qcournot/run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "qcournot/game_types.hpp"

namespace qcournot {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_value(const std::string& key, const std::string& text, int line_no) {
  if constexpr (std::is_unsigned_v<T>) {
    if (!text.empty() && text.front() == '-') {
      std::ostringstream os;
      os << "config line " << line_no << ": " << key << " must be nonnegative";
      throw DomainError(os.str());
    }
  }
  std::istringstream is(text);
  T value{};
  is >> value;
  if (is.fail() || !(is >> std::ws).eof()) {
    std::ostringstream os;
    os << "config line " << line_no << ": bad value '" << text << "' for " << key;
    throw DomainError(os.str());
  }
  return value;
}

}  // namespace

void RunConfig::validate() const {
  require_k(default_k);
  if (!std::isfinite(default_gamma) || default_gamma < 0.0 || default_gamma >= kQuarterPi) {
    throw DomainError("default_gamma must lie in [0, pi/4)");
  }
  if (mc_samples < 1) throw DomainError("mc_samples must be positive");
  if (!(series_tail_tol > 0.0 && series_tail_tol <= 1e-6)) {
    throw DomainError("series_tail_tol must lie in (0, 1e-6]");
  }
  if (output_precision < 1 || output_precision > 17) {
    throw DomainError("output_precision must lie in [1, 17]");
  }
}

RunConfig parse_config(std::istream& in, const RunConfig& base) {
  RunConfig cfg = base;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "config line " << line_no << ": expected key = value";
      throw DomainError(os.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "default_k") {
      cfg.default_k = parse_value<double>(key, value, line_no);
    } else if (key == "default_gamma") {
      cfg.default_gamma = parse_value<double>(key, value, line_no);
    } else if (key == "mc_samples") {
      cfg.mc_samples = parse_value<std::uint64_t>(key, value, line_no);
    } else if (key == "mc_seed") {
      cfg.mc_seed = parse_value<std::uint64_t>(key, value, line_no);
    } else if (key == "series_tail_tol") {
      cfg.series_tail_tol = parse_value<double>(key, value, line_no);
    } else if (key == "output_precision") {
      cfg.output_precision = parse_value<int>(key, value, line_no);
    } else {
      std::ostringstream os;
      os << "config line " << line_no << ": unknown key '" << key << "'";
      throw DomainError(os.str());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path, const RunConfig& base) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file " + path);
  return parse_config(in, base);
}

RunConfig resolve_config(const std::optional<std::string>& flag_path) {
  if (flag_path) return load_config_file(*flag_path);
  if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0') {
    return load_config_file(env);
  }
  return {};
}

}  // namespace qcournot
