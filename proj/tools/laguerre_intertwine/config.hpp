#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lagint::experiments {

/// Bad or inconsistent experiment configuration (exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters of one experiment run. Unset optionals fall back to the
/// experiment's default grid.
struct ExperimentConfig {
  std::string experiment;
  std::optional<double> alpha;
  std::optional<int> n;
  std::optional<double> t;
  std::optional<std::vector<double>> x;
  std::size_t n_samples = 20000;
  std::optional<double> dt;
  std::uint64_t seed = 20240917;
  std::optional<int> panels;
  std::optional<int> order;
  std::optional<double> tol;
  std::filesystem::path out_dir = ".";
  std::string sampler = "alpha-corner";
  std::string fault;  ///< test hook: "corrupt-density" perturbs kernel masses

  /// Sets one key from its text form; throws ConfigError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
};

/// Flat `key = value` file; `#` starts a comment, blank lines are ignored.
void load_config_file(const std::filesystem::path& path, ExperimentConfig& cfg);

std::vector<double> parse_list(const std::string& text);
std::string format_list(const std::vector<double>& values);

}  // namespace lagint::experiments
