#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lagint::experiments {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  }
}

template <class Int>
Int to_int(const std::string& key, const std::string& v) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
  return out;
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("config: empty entry in coordinate list '" + text + "'");
    out.push_back(to_double("x", item));
  }
  if (out.empty()) throw ConfigError("config: empty coordinate list");
  return out;
}

std::string format_list(const std::vector<double>& values) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ":" : "") << values[i];
  return os.str();
}

void ExperimentConfig::set(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "experiment") experiment = value;
  else if (key == "alpha") alpha = to_double(key, value);
  else if (key == "N") n = to_int<int>(key, value);
  else if (key == "t") t = to_double(key, value);
  else if (key == "x" || key == "z") x = parse_list(value);
  else if (key == "n_samples") n_samples = to_int<std::size_t>(key, value);
  else if (key == "dt") dt = to_double(key, value);
  else if (key == "seed") seed = to_int<std::uint64_t>(key, value);
  else if (key == "panels") panels = to_int<int>(key, value);
  else if (key == "order") order = to_int<int>(key, value);
  else if (key == "tol") tol = to_double(key, value);
  else if (key == "out" || key == "out_dir") out_dir = value;
  else if (key == "sampler" || key == "kernel") sampler = value;
  else if (key == "fault") fault = value;
  else throw ConfigError("config: unknown key '" + key + "'");
}

void load_config_file(const std::filesystem::path& path, ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) + " is not key = value");
    cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

}  // namespace lagint::experiments
