#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace lagint::experiments {

/// Floats with 17 significant digits.
std::string format_double(double v);

/// Quotes a field when it contains a comma, quote or line break.
std::string csv_escape(const std::string& field);

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);

  /// `# key=value` lines written before the header.
  void comment(const std::string& text);
  void row(const std::vector<std::string>& fields);

 private:
  std::ofstream out_;
};

}  // namespace lagint::experiments
