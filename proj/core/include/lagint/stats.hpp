#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lagint {

struct EmpiricalSample {
  std::vector<double> values;
  std::string label;

  EmpiricalSample() = default;
  EmpiricalSample(std::vector<double> v, std::string l = {})
      : values(std::move(v)), label(std::move(l)) {}

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  [[nodiscard]] std::vector<double> sorted() const;
  [[nodiscard]] double mean() const;
  [[nodiscard]] double variance() const;  ///< unbiased
};

enum class ReportKind { p_value, z_score };

struct ComparisonReport {
  std::string test;
  ReportKind kind = ReportKind::p_value;
  double statistic = 0.0;
  double p_value = 1.0;
  double threshold = 0.01;
  bool pass = true;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  std::uint64_t seed = 0;

  /// Re-evaluates `pass` against a new p-value threshold.
  void set_threshold(double level);
};

/// Asymptotic Kolmogorov distribution tail P(K > lambda).
double kolmogorov_tail(double lambda);

ComparisonReport ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b,
                               double level = 0.01);
ComparisonReport ks_one_sample(const EmpiricalSample& a, const std::function<double(double)>& cdf,
                               double level = 0.01);

/// z-score of the sample mean against target_mean with standard error
/// sqrt(target_var / n); passes iff |z| <= 4.
ComparisonReport moment_compare(const EmpiricalSample& a, double target_mean, double target_var);

/// Applies Bonferroni at `family_level` to the p-value based reports in place
/// (moment comparisons keep their |z| <= 4 rule) and returns whether all pass.
bool bonferroni(std::vector<ComparisonReport>& reports, double family_level = 0.01);

}  // namespace lagint
