#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "lagint/stats.hpp"

namespace lagint::experiments {

struct CheckRow {
  std::string check;
  std::string params;
  double value = 0.0;
  double reference = 0.0;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = true;
  /// Hypothesis-test row: value is the p-value and threshold the per-test level.
  bool hypothesis_test = false;
};

struct ExperimentResult {
  std::string experiment;
  std::vector<CheckRow> rows;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] std::size_t failures() const;
  void append(const ExperimentResult& other);
  /// Adds one row per report (p-value as value, statistic, threshold).
  void add_reports(const std::vector<ComparisonReport>& reports, const std::string& params);
};

/// `<out_dir>/<experiment>.csv`: one header line, one row per check and a final summary row.
void write_result_csv(const ExperimentResult& result, const ExperimentConfig& cfg);
/// Human-readable report, one line per check.
void print_result(const ExperimentResult& result, std::ostream& os, bool failures_only = false);

// Quadrature experiments.
ExperimentResult run_kernel_normalization(const ExperimentConfig& cfg);
ExperimentResult run_composition(const ExperimentConfig& cfg);
ExperimentResult run_kernels_check(const ExperimentConfig& cfg);

enum class IntertwineSet { main, shifted, all };
ExperimentResult run_intertwine(const ExperimentConfig& cfg, IntertwineSet set = IntertwineSet::all);

ExperimentResult run_htransform_checks(const ExperimentConfig& cfg);
ExperimentResult run_dual_kernel_checks(const ExperimentConfig& cfg);
ExperimentResult run_dual_check(const ExperimentConfig& cfg);
ExperimentResult run_feller_decay(const ExperimentConfig& cfg);

// Monte Carlo experiments; p-values are Bonferroni-corrected at family level 0.01
// within each experiment.
ExperimentResult run_truncation(const ExperimentConfig& cfg);
ExperimentResult run_invariance(const ExperimentConfig& cfg);
ExperimentResult run_sde_vs_exact(const ExperimentConfig& cfg);
ExperimentResult run_exact_samplers(const ExperimentConfig& cfg);
ExperimentResult run_sampler_crosscheck(const ExperimentConfig& cfg);
ExperimentResult run_calibration(const ExperimentConfig& cfg);

/// Writes cfg.n_samples draws of cfg.sampler to `<out_dir>/sample.csv`.
void run_sample(const ExperimentConfig& cfg);

}  // namespace lagint::experiments
