#include "lagint/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lagint/error.hpp"

namespace lagint {

std::vector<double> EmpiricalSample::sorted() const {
  std::vector<double> v = values;
  std::sort(v.begin(), v.end());
  return v;
}

double EmpiricalSample::mean() const {
  if (values.empty()) throw DomainError("EmpiricalSample::mean: empty sample");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double EmpiricalSample::variance() const {
  if (values.size() < 2) throw DomainError("EmpiricalSample::variance: need two values");
  const double m = mean();
  double s = 0.0;
  for (double v : values) s += (v - m) * (v - m);
  return s / static_cast<double>(values.size() - 1);
}

void ComparisonReport::set_threshold(double level) {
  threshold = level;
  pass = p_value > threshold;
}

double kolmogorov_tail(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-17) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

void require_finite(const EmpiricalSample& a, const char* what) {
  for (double v : a.values)
    if (!std::isfinite(v)) throw DomainError(std::string(what) + ": non-finite value");
}

double ks_p_value(double d, double ne) {
  const double s = std::sqrt(ne);
  return kolmogorov_tail((s + 0.12 + 0.11 / s) * d);
}

}  // namespace

ComparisonReport ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b, double level) {
  if (a.size() < 25 || b.size() < 25) throw DomainError("ks_two_sample: need at least 25 values per sample");
  require_finite(a, "ks_two_sample");
  require_finite(b, "ks_two_sample");
  const auto x = a.sorted();
  const auto y = b.sorted();
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  ComparisonReport r;
  r.test = "ks2(" + a.label + "," + b.label + ")";
  r.statistic = d;
  r.p_value = ks_p_value(d, na * nb / (na + nb));
  r.n_a = x.size();
  r.n_b = y.size();
  r.set_threshold(level);
  return r;
}

ComparisonReport ks_one_sample(const EmpiricalSample& a, const std::function<double(double)>& cdf,
                               double level) {
  if (a.size() < 25) throw DomainError("ks_one_sample: need at least 25 values");
  require_finite(a, "ks_one_sample");
  const auto x = a.sorted();
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  ComparisonReport r;
  r.test = "ks1(" + a.label + ")";
  r.statistic = d;
  r.p_value = ks_p_value(d, n);
  r.n_a = x.size();
  r.set_threshold(level);
  return r;
}

ComparisonReport moment_compare(const EmpiricalSample& a, double target_mean, double target_var) {
  if (a.size() < 100) throw DomainError("moment_compare: need at least 100 values");
  if (!(target_var > 0.0)) throw DomainError("moment_compare: target variance must be positive");
  require_finite(a, "moment_compare");
  const double se = std::sqrt(target_var / static_cast<double>(a.size()));
  const double z = (a.mean() - target_mean) / se;
  ComparisonReport r;
  r.test = "mean(" + a.label + ")";
  r.kind = ReportKind::z_score;
  r.statistic = z;
  r.p_value = std::erfc(std::abs(z) / std::sqrt(2.0));
  r.threshold = 4.0;
  r.pass = std::abs(z) <= 4.0;
  r.n_a = a.size();
  return r;
}

bool bonferroni(std::vector<ComparisonReport>& reports, double family_level) {
  std::size_t m = 0;
  for (const auto& r : reports)
    if (r.kind == ReportKind::p_value) ++m;
  bool all = true;
  for (auto& r : reports) {
    if (r.kind == ReportKind::p_value) r.set_threshold(family_level / static_cast<double>(std::max<std::size_t>(m, 1)));
    all = all && r.pass;
  }
  return all;
}

}  // namespace lagint
