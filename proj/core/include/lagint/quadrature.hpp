#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "lagint/numerics.hpp"

namespace lagint {

struct QuadratureOptions {
  int panels = 2;  ///< Gauss panels per segment.
  int order = 20;  ///< Nodes per panel.
};

/// One smooth piece of an integration range. `origin_power` records that the
/// integrand behaves like y^origin_power (times a smooth factor) near y = 0:
/// a segment starting at 0 then gets a Gauss-Jacobi first panel, and a segment
/// starting close to 0 is graded geometrically away from the singularity.
struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  double origin_power = 0.0;
  /// Also grade when the power is a non-negative integer (log y terms).
  bool log_origin = false;
};

/// Whether y^power needs special treatment at the origin (negative or non-integer).
bool is_singular_power(double power);

/// Expands segments into concrete nodes and weights.
void append_segment_rule(const Segment& seg, const QuadratureOptions& opts,
                         std::vector<double>& nodes, std::vector<double>& weights);

/// Splits [lo, hi] at every breakpoint strictly inside it.
std::vector<Segment> split_range(double lo, double hi, std::span<const double> breakpoints,
                                 double origin_power, bool log_origin = false);

/// Iterated integral of an m-vector valued integrand over a region described one
/// coordinate at a time. `ranges(k, prefix, out)` fills `out` with the segments
/// of coordinate k given the first k coordinates; `f(point, values)` writes the
/// m integrand values at a full point.
template <class Ranges, class Integrand>
std::vector<double> integrate_nested_multi(std::size_t dims, std::size_t m, Ranges&& ranges,
                                           Integrand&& f, const QuadratureOptions& opts) {
  std::vector<double> point(dims, 0.0);
  std::vector<std::vector<Segment>> segs(dims);
  std::vector<std::vector<double>> nodes(dims), weights(dims);
  // acc[k] holds the partial sums of level k; acc[dims] the integrand values.
  std::vector<std::vector<double>> acc(dims + 1, std::vector<double>(m, 0.0));

  auto recurse = [&](auto&& self, std::size_t k) -> void {
    std::fill(acc[k].begin(), acc[k].end(), 0.0);
    segs[k].clear();
    ranges(k, std::span<const double>(point.data(), k), segs[k]);
    nodes[k].clear();
    weights[k].clear();
    for (const auto& s : segs[k]) append_segment_rule(s, opts, nodes[k], weights[k]);
    for (std::size_t i = 0; i < nodes[k].size(); ++i) {
      point[k] = nodes[k][i];
      if (k + 1 == dims)
        f(std::span<const double>(point), std::span<double>(acc[dims]));
      else
        self(self, k + 1);
      const double w = weights[k][i];
      for (std::size_t j = 0; j < m; ++j) acc[k][j] += w * acc[k + 1][j];
    }
  };
  if (dims == 0) {
    f(std::span<const double>(point), std::span<double>(acc[0]));
    return acc[0];
  }
  recurse(recurse, 0);
  return acc[0];
}

template <class Ranges, class Integrand>
double integrate_nested(std::size_t dims, Ranges&& ranges, Integrand&& f,
                        const QuadratureOptions& opts) {
  return integrate_nested_multi(
      dims, 1, std::forward<Ranges>(ranges),
      [&](std::span<const double> y, std::span<double> out) { out[0] = f(y); }, opts)[0];
}

}  // namespace lagint
