#include "lagint/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace lagint {

bool is_singular_power(double power) { return power < 0.0 || power != std::floor(power); }

namespace {

void append_gl(double lo, double hi, int panels, int order, std::vector<double>& nodes,
               std::vector<double>& weights) {
  const double width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * width;
    const double b = (p + 1 == panels) ? hi : a + width;
    const auto rule = gauss_legendre(order, a, b);
    nodes.insert(nodes.end(), rule.nodes.begin(), rule.nodes.end());
    weights.insert(weights.end(), rule.weights.begin(), rule.weights.end());
  }
}

}  // namespace

void append_segment_rule(const Segment& seg, const QuadratureOptions& opts,
                         std::vector<double>& nodes, std::vector<double>& weights) {
  if (!(seg.hi > seg.lo)) return;
  const int panels = std::max(1, opts.panels);
  const int order = std::max(2, opts.order);
  const double length = seg.hi - seg.lo;

  if ((!is_singular_power(seg.origin_power) && !seg.log_origin) || seg.lo < 0.0) {
    append_gl(seg.lo, seg.hi, panels, order, nodes, weights);
    return;
  }

  const double first_width = length / panels;
  if (seg.lo == 0.0) {
    if (seg.origin_power > -1.0) {
      const auto rule = gauss_jacobi_left(order, seg.origin_power, 0.0, first_width);
      nodes.insert(nodes.end(), rule.nodes.begin(), rule.nodes.end());
      weights.insert(weights.end(), rule.weights.begin(), rule.weights.end());
    } else {
      append_gl(0.0, first_width, 1, order, nodes, weights);
    }
    if (panels > 1) append_gl(first_width, seg.hi, panels - 1, order, nodes, weights);
    return;
  }

  // Singularity at 0 sits a distance lo below the segment start; grade the panels
  // geometrically (ratio 4 in distance from the origin) until they reach the
  // uniform panel width.
  double a = seg.lo;
  while (a < seg.hi && 3.0 * a < first_width) {
    const double b = std::min(4.0 * a, seg.hi);
    append_gl(a, b, 1, order, nodes, weights);
    a = b;
  }
  if (a < seg.hi) {
    const int rest = std::max(1, static_cast<int>(std::ceil((seg.hi - a) / first_width - 1e-9)));
    append_gl(a, seg.hi, rest, order, nodes, weights);
  }
}

std::vector<Segment> split_range(double lo, double hi, std::span<const double> breakpoints,
                                 double origin_power, bool log_origin) {
  std::vector<double> cuts;
  cuts.reserve(breakpoints.size() + 2);
  cuts.push_back(lo);
  for (double b : breakpoints)
    if (b > lo && b < hi) cuts.push_back(b);
  cuts.push_back(hi);
  std::sort(cuts.begin() + 1, cuts.end() - 1);
  std::vector<Segment> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) out.push_back({cuts[i], cuts[i + 1], origin_power, log_origin});
  }
  return out;
}

}  // namespace lagint
