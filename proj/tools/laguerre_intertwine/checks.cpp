#include "checks.hpp"

#include <algorithm>
#include <cmath>

#include "lagint/laguerre_process.hpp"
#include "lagint/scalar_diffusion.hpp"

namespace lagint::experiments {

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::main: return "main";
    case Relation::shifted_corner: return "shifted-corner";
    case Relation::shifted_square: return "shifted-square";
  }
  return "unknown";
}

IntertwineQuadrature default_intertwine_quadrature(std::size_t n) {
  if (n <= 1) return {{1, 20}, {1, 20}};
  return {{1, 10}, {1, 6}};
}

void standard_test_functions(std::span<const double> y, std::span<double> out) {
  double s = 0.0;
  double p = 1.0;
  for (double v : y) {
    s += v;
    p /= 1.0 + v;
  }
  out[0] = std::exp(-s);
  out[1] = p;
  out[2] = s * out[0];
}

std::vector<std::string> standard_test_function_names() {
  return {"exp(-sum y)", "prod 1/(1+y)", "sum y exp(-sum y)"};
}

double IntertwineSides::max_relative_discrepancy() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const double scale = std::max(std::abs(lhs[i]), std::abs(rhs[i]));
    if (scale > 0.0) worst = std::max(worst, std::abs(lhs[i] - rhs[i]) / scale);
  }
  return worst;
}

namespace {

ChamberPoint as_point(std::span<const double> y) {
  return ChamberPoint(std::vector<double>(y.begin(), y.end()), true);
}

}  // namespace

IntertwineSides intertwining_sides(Relation relation, double alpha, double t,
                                   const ChamberPoint& x, std::size_t outputs,
                                   const MultiFunction& f, const IntertwineQuadrature& q) {
  KernelSpec kernel;
  double alpha_left = alpha;
  double alpha_right = alpha;
  switch (relation) {
    case Relation::main:
      kernel = {KernelKind::alpha_corner, alpha};
      break;
    case Relation::shifted_corner:
      kernel = {KernelKind::corner, alpha};
      alpha_right = alpha + 1.0;
      break;
    case Relation::shifted_square:
      kernel = {KernelKind::alpha_square, alpha};
      alpha_left = alpha + 1.0;
      break;
  }
  const std::size_t n_left = x.size();
  const std::size_t n_right = kernel.output_dim(x.size());
  if (n_right < 1) throw DomainError("intertwining_sides: anchor too small");

  IntertwineSides sides;
  if (t == 0.0) {
    sides.lhs = apply_kernel_quadrature(kernel, x, outputs, f, q.kernel);
    sides.rhs = sides.lhs;
    return sides;
  }
  const SemigroupRule left_rule({alpha_left, t, n_left}, x, q.semigroup);
  sides.lhs = left_rule.apply(outputs, [&](std::span<const double> y, std::span<double> out) {
    const auto v = apply_kernel_quadrature(kernel, as_point(y), outputs, f, q.kernel);
    std::copy(v.begin(), v.end(), out.begin());
  });
  sides.rhs = apply_kernel_quadrature(
      kernel, x, outputs,
      [&](std::span<const double> y, std::span<double> out) {
        const auto v = SemigroupRule({alpha_right, t, n_right}, as_point(y), q.semigroup).apply(outputs, f);
        std::copy(v.begin(), v.end(), out.begin());
      },
      q.kernel);
  return sides;
}

double composed_density(double alpha, const ChamberPoint& x, std::span<const double> y,
                        const QuadratureOptions& opts) {
  const std::size_t n = y.size();
  if (x.size() != n + 1) throw DomainError("composed_density: dimension mismatch");
  return integrate_nested(
      n,
      [&](std::size_t k, std::span<const double>, std::vector<Segment>& out) {
        const double lo = std::max(x[k], y[k]);
        const double hi = k + 1 < n ? std::min(x[k + 1], y[k + 1]) : x[k + 1];
        if (hi > lo) out.push_back({lo, hi, 0.0});
      },
      [&](std::span<const double> z) {
        const ChamberPoint zp(std::vector<double>(z.begin(), z.end()), true);
        return density_corner(x, z) * density_alpha_square(alpha, zp, y);
      },
      opts);
}

double TwoSides::relative() const {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
}

namespace {

double integrate_segments(const std::vector<Segment>& segs, const QuadratureOptions& opts,
                          const std::function<double(double)>& f) {
  std::vector<double> nodes, weights;
  for (const auto& s : segs) append_segment_rule(s, opts, nodes, weights);
  double total = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) total += weights[i] * f(nodes[i]);
  return total;
}

/// Segments covering [lo, hi] split around the bulk of the one-particle law from x.
std::vector<Segment> bulk_segments(double alpha, double t, double x, double lo, double hi,
                                   double origin_power) {
  const auto mom = transition_moments(std::abs(alpha), t, x);
  const double s = std::sqrt(mom.variance);
  std::vector<double> bps;
  for (double k : {-4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) bps.push_back(mom.mean + k * s);
  return split_range(lo, hi, bps, origin_power);
}

double tail_limit(double alpha, double t, double x) {
  const double a = std::abs(alpha) + 2.0;
  const double e = std::exp(-t);
  const double c = -std::expm1(-t);
  return x * e + a * c + 14.0 * std::sqrt(2.0 * x * e * c + a * c * c);
}

const QuadratureOptions kIdentityQuadrature{4, 20};

}  // namespace

TwoSides dual_square_identity(double alpha, double t, double x, double y) {
  if (!(alpha < 0.0))
    throw DomainError("dual_square_identity: the killed-branch integral diverges for alpha >= 0");
  const double upper = std::max(tail_limit(alpha, t, x), 2.0 * y);
  const auto killed = BesselBranch::killed;
  const double tail = integrate_segments(
      bulk_segments(alpha, t, x, y, upper, -alpha), kIdentityQuadrature,
      [&](double z) { return transition_density(alpha, t, x, z, killed); });
  const double lhs = speed_measure_dual(alpha, y) * tail;
  const double rhs = integrate_segments(
      split_range(0.0, x, std::vector<double>{0.25 * x, 0.5 * x}, -(alpha + 1.0)),
      kIdentityQuadrature, [&](double z) {
        return speed_measure_dual(alpha, z) * dual_transition_density(alpha, t, z, y, killed);
      });
  return {lhs, rhs};
}

TwoSides dual_corner_identity(double alpha, double t, double x1, double x2, double y) {
  auto below = [&](double x) {
    return integrate_segments(bulk_segments(alpha, t, x, 0.0, y, alpha), kIdentityQuadrature,
                              [&](double z) { return transition_density(alpha, t, x, z); });
  };
  auto above = [&](double x) {
    const double upper = std::max(tail_limit(alpha, t, x), 2.0 * y);
    return integrate_segments(bulk_segments(alpha, t, x, y, upper, alpha), kIdentityQuadrature,
                              [&](double z) { return transition_density(alpha, t, x, z); });
  };
  const double f1 = below(x1), g1 = above(x1), f2 = below(x2), g2 = above(x2);
  const double lhs = speed_measure_dual(alpha, y) * (f1 * g2 - g1 * f2);
  const double rhs = integrate_segments(
      split_range(x1, x2, std::vector<double>{0.5 * (x1 + x2)}, 0.0), kIdentityQuadrature,
      [&](double z) {
        return speed_measure_dual(alpha, z) * dual_transition_density(alpha, t, z, y);
      });
  return {lhs, rhs};
}

TwoSides chapman_kolmogorov(double alpha, double s, double t, double x, double y) {
  const SemigroupRule rule({alpha, s, 1}, ChamberPoint{x}, {2, 20});
  const double lhs = rule.apply([&](std::span<const double> z) {
    return transition_density(alpha, t, z[0], y);
  });
  return {lhs, transition_density(alpha, s + t, x, y)};
}

double dual_generator_relative_residual(double alpha, double t, double x, double y) {
  const double h = 1e-3 * std::max(1.0, x);
  auto u = [&](double s, double w) { return dual_transition_density(alpha, s, w, y); };
  const double res = backward_generator_residual(BoundaryKind::dual, alpha, t, x, y, h);
  const double u0 = u(t, x);
  const double ut = (u(t + h, x) - u(t - h, x)) / (2.0 * h);
  const double ux = (u(t, x + h) - u(t, x - h)) / (2.0 * h);
  const double uxx = (u(t, x + h) - 2.0 * u0 + u(t, x - h)) / (h * h);
  const double scale = std::abs(ut) + std::abs(x * uxx) + std::abs((x - alpha) * ux);
  return scale > 0.0 ? std::abs(res) / scale : std::abs(res);
}

double htransform_relative_residual(double alpha, double t, double x, double y) {
  return std::abs(htransform_residual_32a(alpha, t, x, y)) / transition_density(alpha, t, x, y);
}

double dual_definition_relative_residual(double alpha, double t, double x, double y) {
  const double lhs = std::exp(t) * dual_transition_density(alpha, t, x, y) *
                     speed_measure_dual(alpha, x) / speed_measure_dual(alpha, y);
  const double rhs = transition_density(alpha + 1.0, t, x, y, default_branch(alpha + 1.0));
  return std::abs(lhs - rhs) / std::abs(rhs);
}

std::vector<ChamberPoint> draw_many(std::size_t n, std::uint64_t seed, std::uint64_t first_stream,
                                    const ChamberSampler& sampler) {
  std::vector<ChamberPoint> out(n);
  parallel_batches(n, 1000, seed, first_stream, [&](RngStream& rng, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = sampler(rng);
  });
  return out;
}

EmpiricalSample marginal(const std::vector<ChamberPoint>& draws, std::size_t k,
                         const std::string& label) {
  std::vector<double> v;
  v.reserve(draws.size());
  for (const auto& d : draws) v.push_back(d[k]);
  return {std::move(v), label};
}

EmpiricalSample linear_sum(const std::vector<ChamberPoint>& draws, const std::string& label) {
  std::vector<double> v;
  v.reserve(draws.size());
  for (const auto& d : draws) {
    double s = 0.0;
    for (double c : d.coords()) s += c;
    v.push_back(s);
  }
  return {std::move(v), label};
}

EmpiricalSample linear_log_sum(const std::vector<ChamberPoint>& draws, const std::string& label) {
  std::vector<double> v;
  v.reserve(draws.size());
  for (const auto& d : draws) {
    double s = 0.0;
    for (double c : d.coords()) s += std::log(std::max(c, 1e-300));
    v.push_back(s);
  }
  return {std::move(v), label};
}

std::vector<ComparisonReport> compare_draws(const std::vector<ChamberPoint>& a,
                                            const std::vector<ChamberPoint>& b,
                                            const std::string& label) {
  if (a.empty() || b.empty() || a.front().size() != b.front().size())
    throw DomainError("compare_draws: incompatible samples");
  std::vector<ComparisonReport> out;
  const std::size_t n = a.front().size();
  for (std::size_t k = 0; k < n; ++k) {
    auto r = ks_two_sample(marginal(a, k, "a"), marginal(b, k, "b"));
    r.test = label + ":y" + std::to_string(k + 1);
    out.push_back(r);
  }
  if (n == 1) return out;
  auto rs = ks_two_sample(linear_sum(a, "a"), linear_sum(b, "b"));
  rs.test = label + ":sum";
  out.push_back(rs);
  auto rl = ks_two_sample(linear_log_sum(a, "a"), linear_log_sum(b, "b"));
  rl.test = label + ":sumlog";
  out.push_back(rl);
  return out;
}

std::vector<double> transition_cdf_at_sorted(double alpha, double t, double x,
                                             const std::vector<double>& ys) {
  std::vector<double> cdf(ys.size());
  double acc = 0.0;
  double prev = 0.0;
  const QuadratureOptions first{2, 20};
  const QuadratureOptions step{1, 8};
  std::vector<double> nodes, weights;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (ys[i] > prev) {
      nodes.clear();
      weights.clear();
      append_segment_rule({prev, ys[i], alpha}, i == 0 ? first : step, nodes, weights);
      for (std::size_t j = 0; j < nodes.size(); ++j)
        acc += weights[j] * transition_density(alpha, t, x, nodes[j]);
      prev = ys[i];
    }
    cdf[i] = std::min(acc, 1.0);
  }
  return cdf;
}

ComparisonReport ks_against_transition(const EmpiricalSample& sample, double alpha, double t,
                                       double x) {
  const auto sorted = sample.sorted();
  const auto cdf = transition_cdf_at_sorted(alpha, t, x, sorted);
  auto r = ks_one_sample(sample, [&](double v) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    return cdf[static_cast<std::size_t>(it - sorted.begin())];
  });
  return r;
}

}  // namespace lagint::experiments
