#include "lagint/laguerre_process.hpp"

#include <algorithm>
#include <cmath>

#include "lagint/rmt.hpp"
#include "lagint/scalar_diffusion.hpp"

namespace lagint {

double lambda_eigen(std::size_t n) {
  if (n < 1) throw DomainError("lambda_eigen: N must be positive");
  const double d = static_cast<double>(n);
  return -d * (d - 1.0) / 2.0;
}

double determinant(std::vector<double>& a, std::size_t n) {
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (a[piv * n + c] == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      det = -det;
    }
    const double d = a[c * n + c];
    det *= d;
    for (std::size_t r = c + 1; r < n; ++r) {
      const double m = a[r * n + c] / d;
      if (m == 0.0) continue;
      for (std::size_t k = c + 1; k < n; ++k) a[r * n + k] -= m * a[c * n + k];
    }
  }
  return det;
}

namespace {

void require_anchor(const ChamberPoint& x, std::span<const double> y, const char* what) {
  if (x.size() == 0 || x.size() != y.size())
    throw DomainError(std::string(what) + ": dimension mismatch");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw DegenerateAnchorError(std::string(what) + ": tied starting point");
  if (!(x[0] >= 0.0)) throw DomainError(std::string(what) + ": starting point must be non-negative");
  for (double v : y)
    if (!(v > 0.0)) throw DomainError(std::string(what) + ": target coordinates must be positive");
}

/// log(det) with sign, from a matrix of log-entries rescaled row by row.
double scaled_determinant(std::vector<double>& logs, std::size_t n, double& log_scale) {
  log_scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double m = -HUGE_VAL;
    for (std::size_t j = 0; j < n; ++j) m = std::max(m, logs[i * n + j]);
    if (!std::isfinite(m)) return 0.0;
    for (std::size_t j = 0; j < n; ++j) logs[i * n + j] = std::exp(logs[i * n + j] - m);
    log_scale += m;
  }
  return determinant(logs, n);
}

}  // namespace

double km_density(double alpha, double t, const ChamberPoint& x, std::span<const double> y) {
  require_anchor(x, y, "km_density");
  if (!(alpha > -1.0)) throw DomainError("km_density: alpha must exceed -1");
  const std::size_t n = x.size();
  std::vector<double> logs(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) logs[i * n + j] = log_transition_density(alpha, t, x[i], y[j]);
  double log_scale = 0.0;
  const double det = scaled_determinant(logs, n, log_scale);
  if (det == 0.0) return 0.0;
  const double dy = vandermonde(y);
  const double dx = vandermonde(x);
  return std::exp(log_scale - lambda_eigen(n) * t) * det * dy / dx;
}

double subkm_density(double alpha, double t, const ChamberPoint& x, std::span<const double> y) {
  require_anchor(x, y, "subkm_density");
  const std::size_t n = x.size();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = transition_density(alpha, t, x[i], y[j]);
  return determinant(a, n);
}

double subkm_dual_density(double alpha, double t, const ChamberPoint& x,
                          std::span<const double> y) {
  require_anchor(x, y, "subkm_dual_density");
  if (!(x[0] > 0.0)) throw DomainError("subkm_dual_density: starting point must be positive");
  const std::size_t n = x.size();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = dual_transition_density(alpha, t, x[i], y[j]);
  return determinant(a, n);
}

double semigroup_upper_limit(const SemigroupParams& params, const ChamberPoint& x) {
  const double e = std::exp(-params.t);
  const double c = -std::expm1(-params.t);
  const double xm = x.size() ? x[x.size() - 1] : 0.0;
  const double shape = params.alpha + 1.0 + 2.0 * static_cast<double>(params.n);
  const double mean = xm * e + shape * c;
  const double var = 2.0 * xm * e * c + shape * c * c;
  return mean + 12.0 * std::sqrt(var);
}

SemigroupRule::SemigroupRule(const SemigroupParams& params, const ChamberPoint& x,
                             const QuadratureOptions& opts)
    : params_(params), x_(x) {
  const std::size_t n = x.size();
  if (params.n != n) throw DomainError("SemigroupRule: N does not match the starting point");
  if (n < 1) throw DomainError("SemigroupRule: empty starting point");
  if (n > 3) throw UnsupportedError("SemigroupRule: N > 3 is not supported");
  if (!(params.alpha > -1.0)) throw DomainError("SemigroupRule: alpha must exceed -1");
  if (!(params.t > 0.0)) throw DomainError("SemigroupRule: t must be positive");
  if (!x.nonneg() || !(x[0] >= 0.0)) throw DomainError("SemigroupRule: starting point must be non-negative");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x[i] > x[i - 1])) throw DegenerateAnchorError("SemigroupRule: tied starting point");

  const double y_max = semigroup_upper_limit(params, x);
  std::vector<double> bps;
  double sigma_min = HUGE_VAL;
  for (std::size_t i = 0; i < n; ++i) {
    const auto mom = transition_moments(params.alpha, params.t, x[i]);
    const double s = std::sqrt(mom.variance);
    sigma_min = std::min(sigma_min, s);
    for (double k : {-4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0}) bps.push_back(mom.mean + k * s);
  }
  std::sort(bps.begin(), bps.end());
  std::vector<double> merged;
  for (double b : bps)
    if (b > 0.0 && b < y_max && (merged.empty() || b - merged.back() > 0.25 * sigma_min))
      merged.push_back(b);
  for (const auto& seg : split_range(0.0, y_max, merged, params.alpha))
    append_segment_rule(seg, opts, nodes_, weights_);

  columns_.resize(n * nodes_.size());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t j = 0; j < nodes_.size(); ++j)
      columns_[a * nodes_.size() + j] = transition_density(params.alpha, params.t, x[a], nodes_[j]);
  prefactor_ = std::exp(-lambda_eigen(n) * params.t) / vandermonde(x);
}

double SemigroupRule::apply(const TestFunction& f) const {
  return apply(1, [&](std::span<const double> y, std::span<double> out) { out[0] = f(y); })[0];
}

std::vector<double> SemigroupRule::apply(std::size_t outputs, const MultiFunction& f) const {
  const std::size_t n = x_.size();
  const std::size_t m = nodes_.size();
  const double* p0 = columns_.data();
  const double* p1 = n > 1 ? p0 + m : nullptr;
  const double* p2 = n > 2 ? p0 + 2 * m : nullptr;
  // Tuple weights w * Delta * det sum to 1 / prefactor.
  const double negligible = 1e-14 / prefactor_;
  std::vector<double> total(outputs, 0.0), value(outputs);
  double y[3];
  auto add = [&](double weight, std::size_t dim) {
    if (std::abs(weight) <= negligible) return;
    f(std::span<const double>(y, dim), value);
    for (std::size_t o = 0; o < outputs; ++o) total[o] += weight * value[o];
  };
  if (n == 1) {
    for (std::size_t i = 0; i < m; ++i) {
      y[0] = nodes_[i];
      add(weights_[i] * p0[i], 1);
    }
  } else if (n == 2) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        y[0] = nodes_[i];
        y[1] = nodes_[j];
        const double det = p0[i] * p1[j] - p0[j] * p1[i];
        add(weights_[i] * weights_[j] * (y[1] - y[0]) * det, 2);
      }
  } else {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        const double m01 = p0[i] * p1[j] - p0[j] * p1[i];
        const double m02 = p0[i] * p2[j] - p0[j] * p2[i];
        const double m12 = p1[i] * p2[j] - p1[j] * p2[i];
        const double wij = weights_[i] * weights_[j] * (nodes_[j] - nodes_[i]);
        for (std::size_t k = j + 1; k < m; ++k) {
          y[0] = nodes_[i];
          y[1] = nodes_[j];
          y[2] = nodes_[k];
          // Expansion along the third column.
          const double det = p0[k] * m12 - p1[k] * m02 + p2[k] * m01;
          add(wij * weights_[k] * (y[2] - y[0]) * (y[2] - y[1]) * det, 3);
        }
      }
  }
  for (double& v : total) v *= prefactor_;
  return total;
}

double semigroup_apply(const SemigroupParams& params, const ChamberPoint& x,
                       const TestFunction& f, const QuadratureOptions& opts) {
  if (params.t == 0.0) {
    if (params.n != x.size()) throw DomainError("semigroup_apply: N does not match the starting point");
    if (params.n > 3) throw UnsupportedError("semigroup_apply: N > 3 is not supported");
    return f(x.coords());
  }
  return SemigroupRule(params, x, opts).apply(f);
}

ChamberPoint simulate_sde(double alpha, const ChamberPoint& x0, double t_end,
                          const SdeConfig& cfg, RngStream& rng) {
  if (!(alpha > -1.0)) throw DomainError("simulate_sde: alpha must exceed -1");
  if (!(cfg.dt > 0.0) || !(cfg.floor_eps >= 0.0)) throw DomainError("simulate_sde: bad config");
  if (!(t_end >= 0.0)) throw DomainError("simulate_sde: t_end must be non-negative");
  std::vector<double> x = x0.vector();
  const std::size_t n = x.size();
  const auto steps = static_cast<long>(std::ceil(t_end / cfg.dt - 1e-9));
  if (steps <= 0) return x0;
  const double h = t_end / static_cast<double>(steps);
  const double sh = std::sqrt(h);
  std::vector<double> next(n);
  for (long s = 0; s < steps; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      double drift = alpha + 1.0 - x[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        // The repulsion uses a gap no smaller than the one-step diffusive scale,
        // so a single step cannot fling a particle far past its neighbour.
        const double floor = std::max(cfg.floor_eps, std::sqrt(h * std::max(x[i], x[j])));
        double gap = x[i] - x[j];
        if (std::abs(gap) < floor) gap = (i > j ? 1.0 : -1.0) * floor;
        drift += 2.0 * x[i] / gap;
      }
      const double diff = std::sqrt(2.0 * std::max(x[i], cfg.floor_eps));
      next[i] = x[i] + drift * h + diff * sh * rng.normal();
    }
    for (auto& v : next)
      if (v < 0.0) v = cfg.floor_eps;
    std::sort(next.begin(), next.end());
    x.swap(next);
  }
  return ChamberPoint(std::move(x), true);
}

ChamberPoint simulate_matrix_ou(int alpha, const ChamberPoint& x0, double t, RngStream& rng) {
  if (alpha < 0) throw UnsupportedError("simulate_matrix_ou: alpha must be a non-negative integer");
  if (!(t >= 0.0)) throw DomainError("simulate_matrix_ou: t must be non-negative");
  const int n = static_cast<int>(x0.size());
  if (n < 1) throw DomainError("simulate_matrix_ou: empty starting point");
  ComplexMatrix m = ComplexMatrix::Zero(n + alpha, n);
  const double decay = std::exp(-0.5 * t);
  for (int k = 0; k < n; ++k) m(k, k) = decay * std::sqrt(x0[k]);
  // Ginibre components have variance 1/2, so sqrt(1 - e^{-t}) gives (1 - e^{-t})/2.
  m += std::sqrt(-std::expm1(-t)) * sample_ginibre(n + alpha, n, rng);
  return radial_part(m);
}

}  // namespace lagint
