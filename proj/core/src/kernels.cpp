#include "lagint/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lagint/rmt.hpp"
#include "lagint/scalar_diffusion.hpp"

namespace lagint {

std::string_view kernel_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::corner: return "corner";
    case KernelKind::alpha_square: return "alpha-square";
    case KernelKind::alpha_corner: return "alpha-corner";
    case KernelKind::hat_corner: return "hat-corner";
    case KernelKind::hat_square: return "hat-square";
  }
  return "unknown";
}

KernelKind parse_kernel_kind(std::string_view name) {
  for (auto k : {KernelKind::corner, KernelKind::alpha_square, KernelKind::alpha_corner,
                 KernelKind::hat_corner, KernelKind::hat_square})
    if (kernel_name(k) == name) return k;
  throw DomainError("unknown kernel '" + std::string(name) + "'");
}

namespace {

void require_strictly_increasing(const ChamberPoint& x, const char* what) {
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw DegenerateAnchorError(std::string(what) + ": anchor has tied coordinates");
}

void require_interior(const ChamberPoint& x, const char* what) {
  require_strictly_increasing(x, what);
  if (x.size() > 0 && !(x[0] > 0.0)) throw DegenerateAnchorError(std::string(what) + ": anchor touches the origin");
}

double factorial(std::size_t n) {
  double r = 1.0;
  for (std::size_t k = 2; k <= n; ++k) r *= static_cast<double>(k);
  return r;
}

double power_or_zero(double y, double alpha) {
  if (y == 0.0) return alpha == 0.0 ? 1.0 : (alpha > 0.0 ? 0.0 : HUGE_VAL);
  return std::pow(y, alpha);
}

}  // namespace

double inverse_power_integral(double alpha, double a, double b) {
  if (!(b > a)) return 0.0;
  const double log_ratio = std::log(b / a);
  if (alpha == 0.0) return log_ratio;
  if (std::abs(alpha) < 1e-8) {
    const double la = std::log(a);
    const double lb = std::log(b);
    return log_ratio * (1.0 - 0.5 * alpha * (la + lb));
  }
  // (a^{-alpha} - b^{-alpha}) / alpha = a^{-alpha} (1 - (a/b)^alpha) / alpha
  return std::pow(a, -alpha) * (-std::expm1(-alpha * log_ratio)) / alpha;
}

double density_corner(const ChamberPoint& x, std::span<const double> y) {
  if (x.size() != y.size() + 1) throw DomainError("density_corner: dimension mismatch");
  require_strictly_increasing(x, "density_corner");
  const std::size_t n = y.size();
  for (std::size_t k = 0; k < n; ++k)
    if (y[k] < x[k] || y[k] > x[k + 1]) return 0.0;
  return factorial(n) * vandermonde(y) / vandermonde(x);
}

double density_alpha_square(double alpha, const ChamberPoint& z, std::span<const double> y) {
  if (!(alpha > -1.0)) throw DomainError("density_alpha_square: alpha must exceed -1");
  if (z.size() != y.size()) throw DomainError("density_alpha_square: dimension mismatch");
  require_interior(z, "density_alpha_square");
  const std::size_t n = y.size();
  double prod = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lo = k == 0 ? 0.0 : z[k - 1];
    if (y[k] < lo || y[k] > z[k]) return 0.0;
    prod *= power_or_zero(y[k], alpha) / std::pow(z[k], alpha + 1.0);
  }
  return pochhammer(alpha + 1.0, static_cast<unsigned>(n)) * prod * vandermonde(y) / vandermonde(z);
}

double density_alpha_corner(double alpha, const ChamberPoint& x, std::span<const double> y) {
  if (!(alpha > -1.0)) throw DomainError("density_alpha_corner: alpha must exceed -1");
  if (x.size() != y.size() + 1) throw DomainError("density_alpha_corner: dimension mismatch");
  require_interior(x, "density_alpha_corner");
  const std::size_t n = y.size();
  double prod = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lo = k == 0 ? 0.0 : x[k - 1];
    if (y[k] < lo || y[k] > x[k + 1]) return 0.0;
    const double a = std::max(x[k], y[k]);
    const double b = (k + 1 < n) ? std::min(x[k + 1], y[k + 1]) : x[k + 1];
    if (a >= b) return 0.0;
    prod *= power_or_zero(y[k], alpha) * inverse_power_integral(alpha, a, b);
  }
  return factorial(n) * pochhammer(alpha + 1.0, static_cast<unsigned>(n)) * vandermonde(y) /
         vandermonde(x) * prod;
}

double density_hat_corner(double alpha, const ChamberPoint& x, std::span<const double> y) {
  if (x.size() != y.size() + 1) throw DomainError("density_hat_corner: dimension mismatch");
  double prod = 1.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (y[k] < x[k] || y[k] > x[k + 1]) return 0.0;
    prod *= speed_measure_dual(alpha, y[k]);
  }
  return prod;
}

double density_hat_square(double alpha, const ChamberPoint& z, std::span<const double> y) {
  if (z.size() != y.size()) throw DomainError("density_hat_square: dimension mismatch");
  double prod = 1.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double lo = k == 0 ? 0.0 : z[k - 1];
    if (y[k] < lo || y[k] > z[k]) return 0.0;
    prod *= speed_measure_dual(alpha, y[k]);
  }
  return prod;
}

double kernel_density(const KernelSpec& kernel, const ChamberPoint& anchor,
                      std::span<const double> y) {
  switch (kernel.kind) {
    case KernelKind::corner: return density_corner(anchor, y);
    case KernelKind::alpha_square: return density_alpha_square(kernel.alpha, anchor, y);
    case KernelKind::alpha_corner: return density_alpha_corner(kernel.alpha, anchor, y);
    case KernelKind::hat_corner: return density_hat_corner(kernel.alpha, anchor, y);
    case KernelKind::hat_square: return density_hat_square(kernel.alpha, anchor, y);
  }
  throw std::logic_error("kernel_density: unhandled kernel");
}

// ---------------------------------------------------------------------------
// Samplers

ChamberPoint sample_corner(const ChamberPoint& x, RngStream& rng) {
  const int n1 = static_cast<int>(x.size());
  if (n1 < 1) throw DomainError("sample_corner: empty anchor");
  if (n1 == 1) return ChamberPoint(std::vector<double>{}, x.nonneg());
  const ComplexMatrix u = sample_haar_unitary(n1, rng);
  ComplexMatrix h(n1, n1);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) {
      std::complex<double> s = 0.0;
      for (int k = 0; k < n1; ++k) s += std::conj(u(k, i)) * x[k] * u(k, j);
      h(i, j) = s;
    }
  std::vector<double> ev = hermitian_eigenvalues(ComplexMatrix(h.topLeftCorner(n1 - 1, n1 - 1)));
  const double tol = 1e-9 * std::max({1.0, std::abs(x[0]), std::abs(x[n1 - 1])});
  for (int k = 0; k + 1 < n1; ++k) {
    if (ev[k] < x[k] - tol || ev[k] > x[k + 1] + tol)
      throw std::logic_error("sample_corner: eigenvalue left the interlacing window");
    ev[k] = std::clamp(ev[k], x[k], x[k + 1]);
  }
  return ChamberPoint(std::move(ev), x.nonneg());
}

ChamberPoint sample_corner_rejection(const ChamberPoint& x, RngStream& rng) {
  const std::size_t n = x.size() - 1;
  if (x.size() < 1) throw DomainError("sample_corner_rejection: empty anchor");
  if (n > 4) throw UnsupportedError("sample_corner_rejection: N > 4 is not supported");
  require_strictly_increasing(x, "sample_corner_rejection");
  double bound = 1.0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) bound *= x[j + 1] - x[i];
  std::vector<double> y(n);
  for (;;) {
    for (std::size_t k = 0; k < n; ++k) y[k] = x[k] + (x[k + 1] - x[k]) * rng.uniform();
    if (rng.uniform() * bound <= vandermonde(y)) return ChamberPoint(y, x.nonneg());
  }
}

ChamberPoint sample_alpha_square(double alpha, const ChamberPoint& z, RngStream& rng) {
  if (!(alpha > -1.0)) throw DomainError("sample_alpha_square: alpha must exceed -1");
  if (!z.nonneg()) throw DomainError("sample_alpha_square: anchor must be non-negative");
  const std::size_t n = z.size();
  const double a1 = alpha + 1.0;
  std::vector<double> lo_pow(n), hi_pow(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lo = k == 0 ? 0.0 : z[k - 1];
    lo_pow[k] = std::pow(lo, a1);
    hi_pow[k] = std::pow(z[k], a1);
  }
  std::vector<double> y(n);
  for (long iter = 0; iter < 100'000'000L; ++iter) {
    for (std::size_t k = 0; k < n; ++k) {
      const double lo = k == 0 ? 0.0 : z[k - 1];
      if (lo == z[k]) {
        y[k] = lo;
        continue;
      }
      const double u = rng.uniform();
      y[k] = std::clamp(std::pow(lo_pow[k] + u * (hi_pow[k] - lo_pow[k]), 1.0 / a1), lo, z[k]);
    }
    double ratio = 1.0;
    for (std::size_t j = 1; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        const double bound = z[j] - (i == 0 ? 0.0 : z[i - 1]);
        if (bound > 0.0) ratio *= (y[j] - y[i]) / bound;
      }
    if (rng.uniform() <= ratio) return ChamberPoint(y, true);
  }
  throw std::runtime_error("sample_alpha_square: rejection sampler did not accept");
}

ChamberPoint sample_alpha_corner(double alpha, const ChamberPoint& x, RngStream& rng) {
  if (!(alpha > -1.0)) throw DomainError("sample_alpha_corner: alpha must exceed -1");
  if (!x.nonneg() || x.size() < 1) throw DomainError("sample_alpha_corner: need a non-negative anchor");
  const bool interior = x.is_strict_interior();
  for (;;) {
    ChamberPoint z = sample_corner(x, rng);
    if (interior && !z.is_strict_interior()) continue;
    return sample_alpha_square(alpha, z, rng);
  }
}

// ---------------------------------------------------------------------------
// Quadrature

void kernel_ranges(const KernelSpec& kernel, const ChamberPoint& anchor, std::size_t k,
                   std::span<const double> prefix, std::vector<Segment>& out) {
  const double alpha = kernel.alpha;
  switch (kernel.kind) {
    case KernelKind::corner:
      out.push_back({anchor[k], anchor[k + 1], 0.0});
      return;
    case KernelKind::hat_corner:
      out.push_back({anchor[k], anchor[k + 1], -alpha - 1.0});
      return;
    case KernelKind::alpha_square:
      out.push_back({k == 0 ? 0.0 : anchor[k - 1], anchor[k], alpha});
      return;
    case KernelKind::hat_square:
      out.push_back({k == 0 ? 0.0 : anchor[k - 1], anchor[k], -alpha - 1.0});
      return;
    case KernelKind::alpha_corner: {
      const double lo = k == 0 ? 0.0 : std::max(anchor[k - 1], prefix[k - 1]);
      const double bp[] = {anchor[k]};
      for (const auto& s : split_range(lo, anchor[k + 1], bp, alpha, true)) out.push_back(s);
      return;
    }
  }
}

std::vector<double> apply_kernel_quadrature(const KernelSpec& kernel, const ChamberPoint& anchor,
                                            std::size_t outputs, const MultiFunction& f,
                                            const QuadratureOptions& opts) {
  if (anchor.size() < 1) throw DomainError("apply_kernel_quadrature: empty anchor");
  const std::size_t n = kernel.output_dim(anchor.size());
  if (n > 3) throw UnsupportedError("apply_kernel_quadrature: output dimension > 3 is not supported");
  if (kernel.kind == KernelKind::hat_square && !(kernel.alpha < 0.0))
    throw DomainError("apply_kernel_quadrature: hat-square mass diverges at the origin for alpha >= 0");
  std::vector<double> values(outputs, 0.0);
  if (n == 0) {
    f(std::span<const double>(), values);
    return values;
  }
  // Validates the anchor (degenerate anchors throw for the probability kernels).
  {
    const bool outer = kernel.kind == KernelKind::corner || kernel.kind == KernelKind::hat_corner ||
                       kernel.kind == KernelKind::alpha_corner;
    InterlacingWindow w(outer ? WindowKind::outer : WindowKind::inner, anchor);
    std::vector<double> probe(n);
    for (std::size_t k = 0; k < n; ++k) probe[k] = w.lower(k);
    (void)kernel_density(kernel, anchor, probe);
  }
  return integrate_nested_multi(
      n, outputs,
      [&](std::size_t k, std::span<const double> prefix, std::vector<Segment>& out) {
        kernel_ranges(kernel, anchor, k, prefix, out);
      },
      [&](std::span<const double> y, std::span<double> out) {
        const double d = kernel_density(kernel, anchor, y);
        if (d == 0.0) {
          std::fill(out.begin(), out.end(), 0.0);
          return;
        }
        f(y, out);
        for (double& v : out) v *= d;
      },
      opts);
}

double apply_kernel_quadrature(const KernelSpec& kernel, const ChamberPoint& anchor,
                               const TestFunction& f, const QuadratureOptions& opts) {
  return apply_kernel_quadrature(
      kernel, anchor, 1, [&](std::span<const double> y, std::span<double> out) { out[0] = f(y); },
      opts)[0];
}

}  // namespace lagint
