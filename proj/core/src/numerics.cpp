#include "lagint/numerics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>
#include <utility>

namespace lagint {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream_id) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(stream_id),
                       static_cast<std::uint32_t>(stream_id >> 32), 0x9e3779b9u};
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  auto seq = make_seed_seq(seed, stream_id);
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

double RngStream::uniform() {
  // 53 random bits, shifted by half an ulp so that neither 0 nor 1 is produced.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() { return normal_(engine_); }

double pochhammer(double x, unsigned n) {
  double r = 1.0;
  for (unsigned k = 0; k < n; ++k) r *= x + k;
  return r;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  return std::lgamma(x);
}

// ---------------------------------------------------------------------------
// Modified Bessel function of the first kind, scaled by e^{-z}.

namespace {

double bessel_hankel_scaled(double nu, double z) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * z);
    const double mag = std::abs(term);
    if (mag > prev) break;  // asymptotic series started to diverge
    sum += term;
    if (mag < 1e-17 * std::abs(sum)) break;
    prev = mag;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

double bessel_series_scaled(double nu, double z) {
  // First term (z/2)^nu / Gamma(nu + 1), tracked in log form with a sign.
  const double gnu = nu + 1.0;
  double log_first = nu * std::log(0.5 * z) - z;
  double sign = 1.0;
  if (gnu > 0.0) {
    log_first -= std::lgamma(gnu);
  } else {
    // Gamma of a negative non-integer: sign alternates between poles.
    log_first -= std::lgamma(gnu);
    sign = (static_cast<long>(std::floor(gnu)) % 2 == 0) ? 1.0 : -1.0;
  }

  const double q = 0.25 * z * z;
  double log_scale = 0.0;
  double term = sign;
  double sum = term;
  for (int k = 1; k < 100000; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
    if (std::abs(term) > 1e100) {
      term *= 1e-100;
      sum *= 1e-100;
      log_scale += 100.0 * std::numbers::ln10;
    }
    const bool decreasing = (k + nu) > 0.0 && q < k * (k + nu);
    if (decreasing && std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  if (sum == 0.0) return 0.0;
  return std::copysign(std::exp(log_first + log_scale + std::log(std::abs(sum))), sum);
}

}  // namespace

double bessel_i_scaled(double nu, double z) {
  if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("bessel_i_scaled: z must be >= 0");
  if (!std::isfinite(nu)) throw DomainError("bessel_i_scaled: order must be finite");
  if (nu < 0.0 && nu == std::floor(nu)) nu = -nu;  // I_{-n} = I_n
  if (z == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    throw DomainError("bessel_i_scaled: negative non-integer order is singular at z = 0");
  }
  const double threshold = std::max(30.0, 2.0 * nu * nu);
  if (z >= threshold) return bessel_hankel_scaled(nu, z);
  return bessel_series_scaled(nu, z);
}

// ---------------------------------------------------------------------------
// Quadrature rules

namespace {

std::pair<std::vector<double>, std::vector<double>> legendre_reference(int order) {
  static std::mutex mutex;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(order); it != cache.end()) return it->second;

  const int n = order;
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double r = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = r;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * r * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (r * p1 - p0) / (r * r - 1.0);
      const double dr = p1 / dp;
      r -= dr;
      if (std::abs(dr) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = r;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * r * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (r * p1 - p0) / (r * r - 1.0);
    }
    x[i] = -r;
    x[n - 1 - i] = r;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - r * r) * dp * dp);
  }
  return cache.emplace(order, std::make_pair(x, w)).first->second;
}

// Golub-Welsch for the Jacobi weight (1 + x)^beta on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> jacobi_reference(int order, double beta) {
  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::pair<std::vector<double>, std::vector<double>>>
      cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_pair(order, beta);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const double a = 0.0;
  const double b = beta;
  const int n = order;
  Eigen::VectorXd diag(n), off(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    diag(k) = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    off(k - 1) = std::sqrt(4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0)));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  const double mu0 = std::exp((a + b + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    x[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    w[i] = mu0 * v0 * v0;
  }
  return cache.emplace(key, std::make_pair(x, w)).first->second;
}

}  // namespace

QuadratureRule gauss_legendre(int order, double a, double b) {
  if (order < 1) throw DomainError("gauss_legendre: order must be >= 1");
  if (!(a < b)) throw DomainError("gauss_legendre: need a < b");
  const auto& [x, w] = legendre_reference(order);
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = mid + half * x[i];
    rule.weights[i] = half * w[i];
  }
  return rule;
}

QuadratureRule gauss_jacobi_left(int order, double power, double a, double b) {
  if (order < 1) throw DomainError("gauss_jacobi_left: order must be >= 1");
  if (!(power > -1.0)) throw DomainError("gauss_jacobi_left: power must exceed -1");
  if (!(a < b)) throw DomainError("gauss_jacobi_left: need a < b");
  const auto& [x, w] = jacobi_reference(order, power);
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < order; ++i) {
    const double s = 1.0 + x[i];  // (y - a) / half
    rule.nodes[i] = a + half * s;
    rule.weights[i] = half * w[i] * std::pow(s, -power);
  }
  return rule;
}

double integrate_composite(const std::function<double(double)>& f, double a, double b,
                           int panels, int order) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("integrate_composite: need finite a < b");
  if (panels < 1) throw DomainError("integrate_composite: panels must be >= 1");
  if (order < 2) throw DomainError("integrate_composite: order must be >= 2");
  const auto& [x, w] = legendre_reference(order);
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double hi = (p + 1 == panels) ? b : lo + width;
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double s = 0.0;
    for (int i = 0; i < order; ++i) s += w[i] * f(mid + half * x[i]);
    total += half * s;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Random variates

double sample_gamma(double shape, double scale, RngStream& rng) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw DomainError("sample_gamma: shape and scale must be positive");
  std::gamma_distribution<double> dist(shape, 1.0);
  double g = 0.0;
  // Tiny shapes can underflow to an exact zero; the law has no atom there.
  do {
    g = dist(rng);
  } while (g <= 0.0);
  return scale * g;
}

std::uint64_t sample_poisson(double mean, RngStream& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("sample_poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(rng);
}

double sample_noncentral_chisq(double dof, double noncentrality, RngStream& rng) {
  if (!(dof > 0.0) || !(noncentrality >= 0.0))
    throw DomainError("sample_noncentral_chisq: need dof > 0 and noncentrality >= 0");
  const auto k = sample_poisson(0.5 * noncentrality, rng);
  return sample_gamma(0.5 * dof + static_cast<double>(k), 2.0, rng);
}

void parallel_batches(std::size_t n, std::size_t batch_size, std::uint64_t seed,
                      std::uint64_t first_stream,
                      const std::function<void(RngStream&, std::size_t, std::size_t)>& body,
                      unsigned workers) {
  if (batch_size == 0) throw DomainError("parallel_batches: batch_size must be positive");
  const std::size_t batches = (n + batch_size - 1) / batch_size;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(batches, 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= batches) return;
      try {
        RngStream rng(seed, first_stream + b);
        const std::size_t begin = b * batch_size;
        body(rng, begin, std::min(n, begin + batch_size));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(batches);
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(run);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace lagint
