#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "lagint/error.hpp"

namespace lagint {

/// Seeded pseudo-random stream. Streams with equal (seed, stream_id) replay the
/// same sequence; distinct stream ids are seeded through independent seed_seq
/// words, which is what the Monte Carlo drivers rely on for per-worker streams.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] std::uint64_t stream_id() const noexcept { return stream_id_; }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Rising factorial x(x+1)...(x+n-1); 1 for n = 0.
double pochhammer(double x, unsigned n);

double log_gamma(double x);

/// e^{-z} I_nu(z). Defined for every real order (negative non-integer orders
/// go through the power series directly); z must be non-negative.
double bessel_i_scaled(double nu, double z);

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = -1.0;
  double b = 1.0;
};

/// Gauss-Legendre rule with `order` nodes mapped to [a, b].
QuadratureRule gauss_legendre(int order, double a = -1.0, double b = 1.0);

/// Gauss-Jacobi rule on [a, b] for integrands of the form (y - a)^power * h(y).
/// The returned weights already divide out (y - a)^power, so that
/// sum_i w_i F(y_i) approximates the integral of F itself.
QuadratureRule gauss_jacobi_left(int order, double power, double a, double b);

/// Composite Gauss-Legendre estimate of the integral of f over [a, b].
double integrate_composite(const std::function<double(double)>& f, double a, double b,
                           int panels, int order = 20);

// ---------------------------------------------------------------------------
// Random variates

double sample_gamma(double shape, double scale, RngStream& rng);
std::uint64_t sample_poisson(double mean, RngStream& rng);
double sample_noncentral_chisq(double dof, double noncentrality, RngStream& rng);

/// Runs `body(stream, begin, end)` over [0, n) split into fixed batches. Each batch
/// owns the stream (seed, first_stream + batch index), so results do not depend
/// on how many worker threads execute the batches.
void parallel_batches(std::size_t n, std::size_t batch_size, std::uint64_t seed,
                      std::uint64_t first_stream,
                      const std::function<void(RngStream&, std::size_t, std::size_t)>& body,
                      unsigned workers = 0);

}  // namespace lagint
