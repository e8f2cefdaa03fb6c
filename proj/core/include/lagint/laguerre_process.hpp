#pragma once

#include <span>
#include <vector>

#include "lagint/chamber.hpp"
#include "lagint/kernels.hpp"
#include "lagint/numerics.hpp"
#include "lagint/quadrature.hpp"

namespace lagint {

/// Non-colliding Laguerre process with N particles, parameter alpha, at time t.
struct SemigroupParams {
  double alpha = 0.0;
  double t = 0.0;
  std::size_t n = 1;
};

/// Eigenvalue of the Vandermonde function under N independent one-particle
/// generators: -N(N-1)/2.
double lambda_eigen(std::size_t n);

/// e^{-lambda t} Delta(y)/Delta(x) det[p_{alpha,t}(x_i, y_j)]; rows are rescaled
/// in log space before the LU factorization.
double km_density(double alpha, double t, const ChamberPoint& x, std::span<const double> y);

/// Bare determinants det[p_{alpha,t}(x_i, y_j)] and det[p^_{alpha,t}(x_i, y_j)].
double subkm_density(double alpha, double t, const ChamberPoint& x, std::span<const double> y);
double subkm_dual_density(double alpha, double t, const ChamberPoint& x,
                          std::span<const double> y);

/// Determinant with partial pivoting; destroys `a` (row-major, n x n).
double determinant(std::vector<double>& a, std::size_t n);

/// Upper integration limit used for the semigroup quadrature.
double semigroup_upper_limit(const SemigroupParams& params, const ChamberPoint& x);

/// Quadrature rule for y -> km_density(x, y) over the chamber, built once per
/// starting point and reusable across test functions. The chamber integral is a
/// product rule on [0, y_max]^N restricted to strictly increasing node tuples,
/// which equals (1/N!) times the full-box sum of the symmetric integrand. Tuples
/// whose weight is below 1e-14 of the total mass are skipped.
class SemigroupRule {
 public:
  SemigroupRule(const SemigroupParams& params, const ChamberPoint& x,
                const QuadratureOptions& opts = {});

  [[nodiscard]] double apply(const TestFunction& f) const;
  [[nodiscard]] std::vector<double> apply(std::size_t outputs, const MultiFunction& f) const;
  [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.size(); }
  [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }

 private:
  SemigroupParams params_;
  ChamberPoint x_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> columns_;  // p(x_a, node_j), row a
  double prefactor_ = 1.0;
};

/// (T^N_{alpha,t} f)(x) for N <= 3; t = 0 returns f(x).
double semigroup_apply(const SemigroupParams& params, const ChamberPoint& x,
                       const TestFunction& f, const QuadratureOptions& opts = {});

enum class SdeScheme { euler_reordered };

struct SdeConfig {
  double dt = 1e-3;
  SdeScheme scheme = SdeScheme::euler_reordered;
  double floor_eps = 1e-12;
};

/// Euler-Maruyama path of the interacting SDE, returning the state at t_end.
/// Pairwise repulsion uses gaps floored at sqrt(dt * max(x_i, x_j)); negative
/// coordinates are reset to floor_eps and the state is re-sorted after each step.
ChamberPoint simulate_sde(double alpha, const ChamberPoint& x0, double t_end,
                          const SdeConfig& cfg, RngStream& rng);

/// Exact-in-law draw through the squared singular values of an (N+alpha) x N
/// complex matrix whose entries follow independent Ornstein-Uhlenbeck dynamics.
ChamberPoint simulate_matrix_ou(int alpha, const ChamberPoint& x0, double t, RngStream& rng);

}  // namespace lagint
