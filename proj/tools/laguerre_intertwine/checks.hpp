#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lagint/chamber.hpp"
#include "lagint/kernels.hpp"
#include "lagint/numerics.hpp"
#include "lagint/quadrature.hpp"
#include "lagint/stats.hpp"

namespace lagint::experiments {

// ---------------------------------------------------------------------------
// Intertwining relations

enum class Relation {
  main,            ///< T^{N+1}_a Lambda^{N+1}_{a,N} = Lambda^{N+1}_{a,N} T^N_a
  shifted_corner,  ///< T^{N+1}_a Lambda^{N+1}_N = Lambda^{N+1}_N T^N_{a+1}
  shifted_square,  ///< T^N_{a+1} Lambda^N_{a,N} = Lambda^N_{a,N} T^N_a
};

const char* relation_name(Relation r);

struct IntertwineQuadrature {
  QuadratureOptions semigroup;
  QuadratureOptions kernel;
};

/// Quadrature settings that reach the acceptance tolerances for N = 1 and N = 2.
IntertwineQuadrature default_intertwine_quadrature(std::size_t n);

/// exp(-sum y), prod 1/(1 + y_k), sum y * exp(-sum y).
inline constexpr std::size_t kStandardTestFunctions = 3;
void standard_test_functions(std::span<const double> y, std::span<double> out);
std::vector<std::string> standard_test_function_names();

struct IntertwineSides {
  std::vector<double> lhs;
  std::vector<double> rhs;
  [[nodiscard]] double max_relative_discrepancy() const;
};

/// Both sides of `relation` at the anchor `x` (size N+1 for the first two
/// relations, N for the last), each by its own nested quadrature.
IntertwineSides intertwining_sides(Relation relation, double alpha, double t,
                                   const ChamberPoint& x, std::size_t outputs,
                                   const MultiFunction& f, const IntertwineQuadrature& q);

// ---------------------------------------------------------------------------
// Pointwise kernel and density identities

/// Integral over z of corner(x, z) * alpha_square(z, y); should equal alpha_corner(x, y).
double composed_density(double alpha, const ChamberPoint& x, std::span<const double> y,
                        const QuadratureOptions& opts = {4, 20});

struct TwoSides {
  double lhs = 0.0;
  double rhs = 0.0;
  [[nodiscard]] double relative() const;
};

/// One-particle density form of P Lambda^hat_square = Lambda^hat_square P^hat:
/// m^(y) int_y^inf p(x,z) dz against int_0^x m^(z) p^(z,y) dz, both densities
/// on the killed Bessel branch. Needs alpha < 0: otherwise the right side diverges at 0.
TwoSides dual_square_identity(double alpha, double t, double x, double y);

/// One-particle density form of P^{2} Lambda^hat_corner = Lambda^hat_corner P^hat for
/// the anchor (x1, x2), on the regular branch.
TwoSides dual_corner_identity(double alpha, double t, double x1, double x2, double y);

/// int p_s(x,z) p_t(z,y) dz against p_{s+t}(x,y).
TwoSides chapman_kolmogorov(double alpha, double s, double t, double x, double y);

/// Backward-equation residual of the dual density relative to the size of its terms.
double dual_generator_relative_residual(double alpha, double t, double x, double y);

/// |e^{a t} p_{-a}(x,y) (y/x)^a - p_a(x,y)| / p_a(x,y).
double htransform_relative_residual(double alpha, double t, double x, double y);

/// |e^t p^_a (x,y) m^_a(x) / m^_a(y) - p_{a+1}(x,y)| / p_{a+1}(x,y).
double dual_definition_relative_residual(double alpha, double t, double x, double y);

// ---------------------------------------------------------------------------
// Monte Carlo helpers

using ChamberSampler = std::function<ChamberPoint(RngStream&)>;

/// n draws; draw i uses the stream (seed, first_stream + i / 1000).
std::vector<ChamberPoint> draw_many(std::size_t n, std::uint64_t seed, std::uint64_t first_stream,
                                    const ChamberSampler& sampler);

/// Coordinate k of every draw.
EmpiricalSample marginal(const std::vector<ChamberPoint>& draws, std::size_t k,
                         const std::string& label);
EmpiricalSample linear_sum(const std::vector<ChamberPoint>& draws, const std::string& label);
EmpiricalSample linear_log_sum(const std::vector<ChamberPoint>& draws, const std::string& label);

/// Two-sample KS on every marginal, plus sum y and sum log y when N > 1.
std::vector<ComparisonReport> compare_draws(const std::vector<ChamberPoint>& a,
                                            const std::vector<ChamberPoint>& b,
                                            const std::string& label);

/// CDF of the one-particle transition law at the sorted points `ys`, built by
/// cumulative quadrature between consecutive points.
std::vector<double> transition_cdf_at_sorted(double alpha, double t, double x,
                                             const std::vector<double>& ys);

/// One-sample KS of draws against the one-particle transition law.
ComparisonReport ks_against_transition(const EmpiricalSample& sample, double alpha, double t,
                                       double x);

}  // namespace lagint::experiments
