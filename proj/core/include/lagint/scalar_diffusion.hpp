#pragma once

#include <functional>

#include "lagint/numerics.hpp"

namespace lagint {

/// One-particle Laguerre diffusion with generator x d^2/dx^2 + (alpha + 1 - x) d/dx.
struct DiffusionParams {
  double alpha = 0.0;
  double t = 0.0;
};

/// Boundary regime at the origin.
enum class BoundaryKind {
  entrance_or_reflecting,  ///< alpha > -1
  exit,                    ///< alpha <= -1
  dual,                    ///< Siegmund dual generator x d^2 + (x - alpha) d
};

BoundaryKind boundary_kind(double alpha);

/// Which Bessel order the closed-form density uses.
///  - regular: nu = alpha, the conservative (entrance/reflecting) solution;
///  - killed:  nu = -alpha, the solution absorbed at the origin. For alpha <= -1
///    this is the exit-boundary density; for other alpha it is the branch that
///    the Doob transform x^{-alpha} L_{-alpha} x^{alpha} = L_alpha - alpha maps onto.
enum class BesselBranch { regular, killed };

/// regular for alpha > -1, killed otherwise.
BesselBranch default_branch(double alpha);

/// Mean and variance of X_t started from x (conservative family).
struct TransitionMoments {
  double mean;
  double variance;
};
TransitionMoments transition_moments(double alpha, double t, double x);

/// p_{alpha,t}(x, y) on the default branch.
double transition_density(double alpha, double t, double x, double y);
double transition_density(double alpha, double t, double x, double y, BesselBranch branch);

/// log p_{alpha,t}(x, y) on the regular branch (alpha > -1); stays finite where
/// the density itself underflows.
double log_transition_density(double alpha, double t, double x, double y);

/// Exact draw of X_t given X_0 = x: c * chi'^2(2(alpha+1), x e^{-t} / c), c = (1 - e^{-t}) / 2.
double transition_sample(double alpha, double t, double x, RngStream& rng);

/// Speed measure of the dual generator, e^x x^{-alpha-1}.
double speed_measure_dual(double alpha, double x);

/// Dual density p^_{alpha,t}(x,y) = e^{-t} p_{alpha+1,t}(x,y) m^_alpha(y) / m^_alpha(x).
/// `branch` selects the Bessel order of p_{alpha+1}.
double dual_transition_density(double alpha, double t, double x, double y);
double dual_transition_density(double alpha, double t, double x, double y, BesselBranch branch);

/// e^{alpha t} p_{-alpha,t}(x,y) (y/x)^alpha - p_{alpha,t}(x,y), with p_{-alpha} on the
/// killed branch (order alpha).
double htransform_residual_32a(double alpha, double t, double x, double y);

/// Central-difference residual of the backward equation d_t u = G_x u at (t, x),
/// with G the generator of `family` (dual uses x d^2 + (x - alpha) d).
double backward_generator_residual(const std::function<double(double t, double x)>& u,
                                   BoundaryKind family, double alpha, double t, double x,
                                   double h);

/// Same residual applied to the family's own density in (t, x) at fixed y.
double backward_generator_residual(BoundaryKind family, double alpha, double t, double x,
                                   double y, double h);

}  // namespace lagint
