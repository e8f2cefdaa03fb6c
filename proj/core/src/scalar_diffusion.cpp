#include "lagint/scalar_diffusion.hpp"

#include <cmath>

namespace lagint {

BoundaryKind boundary_kind(double alpha) {
  return alpha > -1.0 ? BoundaryKind::entrance_or_reflecting : BoundaryKind::exit;
}

BesselBranch default_branch(double alpha) {
  return alpha > -1.0 ? BesselBranch::regular : BesselBranch::killed;
}

TransitionMoments transition_moments(double alpha, double t, double x) {
  const double e = std::exp(-t);
  const double c = -std::expm1(-t);
  return {x * e + (alpha + 1.0) * c, 2.0 * x * e * c + (alpha + 1.0) * c * c};
}

double transition_density(double alpha, double t, double x, double y) {
  return transition_density(alpha, t, x, y, default_branch(alpha));
}

double transition_density(double alpha, double t, double x, double y, BesselBranch branch) {
  if (!(t > 0.0)) throw DomainError("transition_density: t must be positive");
  if (!(y > 0.0)) throw DomainError("transition_density: y must be positive");
  if (!(x >= 0.0)) throw DomainError("transition_density: x must be non-negative");
  const double nu = branch == BesselBranch::regular ? alpha : -alpha;
  if (branch == BesselBranch::regular && !(alpha > -1.0))
    throw DomainError("transition_density: regular branch needs alpha > -1");

  const double c = -std::expm1(-t);  // 1 - e^{-t}
  if (x == 0.0) {
    if (branch != BesselBranch::regular && alpha != 0.0)
      throw DomainError("transition_density: killed family has no entrance at x = 0");
    // Gamma(alpha + 1, scale c) law.
    return std::exp(alpha * std::log(y) - y / c - (alpha + 1.0) * std::log(c) -
                    std::lgamma(alpha + 1.0));
  }
  const double xe = x * std::exp(-t);
  const double sx = std::sqrt(xe);
  const double sy = std::sqrt(y);
  const double z = 2.0 * sx * sy / c;
  const double d = sx - sy;
  const double log_pref = -std::log(c) - d * d / c + 0.5 * alpha * (std::log(y) - std::log(xe));
  return std::exp(log_pref) * bessel_i_scaled(nu, z);
}

double log_transition_density(double alpha, double t, double x, double y) {
  if (!(alpha > -1.0)) throw DomainError("log_transition_density: alpha must exceed -1");
  if (!(t > 0.0)) throw DomainError("log_transition_density: t must be positive");
  if (!(y > 0.0)) throw DomainError("log_transition_density: y must be positive");
  if (!(x >= 0.0)) throw DomainError("log_transition_density: x must be non-negative");
  const double c = -std::expm1(-t);
  if (x == 0.0)
    return alpha * std::log(y) - y / c - (alpha + 1.0) * std::log(c) - std::lgamma(alpha + 1.0);
  const double xe = x * std::exp(-t);
  const double sx = std::sqrt(xe);
  const double sy = std::sqrt(y);
  const double d = sx - sy;
  return -std::log(c) - d * d / c + 0.5 * alpha * (std::log(y) - std::log(xe)) +
         std::log(bessel_i_scaled(alpha, 2.0 * sx * sy / c));
}

double transition_sample(double alpha, double t, double x, RngStream& rng) {
  if (!(alpha > -1.0)) throw DomainError("transition_sample: alpha must exceed -1");
  if (!(t > 0.0)) throw DomainError("transition_sample: t must be positive");
  if (!(x >= 0.0)) throw DomainError("transition_sample: x must be non-negative");
  const double c = -0.5 * std::expm1(-t);
  return c * sample_noncentral_chisq(2.0 * (alpha + 1.0), x * std::exp(-t) / c, rng);
}

double speed_measure_dual(double alpha, double x) {
  if (!(x > 0.0)) throw DomainError("speed_measure_dual: x must be positive");
  return std::exp(x - (alpha + 1.0) * std::log(x));
}

double dual_transition_density(double alpha, double t, double x, double y) {
  return dual_transition_density(alpha, t, x, y, default_branch(alpha + 1.0));
}

double dual_transition_density(double alpha, double t, double x, double y, BesselBranch branch) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("dual_transition_density: x, y must be positive");
  // m^(y)/m^(x) = e^{y-x} (y/x)^{-alpha-1}
  const double ratio = std::exp((y - x) - (alpha + 1.0) * (std::log(y) - std::log(x)));
  return std::exp(-t) * transition_density(alpha + 1.0, t, x, y, branch) * ratio;
}

double htransform_residual_32a(double alpha, double t, double x, double y) {
  if (!(alpha > -1.0)) throw DomainError("htransform_residual_32a: alpha must exceed -1");
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("htransform_residual_32a: x, y must be positive");
  const double lhs = std::exp(alpha * t + alpha * (std::log(y) - std::log(x))) *
                     transition_density(-alpha, t, x, y, BesselBranch::killed);
  return lhs - transition_density(alpha, t, x, y, BesselBranch::regular);
}

double backward_generator_residual(const std::function<double(double, double)>& u,
                                   BoundaryKind family, double alpha, double t, double x,
                                   double h) {
  const double u0 = u(t, x);
  const double ut = (u(t + h, x) - u(t - h, x)) / (2.0 * h);
  const double up = u(t, x + h);
  const double um = u(t, x - h);
  const double ux = (up - um) / (2.0 * h);
  const double uxx = (up - 2.0 * u0 + um) / (h * h);
  const double drift = family == BoundaryKind::dual ? (x - alpha) : (alpha + 1.0 - x);
  return ut - (x * uxx + drift * ux);
}

double backward_generator_residual(BoundaryKind family, double alpha, double t, double x,
                                   double y, double h) {
  if (family == BoundaryKind::dual) {
    return backward_generator_residual(
        [&](double s, double w) { return dual_transition_density(alpha, s, w, y); }, family,
        alpha, t, x, h);
  }
  const BesselBranch branch =
      family == BoundaryKind::exit ? BesselBranch::killed : BesselBranch::regular;
  return backward_generator_residual(
      [&](double s, double w) { return transition_density(alpha, s, w, y, branch); }, family,
      alpha, t, x, h);
}

}  // namespace lagint
