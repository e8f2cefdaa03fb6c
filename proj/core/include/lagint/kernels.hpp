#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "lagint/chamber.hpp"
#include "lagint/numerics.hpp"
#include "lagint/quadrature.hpp"

namespace lagint {

/// The interlacing kernels:
///  - corner:       W^{N+1} -> W^N,  N! Delta_N(y) / Delta_{N+1}(x) on the outer window
///  - alpha_square: W^N_>= -> W^N_>=, (alpha+1)_N prod y^alpha / z^{alpha+1} Delta(y)/Delta(z), inner window
///  - alpha_corner: W^{N+1}_>= -> W^N_>=, composition corner then alpha_square
///  - hat_corner / hat_square: positive kernels prod e^{y} y^{-alpha-1} on the outer / inner window
enum class KernelKind { corner, alpha_square, alpha_corner, hat_corner, hat_square };

struct KernelSpec {
  KernelKind kind = KernelKind::corner;
  double alpha = 0.0;

  [[nodiscard]] bool is_probability() const noexcept {
    return kind != KernelKind::hat_corner && kind != KernelKind::hat_square;
  }
  /// Dimension of the output chamber for an anchor of dimension `anchor_dim`.
  [[nodiscard]] std::size_t output_dim(std::size_t anchor_dim) const noexcept {
    const bool drops = kind == KernelKind::corner || kind == KernelKind::alpha_corner ||
                       kind == KernelKind::hat_corner;
    return drops ? anchor_dim - 1 : anchor_dim;
  }
};

std::string_view kernel_name(KernelKind kind);
KernelKind parse_kernel_kind(std::string_view name);

using TestFunction = std::function<double(std::span<const double>)>;
/// Several test functions evaluated together: writes one value per output slot.
using MultiFunction = std::function<void(std::span<const double>, std::span<double>)>;

double density_corner(const ChamberPoint& x, std::span<const double> y);
double density_alpha_square(double alpha, const ChamberPoint& z, std::span<const double> y);
double density_alpha_corner(double alpha, const ChamberPoint& x, std::span<const double> y);
double density_hat_corner(double alpha, const ChamberPoint& x, std::span<const double> y);
double density_hat_square(double alpha, const ChamberPoint& z, std::span<const double> y);

double kernel_density(const KernelSpec& kernel, const ChamberPoint& anchor,
                      std::span<const double> y);

/// Integral of z^{-alpha-1} over [a, b], 0 < a < b, stable through alpha = 0.
double inverse_power_integral(double alpha, double a, double b);

/// Exact draw from the corner kernel through the eigenvalues of the N x N corner of
/// U^* diag(x) U with Haar U. Ties in x are allowed.
ChamberPoint sample_corner(const ChamberPoint& x, RngStream& rng);

/// Rejection sampler for the corner kernel (uniform proposals on the outer window).
/// Needs a strictly increasing anchor and N <= 4.
ChamberPoint sample_corner_rejection(const ChamberPoint& x, RngStream& rng);

/// Rejection sampler for the alpha_square kernel. Tied anchor coordinates force
/// the corresponding outputs (the continuous extension of the kernel).
ChamberPoint sample_alpha_square(double alpha, const ChamberPoint& z, RngStream& rng);

/// corner draw followed by an alpha_square draw.
ChamberPoint sample_alpha_corner(double alpha, const ChamberPoint& x, RngStream& rng);

/// Segments of coordinate k of the kernel's support given the first k coordinates.
void kernel_ranges(const KernelSpec& kernel, const ChamberPoint& anchor, std::size_t k,
                   std::span<const double> prefix, std::vector<Segment>& out);

/// (Lambda f)(anchor) by nested composite quadrature over the interlacing window.
/// Output dimension must be <= 3.
double apply_kernel_quadrature(const KernelSpec& kernel, const ChamberPoint& anchor,
                               const TestFunction& f, const QuadratureOptions& opts = {});
std::vector<double> apply_kernel_quadrature(const KernelSpec& kernel, const ChamberPoint& anchor,
                                            std::size_t outputs, const MultiFunction& f,
                                            const QuadratureOptions& opts = {});

}  // namespace lagint
