#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "lagint/error.hpp"

namespace lagint {

/// A point of the Weyl chamber: coordinates in non-decreasing order, and
/// non-negative when `nonneg` is set.
class ChamberPoint {
 public:
  ChamberPoint() = default;
  explicit ChamberPoint(std::vector<double> coords, bool nonneg = true);
  ChamberPoint(std::initializer_list<double> coords) : ChamberPoint(std::vector<double>(coords)) {}

  /// Sorts `coords` first; negative entries within `tol` of zero are clamped.
  static ChamberPoint from_unsorted(std::vector<double> coords, bool nonneg = true,
                                    double tol = 0.0);

  [[nodiscard]] std::size_t size() const noexcept { return coords_.size(); }
  [[nodiscard]] bool nonneg() const noexcept { return nonneg_; }
  [[nodiscard]] double operator[](std::size_t i) const { return coords_[i]; }
  [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }
  [[nodiscard]] const std::vector<double>& vector() const noexcept { return coords_; }

  /// Strictly increasing, and strictly positive when non-negative.
  [[nodiscard]] bool is_strict_interior() const noexcept;

  friend bool operator==(const ChamberPoint&, const ChamberPoint&) = default;

 private:
  std::vector<double> coords_;
  bool nonneg_ = true;
};

/// prod_{i<j} (y_j - y_i); 1 when fewer than two coordinates.
double vandermonde(std::span<const double> y);
inline double vandermonde(const ChamberPoint& y) { return vandermonde(y.coords()); }

bool is_chamber(std::span<const double> y, bool nonneg);

enum class WindowKind {
  outer,  ///< x_k <= y_k <= x_{k+1}, anchor of size N+1
  inner,  ///< z_{k-1} <= y_k <= z_k with z_0 = 0, anchor of size N
};

class InterlacingWindow {
 public:
  InterlacingWindow(WindowKind kind, ChamberPoint anchor);

  [[nodiscard]] WindowKind kind() const noexcept { return kind_; }
  [[nodiscard]] const ChamberPoint& anchor() const noexcept { return anchor_; }
  [[nodiscard]] std::size_t output_dim() const noexcept;
  [[nodiscard]] double lower(std::size_t k) const;
  [[nodiscard]] double upper(std::size_t k) const;
  [[nodiscard]] bool contains(std::span<const double> y) const;

 private:
  WindowKind kind_;
  ChamberPoint anchor_;
};

}  // namespace lagint
