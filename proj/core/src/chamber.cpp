#include "lagint/chamber.hpp"

#include <algorithm>
#include <cmath>

namespace lagint {

bool is_chamber(std::span<const double> y, bool nonneg) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i])) return false;
    if (i > 0 && y[i] < y[i - 1]) return false;
  }
  return !(nonneg && !y.empty() && y[0] < 0.0);
}

ChamberPoint::ChamberPoint(std::vector<double> coords, bool nonneg)
    : coords_(std::move(coords)), nonneg_(nonneg) {
  if (!is_chamber(coords_, nonneg_))
    throw DomainError("ChamberPoint: coordinates must be finite, non-decreasing and (if non-negative) >= 0");
}

ChamberPoint ChamberPoint::from_unsorted(std::vector<double> coords, bool nonneg, double tol) {
  std::sort(coords.begin(), coords.end());
  if (nonneg) {
    for (double& c : coords)
      if (c < 0.0 && c >= -tol) c = 0.0;
  }
  return ChamberPoint(std::move(coords), nonneg);
}

bool ChamberPoint::is_strict_interior() const noexcept {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (!(coords_[i] > coords_[i - 1])) return false;
  return !(nonneg_ && !coords_.empty() && !(coords_[0] > 0.0));
}

double vandermonde(std::span<const double> y) {
  double v = 1.0;
  for (std::size_t j = 1; j < y.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) v *= y[j] - y[i];
  return v;
}

InterlacingWindow::InterlacingWindow(WindowKind kind, ChamberPoint anchor)
    : kind_(kind), anchor_(std::move(anchor)) {
  if (kind_ == WindowKind::outer && anchor_.size() < 1)
    throw DomainError("InterlacingWindow: outer window needs an anchor of size >= 1");
}

std::size_t InterlacingWindow::output_dim() const noexcept {
  return kind_ == WindowKind::outer ? anchor_.size() - 1 : anchor_.size();
}

double InterlacingWindow::lower(std::size_t k) const {
  if (kind_ == WindowKind::outer) return anchor_[k];
  return k == 0 ? 0.0 : anchor_[k - 1];
}

double InterlacingWindow::upper(std::size_t k) const {
  return kind_ == WindowKind::outer ? anchor_[k + 1] : anchor_[k];
}

bool InterlacingWindow::contains(std::span<const double> y) const {
  if (y.size() != output_dim()) return false;
  for (std::size_t k = 0; k < y.size(); ++k)
    if (y[k] < lower(k) || y[k] > upper(k)) return false;
  return true;
}

}  // namespace lagint
