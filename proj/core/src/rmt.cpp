#include "lagint/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lagint {

ComplexMatrix sample_ginibre(int m, int n, RngStream& rng) {
  if (m < 1 || n < 1) throw DomainError("sample_ginibre: dimensions must be >= 1");
  const double s = std::sqrt(0.5);
  ComplexMatrix g(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      const double re = s * rng.normal();
      const double im = s * rng.normal();
      g(i, j) = {re, im};
    }
  return g;
}

ComplexMatrix sample_haar_unitary(int n, RngStream& rng) {
  if (n < 1) throw DomainError("sample_haar_unitary: order must be >= 1");
  const ComplexMatrix g = sample_ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    const std::complex<double> phase = mag > 0.0 ? d / mag : std::complex<double>(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

ComplexMatrix truncate(const ComplexMatrix& x, int m2, int n2) {
  if (m2 < 1 || n2 < 1 || m2 > x.rows() || n2 > x.cols())
    throw DomainError("truncate: requested corner does not fit");
  return x.topLeftCorner(m2, n2);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

ChamberPoint radial_part(const ComplexMatrix& x) {
  const ComplexMatrix gram = x.adjoint() * x;
  std::vector<double> ev = hermitian_eigenvalues(gram);
  const double scale = std::max(gram.cwiseAbs().maxCoeff(), 0.0);
  for (double& v : ev)
    if (v < 1e-12 * scale) v = 0.0;
  std::sort(ev.begin(), ev.end());
  return ChamberPoint(std::move(ev), true);
}

ChamberPoint sample_wishart_radial(int n, int alpha, RngStream& rng) {
  if (alpha < 0) throw UnsupportedError("sample_wishart_radial: alpha must be a non-negative integer");
  return radial_part(sample_ginibre(n + alpha, n, rng));
}

namespace {

double sample_chi(double dof, RngStream& rng) { return std::sqrt(sample_gamma(0.5 * dof, 2.0, rng)); }

}  // namespace

ChamberPoint sample_laguerre_ensemble(int n, double alpha, RngStream& rng) {
  if (n < 1) throw DomainError("sample_laguerre_ensemble: N must be >= 1");
  if (!(alpha > -1.0)) throw DomainError("sample_laguerre_ensemble: alpha must exceed -1");
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
  for (int i = 1; i <= n; ++i) diag(i - 1) = sample_chi(2.0 * (alpha + n - i + 1), rng);
  for (int i = 1; i < n; ++i) sub(i - 1) = sample_chi(2.0 * (n - i), rng);
  // B lower bidiagonal: B(i,i) = diag_i, B(i+1,i) = sub_i. T = B B^T / 2 is tridiagonal.
  Eigen::VectorXd td(n), to(std::max(n - 1, 0));
  for (int i = 0; i < n; ++i) {
    const double below = i > 0 ? sub(i - 1) : 0.0;
    td(i) = 0.5 * (diag(i) * diag(i) + below * below);
  }
  for (int i = 0; i + 1 < n; ++i) to(i) = 0.5 * diag(i) * sub(i);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(td, to, Eigen::EigenvaluesOnly);
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  for (double& v : ev) v = std::max(v, 0.0);
  std::sort(ev.begin(), ev.end());
  return ChamberPoint(std::move(ev), true);
}

ComplexMatrix sample_invariant_rectangular(const ChamberPoint& x, int alpha, RngStream& rng) {
  if (alpha < 0) throw UnsupportedError("sample_invariant_rectangular: alpha must be a non-negative integer");
  if (x.size() < 1 || !x.nonneg()) throw DomainError("sample_invariant_rectangular: need a non-negative anchor");
  const int cols = static_cast<int>(x.size());
  const int rows = cols + alpha;
  const ComplexMatrix v = sample_haar_unitary(rows, rng);
  const ComplexMatrix u = sample_haar_unitary(cols, rng);
  // V D U = (first `cols` columns of V, each scaled by sqrt x_k) U
  ComplexMatrix vd = v.leftCols(cols);
  for (int k = 0; k < cols; ++k) vd.col(k) *= std::sqrt(x[k]);
  return vd * u;
}

ChamberPoint sample_corner_alpha_matrix(int alpha, const ChamberPoint& z, RngStream& rng) {
  if (alpha < 0) throw UnsupportedError("sample_corner_alpha_matrix: alpha must be a non-negative integer");
  const int n = static_cast<int>(z.size());
  if (n < 1 || !z.nonneg()) throw DomainError("sample_corner_alpha_matrix: need a non-negative anchor");
  const ComplexMatrix v = sample_haar_unitary(n + alpha + 1, rng);
  ComplexMatrix corner = v.topLeftCorner(n + alpha, n);
  for (int k = 0; k < n; ++k) corner.col(k) *= std::sqrt(z[k]);
  ChamberPoint y = radial_part(corner);
  // The exact law lives on the inner window; only eigen-solver round-off may leave it.
  std::vector<double> c = y.vector();
  const double tol = 1e-9 * std::max(1.0, z[n - 1]);
  for (int k = 0; k < n; ++k) {
    const double lo = k == 0 ? 0.0 : z[k - 1];
    if (c[k] < lo - tol || c[k] > z[k] + tol)
      throw std::logic_error("sample_corner_alpha_matrix: draw left the interlacing window");
    c[k] = std::clamp(c[k], lo, z[k]);
  }
  return ChamberPoint(std::move(c), true);
}

}  // namespace lagint
