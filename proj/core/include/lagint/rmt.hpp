#pragma once

#include <complex>

#include <Eigen/Dense>

#include "lagint/chamber.hpp"
#include "lagint/numerics.hpp"

namespace lagint {

using ComplexMatrix =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// i.i.d. entries with independent N(0, 1/2) real and imaginary parts (E|g|^2 = 1).
ComplexMatrix sample_ginibre(int m, int n, RngStream& rng);

/// Haar unitary of order n: QR of a Ginibre matrix with the phases of diag(R)
/// pushed back into Q.
ComplexMatrix sample_haar_unitary(int n, RngStream& rng);

/// Upper-left m2 x n2 corner.
ComplexMatrix truncate(const ComplexMatrix& x, int m2, int n2);

/// Ascending eigenvalues of a Hermitian matrix (symmetrized before solving).
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

/// Squared singular values in ascending order, i.e. eigenvalues of X^* X, with
/// round-off negatives below 1e-12 ||X^* X|| clamped to 0.
ChamberPoint radial_part(const ComplexMatrix& x);

/// Radial part of an (N + alpha) x N Ginibre matrix: the Laguerre ensemble for
/// integer alpha.
ChamberPoint sample_wishart_radial(int n, int alpha, RngStream& rng);

/// Laguerre ensemble with real alpha > -1 through the beta = 2 bidiagonal model:
/// eigenvalues of B B^T / 2 with diag(B)_i ~ chi_{2(alpha+N-i+1)} and
/// subdiag(B)_i ~ chi_{2(N-i)}.
ChamberPoint sample_laguerre_ensemble(int n, double alpha, RngStream& rng);

/// V D U with Haar V (order N+alpha+1), Haar U (order N+1) and D = [diag(sqrt x); 0].
ComplexMatrix sample_invariant_rectangular(const ChamberPoint& x, int alpha, RngStream& rng);

/// Radial part of pi_{N+alpha,N}(V) diag(sqrt z) for Haar V of order N+alpha+1.
ChamberPoint sample_corner_alpha_matrix(int alpha, const ChamberPoint& z, RngStream& rng);

}  // namespace lagint
