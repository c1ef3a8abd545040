#ifndef GRADKIT_LINALG_HPP
#define GRADKIT_LINALG_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace gradkit {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Absolute Frobenius tolerance scaled by matrix size.
inline double frobenius_tol(Eigen::Index rows, Eigen::Index cols, double base = 1e-9) {
  return base * std::sqrt(static_cast<double>(rows) * static_cast<double>(cols));
}

inline double hermiticity_defect(const ComplexMatrix& a) {
  return (a - a.adjoint()).norm();
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending,
/// eigenvectors orthonormal in the columns of the second member.
std::pair<Eigen::VectorXd, ComplexMatrix> hermitian_eigensolve(const ComplexMatrix& a);

/// Eigenvalues only (ascending); cheaper than hermitian_eigensolve.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// exp(x) for skew-Hermitian x via the eigendecomposition of i*x; unitary result.
ComplexMatrix matrix_exp_skew(const ComplexMatrix& x);

/// Unitary factor of the polar decomposition (square input).
ComplexMatrix polar_unitary(const ComplexMatrix& a);

/// Ratio of largest to smallest singular value minus one; zero for scalar-times-unitary.
double unitary_defect(const ComplexMatrix& a);

/// Snaps x to the nearest half-integer; defect receives |2x - round(2x)|/2.
double snap_half_integer(double x, double* defect = nullptr);

/// CMAT1 container: 8-byte magic "CMAT1\0\0\0", u32 rows, u32 cols (little endian),
/// then row-major interleaved float64 (re, im) entries.
void write_cmat(const std::filesystem::path& path, const ComplexMatrix& m);
ComplexMatrix read_cmat(const std::filesystem::path& path);

} // namespace gradkit

#endif
