#include "gradkit/linalg.hpp"

#include "gradkit/errors.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

#ifdef GRADKIT_USE_LAPACKE
#include <lapacke.h>
#endif

namespace gradkit {

std::pair<Eigen::VectorXd, ComplexMatrix> hermitian_eigensolve(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigensolve needs a square matrix");
#ifdef GRADKIT_USE_LAPACKE
  const lapack_int n = static_cast<lapack_int>(a.rows());
  ComplexMatrix work = a; // column-major, overwritten with eigenvectors
  Eigen::VectorXd evals(n);
  if (n > 0) {
    lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                     reinterpret_cast<lapack_complex_double*>(work.data()), n,
                                     evals.data());
    if (info != 0) throw IntegrityError("zheevd failed with info=" + std::to_string(info));
  }
  return {std::move(evals), std::move(work)};
#else
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) throw IntegrityError("Hermitian eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
#endif
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigensolve needs a square matrix");
#ifdef GRADKIT_USE_LAPACKE
  const lapack_int n = static_cast<lapack_int>(a.rows());
  ComplexMatrix work = a;
  Eigen::VectorXd evals(n);
  if (n > 0) {
    lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n,
                                     reinterpret_cast<lapack_complex_double*>(work.data()), n,
                                     evals.data());
    if (info != 0) throw IntegrityError("zheevd failed with info=" + std::to_string(info));
  }
  return evals;
#else
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw IntegrityError("Hermitian eigensolver failed");
  return solver.eigenvalues();
#endif
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix matrix_exp_skew(const ComplexMatrix& x) {
  const std::complex<double> iu(0.0, 1.0);
  auto [evals, evecs] = hermitian_eigensolve(iu * x);
  ComplexVector phases(evals.size());
  for (Eigen::Index j = 0; j < evals.size(); ++j) phases(j) = std::exp(-iu * evals(j));
  return evecs * phases.asDiagonal() * evecs.adjoint();
}

ComplexMatrix polar_unitary(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double unitary_defect(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(s.size() - 1) <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / s(s.size() - 1) - 1.0;
}

double snap_half_integer(double x, double* defect) {
  const double r = std::round(2.0 * x);
  if (defect) *defect = std::abs(2.0 * x - r) / 2.0;
  return r / 2.0;
}

namespace {
constexpr char kMagic[8] = {'C', 'M', 'A', 'T', '1', '\0', '\0', '\0'};
}

void write_cmat(const std::filesystem::path& path, const ComplexMatrix& m) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(kMagic, sizeof kMagic);
  const uint32_t rows = static_cast<uint32_t>(m.rows());
  const uint32_t cols = static_cast<uint32_t>(m.cols());
  out.write(reinterpret_cast<const char*>(&rows), 4);
  out.write(reinterpret_cast<const char*>(&cols), 4);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double re = m(i, j).real(), im = m(i, j).imag();
      out.write(reinterpret_cast<const char*>(&re), 8);
      out.write(reinterpret_cast<const char*>(&im), 8);
    }
  }
  if (!out) throw IoError("short write: " + path.string());
}

ComplexMatrix read_cmat(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  char magic[8];
  uint32_t rows = 0, cols = 0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&rows), 4);
  in.read(reinterpret_cast<char*>(&cols), 4);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw IoError("not a CMAT1 file: " + path.string());
  ComplexMatrix m(rows, cols);
  for (uint32_t i = 0; i < rows; ++i) {
    for (uint32_t j = 0; j < cols; ++j) {
      double re = 0, im = 0;
      in.read(reinterpret_cast<char*>(&re), 8);
      in.read(reinterpret_cast<char*>(&im), 8);
      m(i, j) = std::complex<double>(re, im);
    }
  }
  if (!in) throw IoError("truncated CMAT1 file: " + path.string());
  return m;
}

} // namespace gradkit
