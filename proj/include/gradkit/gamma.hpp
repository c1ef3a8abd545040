#ifndef GRADKIT_GAMMA_HPP
#define GRADKIT_GAMMA_HPP

#include "gradkit/linalg.hpp"

#include <vector>

namespace gradkit {

/// Skew-Hermitian Clifford generators on C^{2^floor(n/2)}:
/// e_i e_j + e_j e_i = -2 delta_ij, built from the standard Pauli tensor chain.
struct GammaSet {
  int n;
  std::vector<ComplexMatrix> gamma;

  int dim() const { return static_cast<int>(gamma.empty() ? 0 : gamma[0].rows()); }

  /// Spin generator [e_k, e_l] = 2 e_k e_l for k != l (0-based, sign-aware).
  ComplexMatrix bracket(int k, int l) const;

  /// Chirality operator for even n: i^m gamma_1...gamma_n, squares to the identity.
  ComplexMatrix chirality() const;
};

GammaSet gamma_matrices(int n, int max_n = 8);

} // namespace gradkit

#endif
