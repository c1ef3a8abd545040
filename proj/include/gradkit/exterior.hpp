#ifndef GRADKIT_EXTERIOR_HPP
#define GRADKIT_EXTERIOR_HPP

#include "gradkit/linalg.hpp"

#include <vector>

namespace gradkit {

/// Exterior algebra model on Lambda^k(R^n) with the orthonormal wedge basis
/// e_S = e_{s1} ^ ... ^ e_{sk}, s1 < ... < sk, ordered by subset bitmask.
class ExteriorModel {
public:
  ExteriorModel(int n, int k);

  int n() const { return n_; }
  int degree() const { return k_; }
  int dim() const { return static_cast<int>(subsets_.size()); }

  /// e_i ^ . : Lambda^k -> Lambda^{k+1} (0-based i).
  ComplexMatrix wedge(int i) const;
  /// Interior product with e_i: Lambda^k -> Lambda^{k-1}.
  ComplexMatrix interior(int i) const;
  /// Hodge star Lambda^k -> Lambda^{n-k} between the same subset bases.
  ComplexMatrix hodge_star() const;

  /// Spin generator pi([e_i, e_j]) = -4 e_i^ int(e_j) + 4 e_j^ int(e_i) on Lambda^k.
  ComplexMatrix generator(int i, int j) const;

  const std::vector<unsigned>& subsets() const { return subsets_; }

private:
  int n_;
  int k_;
  std::vector<unsigned> subsets_;      // sorted bitmasks of size k
  std::vector<int> index_of_;          // bitmask -> index in subsets_, or -1
  std::vector<unsigned> subsets_up_;   // size k+1 (empty when k = n)
  std::vector<int> index_up_;
  std::vector<unsigned> subsets_down_; // size k-1 (empty when k = 0)
  std::vector<int> index_down_;
};

} // namespace gradkit

#endif
