#include "gradkit/exterior.hpp"

#include <stdexcept>

namespace gradkit {

namespace {

std::vector<unsigned> subsets_of_size(int n, int k) {
  std::vector<unsigned> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    if (__builtin_popcount(mask) == k) out.push_back(mask);
  return out;
}

std::vector<int> build_index(int n, const std::vector<unsigned>& subsets) {
  std::vector<int> idx(1u << n, -1);
  for (size_t i = 0; i < subsets.size(); ++i) idx[subsets[i]] = static_cast<int>(i);
  return idx;
}

int sign_below(unsigned mask, int i) {
  const unsigned below = mask & ((1u << i) - 1u);
  return __builtin_popcount(below) % 2 == 0 ? 1 : -1;
}

} // namespace

ExteriorModel::ExteriorModel(int n, int k) : n_(n), k_(k) {
  if (n < 1 || n > 16 || k < 0 || k > n)
    throw std::invalid_argument("exterior model needs 1 <= n <= 16 and 0 <= k <= n");
  subsets_ = subsets_of_size(n, k);
  index_of_ = build_index(n, subsets_);
  if (k < n) {
    subsets_up_ = subsets_of_size(n, k + 1);
    index_up_ = build_index(n, subsets_up_);
  }
  if (k > 0) {
    subsets_down_ = subsets_of_size(n, k - 1);
    index_down_ = build_index(n, subsets_down_);
  }
}

ComplexMatrix ExteriorModel::wedge(int i) const {
  if (k_ >= n_) return ComplexMatrix::Zero(0, dim());
  ComplexMatrix w = ComplexMatrix::Zero(static_cast<int>(subsets_up_.size()), dim());
  const unsigned bit = 1u << i;
  for (size_t c = 0; c < subsets_.size(); ++c) {
    const unsigned s = subsets_[c];
    if (s & bit) continue;
    w(index_up_[s | bit], static_cast<int>(c)) = sign_below(s, i);
  }
  return w;
}

ComplexMatrix ExteriorModel::interior(int i) const {
  if (k_ == 0) return ComplexMatrix::Zero(0, dim());
  ComplexMatrix w = ComplexMatrix::Zero(static_cast<int>(subsets_down_.size()), dim());
  const unsigned bit = 1u << i;
  for (size_t c = 0; c < subsets_.size(); ++c) {
    const unsigned s = subsets_[c];
    if (!(s & bit)) continue;
    w(index_down_[s & ~bit], static_cast<int>(c)) = sign_below(s, i);
  }
  return w;
}

ComplexMatrix ExteriorModel::hodge_star() const {
  const auto target = subsets_of_size(n_, n_ - k_);
  const auto target_index = build_index(n_, target);
  ComplexMatrix h = ComplexMatrix::Zero(static_cast<int>(target.size()), dim());
  for (size_t c = 0; c < subsets_.size(); ++c) {
    const unsigned s = subsets_[c];
    const unsigned comp = ~s & ((1u << n_) - 1u);
    int inversions = 0;
    for (int a = 0; a < n_; ++a) {
      if (!(s & (1u << a))) continue;
      for (int b = 0; b < a; ++b)
        if (comp & (1u << b)) ++inversions;
    }
    h(target_index[comp], static_cast<int>(c)) = inversions % 2 == 0 ? 1 : -1;
  }
  return h;
}

ComplexMatrix ExteriorModel::generator(int i, int j) const {
  ComplexMatrix g = ComplexMatrix::Zero(dim(), dim());
  auto add_term = [&](int from, unsigned s, int a, int b, double coeff) {
    // coeff * wedge(a) * interior(b) applied to the basis element indexed by s
    const unsigned ba = 1u << a, bb = 1u << b;
    if (!(s & bb)) return;
    const int sign_b = sign_below(s, b);
    const unsigned mid = s & ~bb;
    if (mid & ba) return;
    const int sign_a = sign_below(mid, a);
    g(index_of_[mid | ba], from) += coeff * sign_a * sign_b;
  };
  for (size_t c = 0; c < subsets_.size(); ++c) {
    add_term(static_cast<int>(c), subsets_[c], i, j, -4.0);
    add_term(static_cast<int>(c), subsets_[c], j, i, 4.0);
  }
  return g;
}

} // namespace gradkit
