#include "gradkit/gamma.hpp"

#include <stdexcept>

namespace gradkit {

namespace {

ComplexMatrix pauli(int which) {
  ComplexMatrix s(2, 2);
  const std::complex<double> i(0, 1);
  switch (which) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -i, i, 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

} // namespace

ComplexMatrix GammaSet::bracket(int k, int l) const {
  return gamma[k] * gamma[l] - gamma[l] * gamma[k];
}

ComplexMatrix GammaSet::chirality() const {
  if (n % 2 != 0) throw std::domain_error("chirality operator needs even n");
  ComplexMatrix p = ComplexMatrix::Identity(dim(), dim());
  for (const auto& g : gamma) p = p * g;
  const std::complex<double> i(0, 1);
  std::complex<double> phase(1, 0);
  for (int k = 0; k < n / 2; ++k) phase *= i;
  return phase * p;
}

GammaSet gamma_matrices(int n, int max_n) {
  if (n < 2 || n > max_n)
    throw std::invalid_argument("gamma matrices supported for 2 <= n <= " + std::to_string(max_n));
  const int m = n / 2;
  const int dim = 1 << m;
  const std::complex<double> i(0, 1);

  auto chain = [&](int slot, int which) {
    // sigma_3 on slots before `slot`, the chosen Pauli at `slot`, identity after.
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int s = 0; s < m; ++s) {
      if (s < slot) out = kron(out, pauli(3));
      else if (s == slot) out = kron(out, pauli(which));
      else out = kron(out, ComplexMatrix::Identity(2, 2));
    }
    return out;
  };

  GammaSet set{n, {}};
  set.gamma.reserve(n);
  for (int j = 0; j < m; ++j) {
    set.gamma.push_back(i * chain(j, 1));
    set.gamma.push_back(i * chain(j, 2));
  }
  if (n % 2 == 1) {
    ComplexMatrix odd = ComplexMatrix::Identity(1, 1);
    for (int s = 0; s < m; ++s) odd = kron(odd, pauli(3));
    set.gamma.push_back(i * odd);
  }

  for (auto& g : set.gamma)
    if (g.rows() != dim) throw std::logic_error("gamma construction produced a wrong dimension");
  return set;
}

} // namespace gradkit
