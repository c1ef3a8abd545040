#ifndef GRADKIT_REPFORGE_HPP
#define GRADKIT_REPFORGE_HPP

#include "gradkit/linalg.hpp"
#include "gradkit/weightcalc.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace gradkit {

/// Hard size limits; exceeding any of them raises CapacityError.
struct Limits {
  int max_n = 8;
  long long max_tensor_dim = 4096;  // dim(rho) * n during tensor and split work
  double max_pfaffian_flops = 5e10; // (2m)! * (m-1) * 8 d^3 estimate
};

/// Index of the unordered coordinate pair (k, l), 0-based k < l,
/// in the flat generator list: pairs sorted by first then second coordinate.
int pair_index(int n, int k, int l);

/// Concrete unitary representation of Spin(n): one skew-Hermitian generator
/// pi([e_k, e_l]) per coordinate pair, in pair_index order.
struct Representation {
  int n;
  DominantWeight weight;
  std::vector<ComplexMatrix> gens;

  Representation(int n_, DominantWeight weight_, std::vector<ComplexMatrix> gens_);

  int dim() const { return gens.empty() ? 0 : static_cast<int>(gens[0].rows()); }
  const ComplexMatrix& gen_at(int k, int l) const; // requires k < l
  ComplexMatrix gen(int k, int l) const;           // signed; zero when k == l

  /// (1/32) sum over ordered pairs of pi([e_i, e_j])^2; scalar c(rho) Id when valid.
  ComplexMatrix casimir_matrix() const;

  /// Max |(C - c(rho)) v| over seeded unit vectors; avoids the full matrix product.
  double casimir_probe_defect(int samples = 4, std::uint64_t seed = 1) const;
};

enum class RepKind { Trivial, Vector, Spinor, SpinorPlus, SpinorMinus, Exterior };

/// Explicit model representations. Spinor requires odd n, SpinorPlus/Minus even n;
/// Exterior takes degree k with 0 <= k <= floor(n/2), k < n/2 when n is even.
Representation standard_rep(int n, RepKind kind, int k = 0, const Limits& limits = {});

/// V_rho (x) R^n with index (a, i) -> a*n + i. Pair generators are assembled
/// on demand; only the conformal weight operator is stored densely.
struct TensorRep {
  Representation base;
  ComplexMatrix chat; // conformal weight operator, Hermitian

  int n() const { return base.n; }
  int base_dim() const { return base.dim(); }
  int dim() const { return base.dim() * base.n; }

  /// Signed pi_rho([e_k,e_l]) (x) 1 + 1 (x) pi_vec([e_k,e_l]).
  ComplexMatrix gen(int k, int l) const;
};

/// Tensors base with the vector representation and assembles the conformal
/// weight operator (1/16) sum_{i<j} pi_rho([e_i,e_j]) (x) pi_vec([e_i,e_j]).
/// Verifies the block identity chat[(a,t),(b,s)] = 1/4 pi_rho([e_s,e_t])[a,b].
TensorRep tensor_with_vector(const Representation& base, const Limits& limits = {});

/// Sorted eigenvalues of the conformal weight operator (values only).
Eigen::VectorXd chat_eigenvalues(const TensorRep& trep);

/// One irreducible summand of the tensor product located inside it.
struct ComponentEmbedding {
  ComponentDescriptor descriptor;
  ComplexMatrix basis; // tensor_dim x component_dim, orthonormal columns
};

/// Splits the tensor product along the eigenspaces of the conformal weight
/// operator, one embedding per column of the unmerged table, in table order.
/// The exceptional equal-eigenvalue pair is separated with the Pfaffian element.
std::vector<ComponentEmbedding> split_components(const TensorRep& trep,
                                                 const DecompositionTable& table,
                                                 const Limits& limits = {});

/// Compresses the tensor generators onto one summand: B^* pi(.) B.
Representation restrict_to_component(const TensorRep& trep, const ComponentEmbedding& emb);

/// Exact coefficient q in p(lambda) = (-i)^m q, q = 8^m m! prod_i (lambda^i + m - i).
/// The phase branch matches the signed permutation sum over the gamma model.
Rational pfaffian_scalar_coeff(const DominantWeight& w);
std::complex<double> pfaffian_scalar(const DominantWeight& w);

/// Pfaffian element: signed sum over all (2m)! index orderings of products of
/// m = floor(n/2) generators, evaluated on any generator family in pair_index
/// order. Scalar i^m q(lambda) on an irreducible summand of weight lambda.
ComplexMatrix pfaffian_element(int n, const std::vector<ComplexMatrix>& gens,
                               const Limits& limits = {});

struct BuildOptions {
  std::string cache_dir; // empty disables the disk cache
  bool memoize = true;   // in-process memo of finished builds
  Limits limits;
};

/// Weight ladder from the canonical seed (trivial or a half-spin weight) to the
/// target, one +-mu_i move per step, every intermediate dominant.
std::vector<DominantWeight> build_chain(const DominantWeight& target);

/// Constructs the representation with the given highest weight by walking
/// build_chain, tensoring with R^n and extracting one summand per step.
Representation build_rep(const DominantWeight& target, const BuildOptions& opts = {});

/// GRADKIT_CACHE_DIR if set, else ".gradkit-cache".
std::string default_cache_dir();
std::string cache_key(const DominantWeight& w);

/// False when the entry is absent; IntegrityError when present but inconsistent
/// (bad manifest, wrong shapes, Casimir probe off).
bool cache_load(const std::string& dir, const DominantWeight& w, Representation* out);

/// Atomic: writes to a temp directory, then renames into place.
void cache_store(const std::string& dir, const Representation& rep);

struct ValidationReport {
  double skew_defect = 0;
  double bracket_defect = 0;
  double casimir_defect = 0;
  long long expected_dim = 0;
  int actual_dim = 0;
  double tolerance = 0;

  bool pass() const {
    return actual_dim == expected_dim && skew_defect <= tolerance &&
           bracket_defect <= tolerance && casimir_defect <= tolerance;
  }
};

/// Checks generators are skew-Hermitian, satisfy the so(n) brackets (structure
/// constants read off the Clifford model, never hand-coded), give the right
/// Casimir scalar, and act on a space of the Weyl dimension.
ValidationReport validate_rep(const Representation& rep, double tol_base = 1e-9,
                              std::uint64_t seed = 7);

/// exp(t pi([e_k, e_l])) through the eigendecomposition of the Hermitian i pi.
ComplexMatrix group_element(const Representation& rep, int k, int l, double t);

} // namespace gradkit

#endif
