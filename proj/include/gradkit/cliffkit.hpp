#ifndef GRADKIT_CLIFFKIT_HPP
#define GRADKIT_CLIFFKIT_HPP

#include "gradkit/report.hpp"
#include "gradkit/repforge.hpp"
#include "gradkit/weightcalc.hpp"

#include <complex>
#include <vector>

namespace gradkit {

/// The homomorphisms p(e_i) from V_rho into one irreducible component of
/// V_rho (x) R^n, extracted from an orthonormal eigenspace embedding. The
/// component-side basis is an eigensolver artifact, so only expressions
/// invariant under a left unitary (Grams p(u)^* p(v), projectors) are
/// comparable across runs; direct matches against model operators go through
/// a fitted polar intertwiner.
struct CliffordHom {
  ComponentDescriptor descriptor;
  std::vector<ComplexMatrix> p; // one dim(component) x dim(rho) matrix per basis vector

  /// p(u) = sum_i u_i p(e_i).
  ComplexMatrix at(const Eigen::VectorXd& u) const;
  /// Gram bilinear p(e_i)^* p(e_j); the (i,j) block of the component projector.
  ComplexMatrix gram(int i, int j) const { return p[i].adjoint() * p[j]; }
};

/// A representation bundled with its tensor decomposition data: the branching
/// table, orthonormal component embeddings, and the extracted homomorphisms.
/// Heavy derived objects (component projectors, powers of the tensor Casimir)
/// are cached lazily; the class is meant for single-threaded use.
class Workspace {
public:
  Workspace(Representation rho_in, const Limits& limits = Limits{});

  const Representation& rho() const { return rho_; }
  const TensorRep& trep() const { return trep_; }
  const DecompositionTable& table() const { return table_; }
  const DecompositionTable& merged() const { return merged_; }
  const std::vector<ComponentEmbedding>& embeddings() const { return embeddings_; }
  const std::vector<CliffordHom>& homs() const { return homs_; }

  int n() const { return rho_.n; }
  long long rho_dim() const { return rho_.dim(); }
  long long tensor_dim() const { return trep_.dim(); }
  bool exceptional() const { return table_.exceptional; }

  /// Unmerged row indices feeding merged column k (a pair for the exceptional column).
  const std::vector<std::vector<int>>& merged_rows() const { return merged_rows_; }

  /// Hom for a merged column; stacks the exceptional pair into one map whose
  /// Gram is the sum of the pair Grams.
  CliffordHom merged_hom(int merged_index) const;

  /// Projector onto merged component k as a tensor-space matrix, built from
  /// the embeddings (Gram route). Cached.
  const ComplexMatrix& gram_projector(int merged_index) const;

  /// (chat / power_scale())^q, cached up to the merged component count minus
  /// one; larger q are computed on the fly by the callers that stream them.
  const ComplexMatrix& scaled_power(int q) const;
  double power_scale() const { return power_scale_; }

  std::vector<double> merged_nodes() const; // conformal weights as doubles

private:
  Representation rho_;
  TensorRep trep_;
  DecompositionTable table_;
  DecompositionTable merged_;
  std::vector<ComponentEmbedding> embeddings_;
  std::vector<CliffordHom> homs_;
  std::vector<std::vector<int>> merged_rows_;
  double power_scale_ = 1.0;
  mutable std::vector<ComplexMatrix> gram_cache_;
  mutable std::vector<bool> gram_ready_;
  mutable std::vector<ComplexMatrix> power_cache_;
};

/// r^q(e_i, e_j) on V_rho by the block recursion over generator products;
/// eigensolver-free, cost grows with q, intended for small representations.
ComplexMatrix rq_entry(const Representation& rho, int q, int i, int j);

/// Scalar of sum_i r^q(e_i, e_i) on irreducible V_rho; throws IntegrityError
/// when the sum is not a scalar matrix.
std::complex<double> generalized_casimir_trace(const Representation& rho, int q,
                                               double tol_base = 1e-9);

/// Moment identities: sum_k m_k^q p_k(e_i)^* p_k(e_j) = r^q(e_i, e_j) for
/// q = 0..q_max, checked in tensor-space form against powers of the Casimir
/// operator with conformal weights rescaled by power_scale(); plus the
/// contraction identity -1/4 sum_i p_k(e_i) pi([e_i, e_j]) = m_k p_k(e_j).
/// q_max < 0 selects 2N+2 for an N+1 component table.
SuiteResult verify_moment_identities(const Workspace& ws, int q_max = -1,
                                     double tol_base = 1e-9);

/// Equivariance p(Ad(g) u) = pi_comp(g) p(u) pi_rho(g)^{-1} on seeded samples
/// of plane rotations g and unit vectors u.
SuiteResult verify_equivariance(const Workspace& ws, int samples = 8, unsigned seed = 11,
                                double tol_base = 1e-8);

/// Three independently assembled projector families onto the merged
/// components: Gram (from embeddings), Vandermonde (exact coefficients times
/// Casimir powers), spectral (fresh eigensolve with half-integer clustering).
struct ProjectorSet {
  std::vector<ComplexMatrix> gram;
  std::vector<ComplexMatrix> vandermonde;
  std::vector<ComplexMatrix> spectral;
};

ProjectorSet assemble_projectors(const Workspace& ws);

/// Pairwise agreement of the three routes plus the projector algebra
/// (hermitian, complete, correct ranks, projector action on every embedding).
SuiteResult verify_projectors(const Workspace& ws, double tol_base = 1e-9);

/// Signed permutation sum over the complement of {i, j}: (m-1)-fold generator
/// products, the reduced Pfaffian entering the bilinear identity.
ComplexMatrix reduced_pfaffian(const Representation& rho, int i, int j,
                               const Limits& limits = Limits{});

/// Pfaffian suite (even n): operator sum versus the closed scalar on V_rho,
/// the bilinear identity with its fitted constant, the exact rational trace
/// clause, and the exceptional pair split by opposite-sign scalars.
SuiteResult verify_pfaffian(const Workspace& ws, const Limits& limits = Limits{},
                            double tol_base = 1e-9);

/// Centrality of sum_i r^q(e_i, e_i) and agreement with the weighted table
/// trace sum_k m_k^q dim_k / dim_rho for q = 1..q_max.
SuiteResult verify_casimir_traces(const Representation& rho, int q_max = 2,
                                  double tol_base = 1e-9);

/// Spinor specialization for odd n: the Clifford relation with its 2/n
/// constant, the two projector coefficient patterns, the gamma-model form of
/// the Grams, and the polar intertwiner onto the Clifford action.
SuiteResult spinor_suite(int n, const Limits& limits = Limits{}, double tol_base = 1e-9);

/// Exterior-power specialization on Lambda^k: closed forms of the three
/// component Grams over r^1, r^2 with fitted denominators, the wedge/interior
/// identities, the normalization intertwiners, and the projector formulas.
SuiteResult exterior_suite(int n, int k, const Limits& limits = Limits{},
                           double tol_base = 1e-9);

/// Middle-degree chiral split for even n, k = n/2 - 1: the wedge-then-project
/// Hodge formulas reproduce the Pfaffian-split pair projectors and their ranks.
SuiteResult hodge_suite(int n, const Limits& limits = Limits{}, double tol_base = 1e-9);

} // namespace gradkit

#endif
