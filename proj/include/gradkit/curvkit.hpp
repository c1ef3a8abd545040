#ifndef GRADKIT_CURVKIT_HPP
#define GRADKIT_CURVKIT_HPP

#include "gradkit/cliffkit.hpp"
#include "gradkit/report.hpp"
#include "gradkit/repforge.hpp"
#include "gradkit/weightcalc.hpp"

#include <json.hpp>

#include <cstdint>
#include <vector>

namespace gradkit {

/// Algebraic curvature tensor on R^n: dense entries R_{ijkl} = <R(e_i,e_j)e_k, e_l>
/// with the pair antisymmetries, pair exchange symmetry, and the first Bianchi
/// identity. Normalized so the constant curvature model has sectional value K:
/// R_{ijji} = K for i != j.
class AlgebraicCurvatureTensor {
public:
  /// Zero tensor.
  explicit AlgebraicCurvatureTensor(int n);

  /// Adopts a dense row-major n^4 array; rejects broken pair symmetries
  /// (Bianchi is not checked here, see validate()).
  static AlgebraicCurvatureTensor from_dense(int n, std::vector<double> entries);

  int n() const { return n_; }
  double at(int i, int j, int k, int l) const { return entries_[index(i, j, k, l)]; }

  /// Writes the full 8-element symmetry orbit of (i,j,k,l); value must be 0
  /// when i == j or k == l.
  void set(int i, int j, int k, int l, double value);

  /// Entrywise *this += factor * other.
  void accumulate(const AlgebraicCurvatureTensor& other, double factor);

  /// Sectional value <R(e_i,e_j)e_j, e_i> of the coordinate 2-plane, i != j.
  double sectional(int i, int j) const { return at(i, j, j, i); }

  /// Ric_{jk} = sum_i R_{ijki}.
  Eigen::MatrixXd ricci() const;
  double scalar_curvature() const;

  /// Symmetric matrix of the tensor acting on 2-vectors, basis e_i ^ e_j with
  /// i < j in pair_index order; the identity for the constant curvature model
  /// with K = 1. Quadratic form at u ^ v equals <R(u,v)v, u>.
  Eigen::MatrixXd operator_form() const;

  /// Worst violation of R_{ijkl}+R_{jkil}+R_{kijl} = 0 over all index tuples.
  double bianchi_defect() const;
  /// Worst violation of the pair antisymmetries and the exchange symmetry.
  double symmetry_defect() const;

  /// Throws IntegrityError when either defect exceeds tol.
  void validate(double tol = 1e-12) const;

private:
  size_t index(int i, int j, int k, int l) const {
    return static_cast<size_t>(((i * n_ + j) * n_ + k) * n_ + l);
  }

  int n_;
  std::vector<double> entries_;
};

/// R_{ijkl} = K (delta_{il} delta_{jk} - delta_{ik} delta_{jl}); every
/// sectional value is K and the operator form is K times the identity.
AlgebraicCurvatureTensor constant_curvature(int n, double K);

/// Seeded tensor with a certified positive curvature operator: a Bianchi
/// projected random perturbation of the constant curvature model, scaled so
/// the operator spectrum stays within K*[1-tau, 1+tau].
AlgebraicCurvatureTensor random_positive_curvature(int n, std::uint64_t seed,
                                                   double tau = 0.3, double K = 2.0);

/// Half the smallest eigenvalue of the operator form: the largest r for which
/// the sectional pairing provably dominates 2r on every 2-plane. Positive
/// exactly when the curvature operator is positive definite.
double curvature_floor(const AlgebraicCurvatureTensor& R);

/// Parses {"n": ..., "entries": [[i,j,k,l,value], ...]} with symmetry
/// completion; conflicting orbit values or a Bianchi violation are rejected.
AlgebraicCurvatureTensor curvature_from_json(const nlohmann::json& j);
nlohmann::json curvature_to_json(const AlgebraicCurvatureTensor& R, double prune_below = 0.0);

/// Zeroth order curvature action on V_rho: (1/16) sum over unordered pairs
/// (i<j), (k<l) of R_{ijkl} pi([e_i,e_j]) pi([e_k,e_l]); Hermitian, linear in
/// the tensor, and -2Kc(rho) times the identity at constant curvature K.
struct CurvatureTransform {
  DominantWeight weight;
  ComplexMatrix matrix;
};

/// Rejects tensors with broken symmetries; checks the assembled matrix is
/// Hermitian to roundoff and returns the symmetrized result.
CurvatureTransform curvature_transform(const Representation& rho,
                                       const AlgebraicCurvatureTensor& R);

/// Constant curvature specialization: the transform equals the Casimir scalar
/// -2Kc(rho) times the identity (scalar curvature over 8 on spinors, Ricci on
/// the vector representation).
SuiteResult verify_constant_curvature(const Representation& rho, double K = 1.0,
                                      double tol_base = 1e-9);

/// Lower bound of the curvature transform under a sectional floor: probes the
/// floor <R(u,v)v,u> >= 2r on coordinate and seeded orthonormal 2-planes
/// (IntegrityError when the input violates it; distinct from a bound failure),
/// then asserts every eigenvalue of the transform is >= -2rc(rho). The slack
/// of the bound is reported; the constant curvature model K = 2r sits a factor
/// 2 above it.
SuiteResult verify_curvature_bound(const Representation& rho,
                                   const AlgebraicCurvatureTensor& R, double r,
                                   int plane_samples = 32, unsigned seed = 5,
                                   double tol_base = 1e-9);

/// Exact coefficient rows tying the component second order operators to the
/// connection Laplacian and the curvature powers. Rows are indexed by the
/// merged branching table (the equal-weight pair counts as one column).
struct BochnerCoefficients {
  DecompositionTable table;                         // merged
  std::vector<Rational> laplacian_row;              // all ones
  std::vector<Rational> weighted_row;               // conformal weights, ascending
  std::vector<Rational> hatted;                     // 1 - m_k/m_0 for k >= 1
  std::vector<std::vector<Rational>> explicit_rows; // explicit_rows[k][q]
};

/// Requires at least two merged components. explicit_rows invert the
/// conformal weight power system exactly; hatted factors are all positive.
BochnerCoefficients bochner_report(const DominantWeight& rho);

/// Exact rational checks on the coefficient rows: the inversion property, the
/// positivity of the hatted factors, the eliminated-top-row identity, and the
/// classical specializations the weight shape admits (Dirac and twistor
/// coefficients on the spinor weight, the differential form triple on a
/// fundamental form weight, the two-component identities on the n = 4 pair
/// weights with the convention factor of the anti-self-dual scalar reported).
SuiteResult verify_bochner(const DominantWeight& rho);

/// Principal symbol data of the gradient family at a covector xi.
struct SymbolReport {
  Eigen::VectorXd xi;
  std::vector<ComplexMatrix> symbols; // p_k(xi), one per merged component
  ComplexMatrix laplace_symbol;       // sum_{k>=1} hatted_k p_k(xi)* p_k(xi); empty below 2 components
};

SymbolReport dirac_symbols(const Workspace& ws, const Eigen::VectorXd& xi);

/// Symbol completeness sum_k p_k(xi)* p_k(xi) = |xi|^2 Id and the elliptic
/// Laplace symbol identity on seeded unit covectors.
SuiteResult verify_symbols(const Workspace& ws, int samples = 50, unsigned seed = 17,
                           double tol_base = 1e-9);

} // namespace gradkit

#endif
