#ifndef GRADKIT_WEIGHTCALC_HPP
#define GRADKIT_WEIGHTCALC_HPP

#include "gradkit/rational.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace gradkit {

/// Dominant weight of Spin(n) in the standard orthogonal coordinates.
/// Entries are all integers or all half-odd-integers; for odd n the last entry
/// is >= 0, for even n it may be negative with |last| bounded by the one before.
struct DominantWeight {
  int n;
  std::vector<HalfInt> coords;

  DominantWeight(int n_, std::vector<HalfInt> coords_);

  int rank() const { return static_cast<int>(coords.size()); }
  bool half_odd() const { return !coords[0].is_integer(); }
  std::string str() const;

  static bool is_valid(int n, const std::vector<HalfInt>& coords);

  friend bool operator==(const DominantWeight& a, const DominantWeight& b) {
    return a.n == b.n && a.coords == b.coords;
  }
  friend bool operator!=(const DominantWeight& a, const DominantWeight& b) { return !(a == b); }
};

/// Lexicographic descending order used throughout for component tables.
bool lex_greater(const std::vector<HalfInt>& a, const std::vector<HalfInt>& b);

/// Half sum of positive roots: (m-1,...,1,0) for n = 2m, (m-1/2,...,1/2) for n = 2m+1.
std::vector<HalfInt> delta_vector(int n);

/// Casimir scalar -1/2 (|delta+rho|^2 - |delta|^2); 0 on the trivial weight, negative otherwise.
Rational casimir_constant(const DominantWeight& rho);

/// Dimension by the Weyl product formula (exact, returns the integer value).
long long weyl_dimension(const DominantWeight& rho);

enum class ComponentKind { plus_mu, minus_mu, same, merged_pair };

std::string kind_str(ComponentKind kind, int mu_index);

/// One irreducible component of rho (x) R^n.
struct ComponentDescriptor {
  DominantWeight weight;
  ComponentKind kind;
  int mu_index; // 1-based coordinate shifted by +-1; 0 for same/merged
  Rational conformal_weight;
  Rational casimir;
  long long dimension;
  std::optional<int> exceptional_partner; // index of the equal-weight partner column
};

/// Branching table of rho (x) R^n, components sorted by increasing conformal
/// weight; the exceptional pair shares one value with its plus member first.
/// For weights with a non-negative last coordinate this coincides with
/// lexicographic descending order on the component weights.
struct DecompositionTable {
  DominantWeight rho;
  std::vector<ComponentDescriptor> components;
  bool exceptional = false; // even n, rho^{m-1} >= 1, rho^m = 0
  bool merged = false;

  int size() const { return static_cast<int>(components.size()); }

  /// Copy with the exceptional pair fused into a single column (dimensions added).
  /// Identity on non-exceptional tables.
  DecompositionTable merged_table() const;
};

DecompositionTable decompose(const DominantWeight& rho);

/// Exact inverse of the conformal-weight power matrix [m_j^i].
/// Row k gives the coefficients expanding the k-th projector over operator powers.
struct VandermondeCoefficients {
  std::vector<Rational> nodes;
  std::vector<std::vector<Rational>> inverse; // inverse[k][q]
};

/// Requires pairwise distinct conformal weights (merge the exceptional pair first).
VandermondeCoefficients vandermonde_coefficients(const DecompositionTable& table);

/// First-eigenvalue lower bound for the top operator under a curvature floor r > 0.
struct BoundReport {
  DominantWeight rho;
  Rational r;
  Rational m_top;    // conformal weight of the leading component (negative)
  Rational m_bottom; // conformal weight of the last component (positive)
  Rational casimir;
  Rational bound;    // (m_top - m_bottom)/(m_top*m_bottom) * (-2 r casimir)
};

BoundReport eigenvalue_bound(const DominantWeight& rho, const Rational& r);

/// All dominant weights for n with first coordinate <= max_first, both parity
/// classes, lexicographically descending. Deterministic.
std::vector<DominantWeight> enumerate_dominant_weights(int n, HalfInt max_first);

nlohmann::json weight_to_json(const DominantWeight& w);
nlohmann::json table_to_json(const DecompositionTable& table);
nlohmann::json vandermonde_to_json(const VandermondeCoefficients& v);
nlohmann::json bound_to_json(const BoundReport& report);

} // namespace gradkit

#endif
