#include "gradkit/curvkit.hpp"

#include "gradkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace gradkit {

namespace {

std::string weight_tag(const DominantWeight& w) {
  return "n=" + std::to_string(w.n) + " rho=" + w.str();
}

std::string row_str(const std::vector<Rational>& row) {
  std::string out = "{";
  for (size_t i = 0; i < row.size(); ++i) {
    if (i) out += ", ";
    out += row[i].str();
  }
  return out + "}";
}

/// 0 when the rationals agree, a strictly positive gap otherwise, so an exact
/// comparison row can carry tolerance 0.
double exact_residual(const Rational& got, const Rational& want) {
  if (got == want) return 0.0;
  return std::max(std::abs(got.to_double() - want.to_double()), 1e-6);
}

double exact_row_residual(const std::vector<Rational>& got, const std::vector<Rational>& want) {
  if (got.size() != want.size()) return 1.0;
  double worst = 0.0;
  for (size_t i = 0; i < got.size(); ++i)
    worst = std::max(worst, exact_residual(got[i], want[i]));
  return worst;
}

Eigen::VectorXd random_unit_vector(std::mt19937& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u(i) = gauss(rng);
  return u / u.norm();
}

std::string format_double(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

} // namespace

AlgebraicCurvatureTensor::AlgebraicCurvatureTensor(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("curvature tensor needs n >= 2");
  entries_.assign(static_cast<size_t>(n) * n * n * n, 0.0);
}

AlgebraicCurvatureTensor AlgebraicCurvatureTensor::from_dense(int n, std::vector<double> entries) {
  AlgebraicCurvatureTensor R(n);
  if (entries.size() != R.entries_.size())
    throw std::invalid_argument("dense curvature array has the wrong length");
  R.entries_ = std::move(entries);
  double scale = 1.0;
  for (double e : R.entries_) scale = std::max(scale, std::abs(e));
  const double defect = R.symmetry_defect();
  if (defect > 1e-12 * scale)
    throw IntegrityError("dense curvature array breaks the pair symmetries, defect " +
                         format_double(defect));
  return R;
}

void AlgebraicCurvatureTensor::set(int i, int j, int k, int l, double value) {
  if (i < 0 || j < 0 || k < 0 || l < 0 || i >= n_ || j >= n_ || k >= n_ || l >= n_)
    throw std::invalid_argument("curvature index out of range");
  if (i == j || k == l) {
    if (value != 0.0)
      throw std::invalid_argument("curvature entry with a repeated pair index must be zero");
    return;
  }
  entries_[index(i, j, k, l)] = value;
  entries_[index(j, i, k, l)] = -value;
  entries_[index(i, j, l, k)] = -value;
  entries_[index(j, i, l, k)] = value;
  entries_[index(k, l, i, j)] = value;
  entries_[index(l, k, i, j)] = -value;
  entries_[index(k, l, j, i)] = -value;
  entries_[index(l, k, j, i)] = value;
}

void AlgebraicCurvatureTensor::accumulate(const AlgebraicCurvatureTensor& other, double factor) {
  if (other.n_ != n_) throw std::invalid_argument("curvature tensors live on different dimensions");
  for (size_t t = 0; t < entries_.size(); ++t) entries_[t] += factor * other.entries_[t];
}

Eigen::MatrixXd AlgebraicCurvatureTensor::ricci() const {
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n_, n_);
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < n_; ++k)
      for (int i = 0; i < n_; ++i) ric(j, k) += at(i, j, k, i);
  return ric;
}

double AlgebraicCurvatureTensor::scalar_curvature() const { return ricci().trace(); }

Eigen::MatrixXd AlgebraicCurvatureTensor::operator_form() const {
  const int pairs = n_ * (n_ - 1) / 2;
  Eigen::MatrixXd q(pairs, pairs);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int l = k + 1; l < n_; ++l)
          q(pair_index(n_, i, j), pair_index(n_, k, l)) = at(i, j, l, k);
  return q;
}

double AlgebraicCurvatureTensor::bianchi_defect() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l)
          worst = std::max(worst, std::abs(at(i, j, k, l) + at(j, k, i, l) + at(k, i, j, l)));
  return worst;
}

double AlgebraicCurvatureTensor::symmetry_defect() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) {
          const double v = at(i, j, k, l);
          worst = std::max(worst, std::abs(v + at(j, i, k, l)));
          worst = std::max(worst, std::abs(v + at(i, j, l, k)));
          worst = std::max(worst, std::abs(v - at(k, l, i, j)));
        }
  return worst;
}

void AlgebraicCurvatureTensor::validate(double tol) const {
  double scale = 1.0;
  for (double e : entries_) scale = std::max(scale, std::abs(e));
  const double sym = symmetry_defect();
  if (sym > tol * scale)
    throw IntegrityError("curvature pair symmetries violated, defect " + format_double(sym));
  const double bianchi = bianchi_defect();
  if (bianchi > tol * scale)
    throw IntegrityError("first Bianchi identity violated, defect " + format_double(bianchi));
}

AlgebraicCurvatureTensor constant_curvature(int n, double K) {
  AlgebraicCurvatureTensor R(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) R.set(i, j, j, i, K);
  return R;
}

AlgebraicCurvatureTensor random_positive_curvature(int n, std::uint64_t seed, double tau,
                                                   double K) {
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("perturbation size must be in (0, 1)");
  if (!(K > 0.0)) throw std::invalid_argument("base curvature must be positive");

  // Random symmetric operator on 2-vectors, pushed to a 4-tensor with the
  // pair symmetries.
  const int pairs = n * (n - 1) / 2;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(pairs, pairs);
  for (int a = 0; a < pairs; ++a)
    for (int b = 0; b < pairs; ++b) m(a, b) = gauss(rng);
  m = ((m + m.transpose()) / 2.0).eval();

  AlgebraicCurvatureTensor noise(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l)
          noise.set(i, j, k, l, -m(pair_index(n, i, j), pair_index(n, k, l)));

  // Remove the fully antisymmetric part; the remainder satisfies Bianchi and
  // keeps the pair symmetries, so it is an algebraic curvature tensor.
  AlgebraicCurvatureTensor projected(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          const double cyc =
              (noise.at(i, j, k, l) + noise.at(j, k, i, l) + noise.at(k, i, j, l)) / 3.0;
          projected.set(i, j, k, l, noise.at(i, j, k, l) - cyc);
        }

  AlgebraicCurvatureTensor out = constant_curvature(n, K);
  const Eigen::VectorXd spectrum =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(projected.operator_form(),
                                                     Eigen::EigenvaluesOnly)
          .eigenvalues();
  const double norm = std::max(std::abs(spectrum(0)), std::abs(spectrum(pairs - 1)));
  if (norm > 0.0) out.accumulate(projected, tau * K / norm);
  out.validate();
  return out;
}

double curvature_floor(const AlgebraicCurvatureTensor& R) {
  const Eigen::VectorXd spectrum =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(R.operator_form(), Eigen::EigenvaluesOnly)
          .eigenvalues();
  return spectrum(0) / 2.0;
}

AlgebraicCurvatureTensor curvature_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw std::invalid_argument("curvature json needs an integer field n");
  const int n = j["n"].get<int>();
  if (n < 2) throw std::invalid_argument("curvature tensor needs n >= 2");

  const size_t total = static_cast<size_t>(n) * n * n * n;
  std::vector<double> dense(total, 0.0);
  std::vector<char> written(total, 0);
  auto slot = [n](int a, int b, int c, int d) {
    return static_cast<size_t>(((a * n + b) * n + c) * n + d);
  };
  auto put = [&](int a, int b, int c, int d, double v) {
    const size_t t = slot(a, b, c, d);
    if (written[t] && std::abs(dense[t] - v) > 1e-12 * (1.0 + std::abs(v)))
      throw IntegrityError("conflicting curvature entries at (" + std::to_string(a) + "," +
                           std::to_string(b) + "," + std::to_string(c) + "," + std::to_string(d) +
                           ")");
    dense[t] = v;
    written[t] = 1;
  };

  for (const auto& entry : j.value("entries", nlohmann::json::array())) {
    if (!entry.is_array() || entry.size() != 5)
      throw std::invalid_argument("curvature entry must be [i, j, k, l, value]");
    for (int p = 0; p < 4; ++p)
      if (!entry[p].is_number_integer())
        throw std::invalid_argument("curvature entry indices must be integers");
    if (!entry[4].is_number()) throw std::invalid_argument("curvature entry value must be a number");
    const int a = entry[0].get<int>(), b = entry[1].get<int>();
    const int c = entry[2].get<int>(), d = entry[3].get<int>();
    const double v = entry[4].get<double>();
    if (a < 0 || b < 0 || c < 0 || d < 0 || a >= n || b >= n || c >= n || d >= n)
      throw std::invalid_argument("curvature entry index out of range");
    if (a == b || c == d) {
      if (v != 0.0)
        throw std::invalid_argument("curvature entry with a repeated pair index must be zero");
      continue;
    }
    put(a, b, c, d, v);
    put(b, a, c, d, -v);
    put(a, b, d, c, -v);
    put(b, a, d, c, v);
    put(c, d, a, b, v);
    put(d, c, a, b, -v);
    put(c, d, b, a, -v);
    put(d, c, b, a, v);
  }

  AlgebraicCurvatureTensor R = AlgebraicCurvatureTensor::from_dense(n, std::move(dense));
  R.validate();
  return R;
}

nlohmann::json curvature_to_json(const AlgebraicCurvatureTensor& R, double prune_below) {
  const int n = R.n();
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          if (pair_index(n, i, j) > pair_index(n, k, l)) continue;
          const double v = R.at(i, j, k, l);
          if (std::abs(v) <= prune_below) continue;
          entries.push_back(nlohmann::json::array({i, j, k, l, v}));
        }
  return nlohmann::json{{"n", n}, {"entries", std::move(entries)}};
}

CurvatureTransform curvature_transform(const Representation& rho,
                                       const AlgebraicCurvatureTensor& R) {
  if (rho.n != R.n())
    throw std::invalid_argument("curvature tensor and representation disagree on n");
  R.validate();

  const int n = rho.n;
  const int d = rho.dim();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  ComplexMatrix slice(d, d);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      slice.setZero();
      bool any = false;
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          const double c = R.at(i, j, k, l);
          if (c == 0.0) continue;
          slice.noalias() += c * rho.gen_at(k, l);
          any = true;
        }
      if (any) out.noalias() += rho.gen_at(i, j) * slice;
    }
  out /= 16.0;

  const double herm = hermiticity_defect(out);
  if (herm > 1e-10 * std::max(1.0, out.norm()))
    throw IntegrityError("curvature transform is not Hermitian, defect " + format_double(herm));
  return CurvatureTransform{rho.weight, ComplexMatrix((out + out.adjoint()) / 2.0)};
}

SuiteResult verify_constant_curvature(const Representation& rho, double K, double tol_base) {
  SuiteResult suite;
  suite.suite = "constant curvature transform " + weight_tag(rho.weight);

  const CurvatureTransform t = curvature_transform(rho, constant_curvature(rho.n, K));
  const double expected = -2.0 * K * casimir_constant(rho.weight).to_double();
  const int d = rho.dim();
  const double residual =
      (t.matrix - expected * ComplexMatrix::Identity(d, d)).norm();
  auto& row = suite.add("constant curvature transform equals the casimir scalar",
                        weight_tag(rho.weight) + " K=" + format_double(K), residual,
                        tol_base * d * std::max(1.0, std::abs(expected)));
  row.fitted = expected;
  row.has_fitted = true;
  return suite;
}

SuiteResult verify_curvature_bound(const Representation& rho, const AlgebraicCurvatureTensor& R,
                                   double r, int plane_samples, unsigned seed, double tol_base) {
  if (rho.n != R.n())
    throw std::invalid_argument("curvature tensor and representation disagree on n");
  R.validate();

  // Precondition: the sectional pairing dominates 2r on every probed 2-plane.
  const Eigen::MatrixXd q = R.operator_form();
  double min_probe = q.diagonal().minCoeff();
  std::mt19937 rng(seed);
  const int n = rho.n;
  for (int s = 0; s < plane_samples; ++s) {
    const Eigen::VectorXd u = random_unit_vector(rng, n);
    Eigen::VectorXd v = random_unit_vector(rng, n);
    v -= v.dot(u) * u;
    if (v.norm() < 1e-6) {
      --s;
      continue;
    }
    v /= v.norm();
    Eigen::VectorXd plane(n * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        plane(pair_index(n, i, j)) = u(i) * v(j) - u(j) * v(i);
    min_probe = std::min(min_probe, plane.dot(q * plane));
  }
  if (min_probe < 2.0 * r - 1e-9 * (1.0 + std::abs(2.0 * r)))
    throw IntegrityError("sectional floor precondition violated: probed pairing " +
                         format_double(min_probe) + " below 2r = " + format_double(2.0 * r));

  SuiteResult suite;
  suite.suite = "curvature bound " + weight_tag(rho.weight);
  const std::string params = weight_tag(rho.weight) + " r=" + format_double(r);

  const CurvatureTransform t = curvature_transform(rho, R);
  const Eigen::VectorXd eigs = hermitian_eigenvalues(t.matrix);
  const double bound = -2.0 * r * casimir_constant(rho.weight).to_double();
  suite.add("curvature transform dominates the casimir bound", params,
            std::max(0.0, bound - eigs(0)),
            tol_base * rho.dim() * std::max(1.0, std::abs(bound)));
  suite.note("curvature bound slack", params, eigs(0) - bound);
  suite.note("sectional floor margin", params, min_probe - 2.0 * r);
  return suite;
}

BochnerCoefficients bochner_report(const DominantWeight& rho) {
  DecompositionTable merged = decompose(rho).merged_table();
  if (merged.size() < 2)
    throw std::invalid_argument("bochner report needs at least two components");

  const VandermondeCoefficients vdm = vandermonde_coefficients(merged);
  BochnerCoefficients out{std::move(merged), {}, {}, {}, vdm.inverse};
  const int count = out.table.size();
  out.laplacian_row.assign(static_cast<size_t>(count), Rational(1));
  out.weighted_row.reserve(static_cast<size_t>(count));
  for (const auto& comp : out.table.components) out.weighted_row.push_back(comp.conformal_weight);

  const Rational m0 = out.weighted_row.front();
  for (int k = 1; k < count; ++k) {
    const Rational h = Rational(1) - out.weighted_row[static_cast<size_t>(k)] / m0;
    if (!(h > Rational(0)))
      throw IntegrityError("hatted coefficient is not positive for " + weight_tag(rho));
    out.hatted.push_back(h);
  }
  return out;
}

SuiteResult verify_bochner(const DominantWeight& rho) {
  SuiteResult suite;
  suite.suite = "bochner coefficients " + weight_tag(rho);
  const std::string tag = weight_tag(rho);

  const BochnerCoefficients bc = bochner_report(rho);
  const int count = bc.table.size();
  const auto& m = bc.weighted_row;

  // The explicit rows undo the conformal weight moments.
  double worst = 0.0;
  for (int k = 0; k < count; ++k)
    for (int j = 0; j < count; ++j) {
      Rational acc(0);
      for (int q = 0; q < count; ++q)
        acc += bc.explicit_rows[static_cast<size_t>(k)][static_cast<size_t>(q)] *
               Rational::pow(m[static_cast<size_t>(j)], q);
      worst = std::max(worst, exact_residual(acc, Rational(k == j ? 1 : 0)));
    }
  suite.add("explicit rows invert the conformal weight moments", tag, worst, 0.0);

  double min_hatted = bc.hatted.front().to_double();
  bool all_positive = true;
  for (const auto& h : bc.hatted) {
    min_hatted = std::min(min_hatted, h.to_double());
    if (!(h > Rational(0))) all_positive = false;
  }
  auto& hat_row = suite.add("hatted factors are positive", tag, all_positive ? 0.0 : 1.0, 0.0);
  hat_row.fitted = min_hatted;
  hat_row.has_fitted = true;

  // Eliminating the top component leaves the Laplacian plus the curvature
  // term scaled by -1/m_0.
  const Rational m0 = m.front();
  std::vector<Rational> eliminated(static_cast<size_t>(count), Rational(0));
  for (int q = 0; q < count; ++q) {
    Rational acc(0);
    for (int k = 1; k < count; ++k)
      acc += bc.hatted[static_cast<size_t>(k - 1)] *
             bc.explicit_rows[static_cast<size_t>(k)][static_cast<size_t>(q)];
    eliminated[static_cast<size_t>(q)] = acc;
  }
  std::vector<Rational> expected_elim(static_cast<size_t>(count), Rational(0));
  expected_elim[0] = Rational(1);
  expected_elim[1] = Rational(-1) / m0;
  suite.add("eliminated top row is the laplacian plus scaled curvature",
            tag + " want " + row_str(expected_elim), exact_row_residual(eliminated, expected_elim),
            0.0);

  // Spinor weight: recover the Dirac and twistor second order identities.
  bool spinor_shape = true;
  for (const auto& c : rho.coords)
    if (c.abs() != HalfInt::half()) spinor_shape = false;
  if (spinor_shape && count == 2) {
    const long long nn = rho.n;
    const Rational scale_d(nn);
    std::vector<Rational> dirac_row;
    for (int q = 0; q < count; ++q)
      dirac_row.push_back(scale_d * bc.explicit_rows[1][static_cast<size_t>(q)]);
    suite.add("dirac square identity coefficients", tag + " want {1, 2}",
              exact_row_residual(dirac_row, {Rational(1), Rational(2)}), 0.0);

    // Scalar of the curvature transform per unit scalar curvature, from the
    // Casimir normalization; 1/8 on every spinor weight.
    const Rational kappa_unit =
        Rational(-2) * casimir_constant(rho) / Rational(nn * (nn - 1));
    suite.add("spinor curvature transform per unit scalar curvature", tag + " want 1/8",
              exact_residual(kappa_unit, Rational(1, 8)), 0.0);

    const Rational dirac_kappa = dirac_row[1] * kappa_unit;
    auto& dk_row = suite.add("dirac square scalar curvature coefficient", tag + " want 1/4",
                             exact_residual(dirac_kappa, Rational(1, 4)), 0.0);
    dk_row.fitted = dirac_kappa.to_double();
    dk_row.has_fitted = true;

    const Rational scale_t = Rational(nn) / Rational(nn - 1);
    std::vector<Rational> twistor_row;
    for (int q = 0; q < count; ++q)
      twistor_row.push_back(scale_t * bc.explicit_rows[0][static_cast<size_t>(q)]);
    suite.add("twistor identity coefficients", tag + " want {1, -2/(n-1)}",
              exact_row_residual(twistor_row, {Rational(1), Rational(-2, nn - 1)}), 0.0);

    const Rational twistor_kappa = twistor_row[1] * kappa_unit;
    auto& tk_row = suite.add("twistor scalar curvature coefficient",
                             tag + " want -1/(4(n-1))",
                             exact_residual(twistor_kappa, Rational(-1, 4 * (nn - 1))), 0.0);
    tk_row.fitted = twistor_kappa.to_double();
    tk_row.has_fitted = true;
  }

  // Fundamental form weight (1,...,1,0,...,0): the exterior derivative,
  // codifferential, and conformal killing triple.
  bool form_shape = !rho.coords.empty() && rho.coords[0].is_integer();
  int ones = 0;
  bool seen_zero = false;
  for (const auto& c : rho.coords) {
    if (c == HalfInt(1) && !seen_zero) {
      ++ones;
    } else if (c == HalfInt(0)) {
      seen_zero = true;
    } else {
      form_shape = false;
    }
  }
  const int k_deg = ones;
  if (form_shape && ones >= 1 && 2 * k_deg < rho.n && count == 3) {
    const long long nn = rho.n;
    const std::vector<Rational> scales = {Rational(1), Rational(k_deg + 1),
                                          Rational(nn - k_deg + 1)};
    // Columns located by conformal weight: -1, k, n - k.
    const std::vector<Rational> nodes = {Rational(-1), Rational(k_deg), Rational(nn - k_deg)};
    std::vector<int> cols;
    for (const auto& node : nodes) {
      int found = -1;
      for (int c = 0; c < count; ++c)
        if (m[static_cast<size_t>(c)] == node) found = c;
      if (found < 0) throw IntegrityError("form decomposition misses conformal weight " + node.str());
      cols.push_back(found);
    }

    const std::vector<std::vector<Rational>> frozen = {
        {Rational(1), Rational(1, k_deg + 1), Rational(1, nn - k_deg + 1)},
        {Rational(-1), Rational(k_deg, k_deg + 1), Rational(nn - k_deg, nn - k_deg + 1)},
        {Rational(1), Rational(static_cast<long long>(k_deg) * k_deg, k_deg + 1),
         Rational((nn - k_deg) * (nn - k_deg), nn - k_deg + 1)}};
    const std::vector<std::string> labels = {"form laplacian identity coefficients",
                                             "form curvature identity coefficients",
                                             "form second order identity coefficients"};
    for (int q = 0; q <= 2; ++q) {
      std::vector<Rational> derived;
      for (size_t s = 0; s < cols.size(); ++s)
        derived.push_back(Rational::pow(m[static_cast<size_t>(cols[s])], q) / scales[s]);
      suite.add(labels[static_cast<size_t>(q)],
                tag + " k=" + std::to_string(k_deg) + " want " + row_str(frozen[static_cast<size_t>(q)]),
                exact_row_residual(derived, frozen[static_cast<size_t>(q)]), 0.0);
    }
  }

  // n = 4 pair weight (k, k): the two-component identities of the
  // anti-self-dual setup.
  if (rho.n == 4 && rho.coords[0] == rho.coords[1] && rho.coords[0] > HalfInt(0) && count == 2) {
    const Rational kk = rho.coords[0].to_rational();
    suite.add("selfdual pair moment coefficients",
              tag + " want {-k, k+1}",
              exact_row_residual(m, {-kk, kk + Rational(1)}), 0.0);
    suite.add("selfdual pair hatted factor", tag + " want (2k+1)/k",
              exact_residual(bc.hatted[0], (Rational(2) * kk + Rational(1)) / kk), 0.0);

    // Constant curvature scalar against the anti-self-dual claim
    // k(k+1) kappa / 6; the ratio is recorded, not asserted.
    const Rational computed = Rational(-2) * casimir_constant(rho); // per unit K
    const Rational claimed = kk * (kk + Rational(1)) * Rational(4 * 3, 6); // kappa = 12K
    suite.note("anti self dual curvature scalar convention factor", tag,
               (computed / claimed).to_double());
  }

  return suite;
}

SymbolReport dirac_symbols(const Workspace& ws, const Eigen::VectorXd& xi) {
  if (xi.size() != ws.n()) throw std::invalid_argument("covector length does not match n");
  if (xi.norm() == 0.0) throw std::invalid_argument("symbol covector must be nonzero");

  SymbolReport report{xi, {}, {}};
  const int count = ws.merged().size();
  report.symbols.reserve(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) report.symbols.push_back(ws.merged_hom(k).at(xi));

  if (count >= 2) {
    const auto& comps = ws.merged().components;
    const Rational m0 = comps[0].conformal_weight;
    const int d = static_cast<int>(ws.rho_dim());
    report.laplace_symbol = ComplexMatrix::Zero(d, d);
    for (int k = 1; k < count; ++k) {
      const double h = (Rational(1) - comps[static_cast<size_t>(k)].conformal_weight / m0).to_double();
      report.laplace_symbol.noalias() +=
          h * (report.symbols[static_cast<size_t>(k)].adjoint() *
               report.symbols[static_cast<size_t>(k)]);
    }
  }
  return report;
}

SuiteResult verify_symbols(const Workspace& ws, int samples, unsigned seed, double tol_base) {
  SuiteResult suite;
  suite.suite = "principal symbols " + weight_tag(ws.rho().weight);
  const std::string tag = weight_tag(ws.rho().weight) + " samples=" + std::to_string(samples);

  const int n = ws.n();
  const int d = static_cast<int>(ws.rho_dim());
  const int count = ws.merged().size();

  // Map every unmerged component onto its merged column and hatted factor.
  std::vector<int> column_of(ws.homs().size(), 0);
  for (int c = 0; c < count; ++c)
    for (int row : ws.merged_rows()[static_cast<size_t>(c)])
      column_of[static_cast<size_t>(row)] = c;
  std::vector<double> hatted(static_cast<size_t>(count), 0.0);
  if (count >= 2) {
    const auto& comps = ws.merged().components;
    for (int c = 1; c < count; ++c)
      hatted[static_cast<size_t>(c)] =
          (Rational(1) - comps[static_cast<size_t>(c)].conformal_weight / comps[0].conformal_weight)
              .to_double();
  }

  std::mt19937 rng(seed);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  double worst_complete = 0.0;
  double worst_laplace = 0.0;
  ComplexMatrix total(d, d), laplace(d, d), gram(d, d);
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd xi = random_unit_vector(rng, n);
    total.setZero();
    laplace.setZero();
    for (size_t r = 0; r < ws.homs().size(); ++r) {
      const ComplexMatrix p_xi = ws.homs()[r].at(xi);
      gram.noalias() = p_xi.adjoint() * p_xi;
      total += gram;
      if (count >= 2 && column_of[r] >= 1) laplace += hatted[static_cast<size_t>(column_of[r])] * gram;
    }
    worst_complete = std::max(worst_complete, (total - id).norm());
    if (count >= 2) worst_laplace = std::max(worst_laplace, (laplace - id).norm());
  }

  suite.add("symbol completeness", tag, worst_complete, tol_base * d);
  if (count >= 2)
    suite.add("laplace symbol is the unit matrix", tag, worst_laplace, tol_base * d);
  else
    suite.note("laplace symbol skipped on a single component table", tag, 0.0);
  return suite;
}

} // namespace gradkit
