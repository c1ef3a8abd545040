#include "gradkit/cliffkit.hpp"

#include "gradkit/errors.hpp"
#include "gradkit/exterior.hpp"
#include "gradkit/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace gradkit {

namespace {

using Complex = std::complex<double>;

std::string rep_tag(const Representation& rho) {
  return "n=" + std::to_string(rho.n) + " rho=" + rho.weight.str();
}

std::string component_tag(const ComponentDescriptor& d) {
  return d.weight.str() + " [" + kind_str(d.kind, d.mu_index) + "]";
}

/// Least-squares scalar c minimizing sum_t |data_t - c model_t|_F^2.
struct ScalarFit {
  Complex num{0.0, 0.0};
  double den = 0.0;

  void accumulate(const ComplexMatrix& model, const ComplexMatrix& data) {
    num += model.conjugate().cwiseProduct(data).sum();
    den += model.squaredNorm();
  }
  Complex value() const { return den > 0 ? num / den : Complex(0.0, 0.0); }
};

int uniform_int(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Eigen::VectorXd random_unit_vector(std::mt19937& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u(i) = gauss(rng);
  return u / u.norm();
}

int inversion_count(const std::vector<int>& seq) {
  int inversions = 0;
  for (size_t a = 0; a < seq.size(); ++a)
    for (size_t b = a + 1; b < seq.size(); ++b)
      if (seq[a] > seq[b]) ++inversions;
  return inversions;
}

} // namespace

ComplexMatrix CliffordHom::at(const Eigen::VectorXd& u) const {
  if (static_cast<size_t>(u.size()) != p.size())
    throw std::invalid_argument("vector length does not match the frame size");
  ComplexMatrix out = ComplexMatrix::Zero(p[0].rows(), p[0].cols());
  for (size_t i = 0; i < p.size(); ++i) out += u(static_cast<int>(i)) * p[i];
  return out;
}

Workspace::Workspace(Representation rho_in, const Limits& limits)
    : rho_(std::move(rho_in)),
      trep_(tensor_with_vector(rho_, limits)),
      table_(decompose(rho_.weight)),
      merged_(table_.merged_table()) {
  embeddings_ = split_components(trep_, table_, limits);

  const int n = rho_.n;
  const long long dim = rho_.dim();
  homs_.reserve(embeddings_.size());
  for (const auto& emb : embeddings_) {
    CliffordHom hom{emb.descriptor, {}};
    const long long comp_dim = emb.basis.cols();
    hom.p.assign(n, ComplexMatrix(comp_dim, dim));
    for (int i = 0; i < n; ++i) {
      ComplexMatrix& pi = hom.p[static_cast<size_t>(i)];
      for (long long a = 0; a < dim; ++a)
        for (long long r = 0; r < comp_dim; ++r)
          pi(r, a) = std::conj(emb.basis(a * n + i, r));
    }
    homs_.push_back(std::move(hom));
  }

  // Completeness probe sum_k p_k(u)^* p_k(v) x = <u,v> x on a few seeded
  // samples, via matrix-vector products so the cost stays linear in the size.
  std::mt19937 rng(2026);
  for (int trial = 0; trial < 3; ++trial) {
    const Eigen::VectorXd u = random_unit_vector(rng, n);
    const Eigen::VectorXd v = random_unit_vector(rng, n);
    ComplexVector x(dim);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (long long a = 0; a < dim; ++a) x(a) = Complex(gauss(rng), gauss(rng));
    x /= x.norm();
    ComplexVector acc = ComplexVector::Zero(dim);
    for (const auto& hom : homs_) acc += hom.at(u).adjoint() * (hom.at(v) * x);
    const double defect = (acc - u.dot(v) * x).norm();
    if (defect > 1e-8 * std::sqrt(static_cast<double>(dim)))
      throw IntegrityError("Clifford homomorphism completeness probe failed for " +
                           rep_tag(rho_));
  }

  merged_rows_.assign(merged_.components.size(), {});
  for (int r = 0; r < table_.size(); ++r) {
    bool placed = false;
    for (int c = 0; c < merged_.size(); ++c)
      if (merged_.components[c].conformal_weight == table_.components[r].conformal_weight) {
        merged_rows_[static_cast<size_t>(c)].push_back(r);
        placed = true;
        break;
      }
    if (!placed) throw IntegrityError("unmerged component lost during table merge");
  }

  power_scale_ = 1.0;
  for (const auto& comp : merged_.components)
    power_scale_ = std::max(power_scale_, std::abs(comp.conformal_weight.to_double()));

  gram_cache_.resize(merged_.components.size());
  gram_ready_.assign(merged_.components.size(), false);
}

CliffordHom Workspace::merged_hom(int merged_index) const {
  const auto& rows = merged_rows_.at(static_cast<size_t>(merged_index));
  CliffordHom out{merged_.components[static_cast<size_t>(merged_index)], {}};
  if (rows.size() == 1) {
    out.p = homs_[static_cast<size_t>(rows[0])].p;
    return out;
  }
  const int n = rho_.n;
  const long long dim = rho_.dim();
  long long total = 0;
  for (int r : rows) total += homs_[static_cast<size_t>(r)].p[0].rows();
  out.p.assign(n, ComplexMatrix(total, dim));
  for (int i = 0; i < n; ++i) {
    long long offset = 0;
    for (int r : rows) {
      const ComplexMatrix& part = homs_[static_cast<size_t>(r)].p[static_cast<size_t>(i)];
      out.p[static_cast<size_t>(i)].middleRows(offset, part.rows()) = part;
      offset += part.rows();
    }
  }
  return out;
}

const ComplexMatrix& Workspace::gram_projector(int merged_index) const {
  const auto idx = static_cast<size_t>(merged_index);
  if (!gram_ready_.at(idx)) {
    const long long tdim = trep_.dim();
    ComplexMatrix proj = ComplexMatrix::Zero(tdim, tdim);
    for (int r : merged_rows_[idx]) {
      const ComplexMatrix& basis = embeddings_[static_cast<size_t>(r)].basis;
      proj.noalias() += basis * basis.adjoint();
    }
    gram_cache_[idx] = std::move(proj);
    gram_ready_[idx] = true;
  }
  return gram_cache_[idx];
}

const ComplexMatrix& Workspace::scaled_power(int q) const {
  if (q < 0 || q >= merged_.size())
    throw std::invalid_argument("scaled_power index outside the cached range");
  if (power_cache_.empty())
    power_cache_.push_back(ComplexMatrix::Identity(trep_.dim(), trep_.dim()));
  while (static_cast<int>(power_cache_.size()) <= q) {
    if (power_cache_.size() == 1)
      power_cache_.push_back(trep_.chat / power_scale_);
    else
      power_cache_.push_back(power_cache_.back() * power_cache_[1]);
  }
  return power_cache_[static_cast<size_t>(q)];
}

std::vector<double> Workspace::merged_nodes() const {
  std::vector<double> nodes;
  nodes.reserve(merged_.components.size());
  for (const auto& comp : merged_.components) nodes.push_back(comp.conformal_weight.to_double());
  return nodes;
}

ComplexMatrix rq_entry(const Representation& rho, int q, int i, int j) {
  const int n = rho.n;
  const long long dim = rho.dim();
  if (q < 0) throw std::invalid_argument("negative power in rq_entry");
  if (i < 0 || i >= n || j < 0 || j >= n) throw std::invalid_argument("rq_entry index out of range");
  if (q == 0) {
    if (i == j) return ComplexMatrix::Identity(dim, dim);
    return ComplexMatrix::Zero(dim, dim);
  }
  // Row recursion R_s[l] = sum_{l'} R_{s-1}[l'] (-1/4 pi([e_{l'}, e_l])),
  // seeded with R_1[l] = -1/4 pi([e_i, e_l]); the answer is R_q[j].
  std::vector<ComplexMatrix> row(static_cast<size_t>(n));
  for (int l = 0; l < n; ++l) row[static_cast<size_t>(l)] = -0.25 * rho.gen(i, l);
  for (int step = 2; step <= q; ++step) {
    std::vector<ComplexMatrix> next(static_cast<size_t>(n),
                                    ComplexMatrix::Zero(dim, dim));
    for (int l = 0; l < n; ++l)
      for (int lp = 0; lp < n; ++lp) {
        if (l == lp) continue;
        next[static_cast<size_t>(lp)].noalias() +=
            row[static_cast<size_t>(l)] * (-0.25 * rho.gen(l, lp));
      }
    row = std::move(next);
  }
  return row[static_cast<size_t>(j)];
}

std::complex<double> generalized_casimir_trace(const Representation& rho, int q,
                                               double tol_base) {
  const long long dim = rho.dim();
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < rho.n; ++i) sum += rq_entry(rho, q, i, i);
  const Complex scalar = sum.trace() / static_cast<double>(dim);
  const double defect = (sum - scalar * ComplexMatrix::Identity(dim, dim)).norm();
  const double tol = frobenius_tol(dim, dim, tol_base) * std::max(1.0, std::abs(scalar));
  if (defect > tol)
    throw IntegrityError("generalized Casimir sum is not scalar for " + rep_tag(rho) +
                         " at q=" + std::to_string(q));
  return scalar;
}

SuiteResult verify_moment_identities(const Workspace& ws, int q_max, double tol_base) {
  SuiteResult suite;
  suite.suite = "moments";
  const long long tdim = ws.tensor_dim();
  const int cached = ws.merged().size();
  if (q_max < 0) q_max = 2 * ws.table().size();
  const double s = ws.power_scale();
  const auto nodes = ws.merged_nodes();
  const double tol = frobenius_tol(tdim, tdim, tol_base);

  // Stream (chat/s)^q, reusing the cached powers while they last.
  const ComplexMatrix scaled_chat = ws.trep().chat / s;
  ComplexMatrix beyond;
  for (int q = 0; q <= q_max; ++q) {
    const ComplexMatrix* power = nullptr;
    if (q < cached) {
      power = &ws.scaled_power(q);
    } else {
      if (q == cached) beyond = ws.scaled_power(cached - 1) * scaled_chat;
      else beyond = beyond * scaled_chat;
      power = &beyond;
    }
    ComplexMatrix acc = ComplexMatrix::Zero(tdim, tdim);
    for (int k = 0; k < cached; ++k) {
      double weight = 1.0;
      const double sigma = nodes[static_cast<size_t>(k)] / s;
      for (int e = 0; e < q; ++e) weight *= sigma;
      acc += weight * ws.gram_projector(k);
    }
    suite.add("scaled moment identity", rep_tag(ws.rho()) + " q=" + std::to_string(q),
              (acc - *power).norm(), tol);
  }

  // Contraction -1/4 sum_i p_k(e_i) pi([e_i, e_j]) = m_k p_k(e_j), evaluated
  // literally on the base representation generators for every component.
  const int n = ws.n();
  double worst_contraction = 0.0;
  for (const auto& hom : ws.homs()) {
    const double mk = hom.descriptor.conformal_weight.to_double();
    for (int j = 0; j < n; ++j) {
      ComplexMatrix lhs = ComplexMatrix::Zero(hom.p[0].rows(), hom.p[0].cols());
      for (int i = 0; i < n; ++i) {
        if (i == j) continue;
        lhs.noalias() += hom.p[static_cast<size_t>(i)] * (-0.25 * ws.rho().gen(i, j));
      }
      worst_contraction =
          std::max(worst_contraction, (lhs - mk * hom.p[static_cast<size_t>(j)]).norm());
    }
  }
  suite.add("contraction identity", rep_tag(ws.rho()), worst_contraction,
            frobenius_tol(ws.rho_dim(), tdim, tol_base));

  // Cross-check the eigensolver-free block recursion against the hom moments
  // sum_k m_k^q p_k(e_i)^* p_k(e_j) on small representations.
  if (tdim <= 512) {
    const long long dim = ws.rho_dim();
    double worst = 0.0;
    for (int q = 1; q <= 2; ++q)
      for (auto [i, j] : {std::pair<int, int>{0, 0}, {0, 1}, {1, 0}}) {
        ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
        for (const auto& hom : ws.homs()) {
          double weight = 1.0;
          for (int e = 0; e < q; ++e) weight *= hom.descriptor.conformal_weight.to_double();
          acc += weight * hom.gram(i, j);
        }
        worst = std::max(worst, (acc - rq_entry(ws.rho(), q, i, j)).norm());
      }
    suite.add("block recursion matches hom moments", rep_tag(ws.rho()), worst,
              frobenius_tol(dim, dim, tol_base));
  }
  return suite;
}

SuiteResult verify_equivariance(const Workspace& ws, int samples, unsigned seed,
                                double tol_base) {
  SuiteResult suite;
  suite.suite = "equivariance";
  const int n = ws.n();
  const long long dim = ws.rho_dim();

  suite.add("identity element acts trivially", rep_tag(ws.rho()),
            (group_element(ws.rho(), 0, 1, 0.0) - ComplexMatrix::Identity(dim, dim)).norm(),
            frobenius_tol(dim, dim, tol_base));

  std::vector<double> worst(ws.homs().size(), 0.0);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> angle(0.2, 1.2);
  for (int trial = 0; trial < samples; ++trial) {
    const int a = uniform_int(rng, 0, n - 2);
    const int b = uniform_int(rng, a + 1, n - 1);
    const double t = angle(rng);
    const Eigen::VectorXd u = random_unit_vector(rng, n);

    // exp(t pi_vec([e_a, e_b])) rotates the (a, b) plane by the angle 4t.
    Eigen::VectorXd adu = u;
    adu(a) = std::cos(4 * t) * u(a) - std::sin(4 * t) * u(b);
    adu(b) = std::sin(4 * t) * u(a) + std::cos(4 * t) * u(b);

    const ComplexMatrix g_rho = group_element(ws.rho(), a, b, t);
    const ComplexMatrix big_gen = ws.trep().gen(a, b);
    for (size_t k = 0; k < ws.homs().size(); ++k) {
      const ComplexMatrix& basis = ws.embeddings()[k].basis;
      const ComplexMatrix g_comp = matrix_exp_skew(t * (basis.adjoint() * (big_gen * basis)));
      const auto& hom = ws.homs()[k];
      const double res = (hom.at(adu) - g_comp * hom.at(u) * g_rho.adjoint()).norm();
      worst[k] = std::max(worst[k], res);
    }
  }
  for (size_t k = 0; k < ws.homs().size(); ++k)
    suite.add("equivariance under plane rotations",
              rep_tag(ws.rho()) + " -> " + component_tag(ws.homs()[k].descriptor), worst[k],
              frobenius_tol(ws.homs()[k].p[0].rows(), dim, tol_base));
  return suite;
}

namespace {

ComplexMatrix vandermonde_projector(const Workspace& ws, const VandermondeCoefficients& vc,
                                    int k) {
  const long long tdim = ws.tensor_dim();
  const double s = ws.power_scale();
  ComplexMatrix proj = ComplexMatrix::Zero(tdim, tdim);
  double s_pow = 1.0;
  for (int q = 0; q < ws.merged().size(); ++q) {
    proj += (vc.inverse[static_cast<size_t>(k)][static_cast<size_t>(q)].to_double() * s_pow) *
            ws.scaled_power(q);
    s_pow *= s;
  }
  return proj;
}

/// Assigns eigensolver columns to merged table nodes; every eigenvalue must
/// sit on a node and the cluster sizes must reproduce the table dimensions.
std::vector<std::vector<int>> cluster_spectrum(const Eigen::VectorXd& evals,
                                               const DecompositionTable& merged) {
  std::vector<std::vector<int>> clusters(merged.components.size());
  for (int c = 0; c < evals.size(); ++c) {
    int best = -1;
    double best_dist = 1e300;
    for (int k = 0; k < merged.size(); ++k) {
      const double d =
          std::abs(evals(c) - merged.components[static_cast<size_t>(k)].conformal_weight.to_double());
      if (d < best_dist) {
        best_dist = d;
        best = k;
      }
    }
    if (best_dist > 1e-6)
      throw IntegrityError("tensor Casimir eigenvalue off every table node: " +
                           std::to_string(evals(c)));
    clusters[static_cast<size_t>(best)].push_back(c);
  }
  for (int k = 0; k < merged.size(); ++k)
    if (static_cast<long long>(clusters[static_cast<size_t>(k)].size()) !=
        merged.components[static_cast<size_t>(k)].dimension)
      throw IntegrityError("eigenvalue cluster size disagrees with the branching table");
  return clusters;
}

ComplexMatrix spectral_projector(const ComplexMatrix& evecs, const std::vector<int>& cols) {
  ComplexMatrix basis(evecs.rows(), static_cast<long long>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c) basis.col(static_cast<long long>(c)) = evecs.col(cols[c]);
  return basis * basis.adjoint();
}

} // namespace

ProjectorSet assemble_projectors(const Workspace& ws) {
  ProjectorSet set;
  const auto vc = vandermonde_coefficients(ws.merged());
  auto [evals, evecs] = hermitian_eigensolve(ws.trep().chat);
  const auto clusters = cluster_spectrum(evals, ws.merged());
  for (int k = 0; k < ws.merged().size(); ++k) {
    set.gram.push_back(ws.gram_projector(k));
    set.vandermonde.push_back(vandermonde_projector(ws, vc, k));
    set.spectral.push_back(spectral_projector(evecs, clusters[static_cast<size_t>(k)]));
  }
  return set;
}

SuiteResult verify_projectors(const Workspace& ws, double tol_base) {
  SuiteResult suite;
  suite.suite = "projectors";
  const long long tdim = ws.tensor_dim();
  const int count = ws.merged().size();
  const double tol = frobenius_tol(tdim, tdim, tol_base);
  const std::string tag = rep_tag(ws.rho());

  // Embedding cross Grams B_k^* B_j; with the Gram projectors built as
  // B_k B_k^*, these carry exactly the orthonormality and action content.
  double worst_cross = 0.0;
  const int unmerged = ws.table().size();
  for (int k = 0; k < unmerged; ++k)
    for (int j = 0; j < unmerged; ++j) {
      const ComplexMatrix cross =
          ws.embeddings()[static_cast<size_t>(k)].basis.adjoint() *
          ws.embeddings()[static_cast<size_t>(j)].basis;
      const ComplexMatrix expected =
          k == j ? ComplexMatrix(ComplexMatrix::Identity(cross.rows(), cross.cols()))
                 : ComplexMatrix(ComplexMatrix::Zero(cross.rows(), cross.cols()));
      worst_cross = std::max(worst_cross, (cross - expected).norm());
    }
  suite.add("embedding cross grams", tag, worst_cross, tol);

  double worst_herm = 0.0;
  double worst_trace = 0.0;
  ComplexMatrix total = ComplexMatrix::Zero(tdim, tdim);
  for (int k = 0; k < count; ++k) {
    const ComplexMatrix& proj = ws.gram_projector(k);
    worst_herm = std::max(worst_herm, hermiticity_defect(proj));
    worst_trace = std::max(
        worst_trace,
        std::abs(proj.trace().real() -
                 static_cast<double>(ws.merged().components[static_cast<size_t>(k)].dimension)) +
            std::abs(proj.trace().imag()));
    total += proj;
  }
  suite.add("projectors hermitian", tag, worst_herm, tol);
  suite.add("projector traces equal component dimensions", tag, worst_trace,
            tol_base * static_cast<double>(tdim));
  suite.add("projectors complete", tag,
            (total - ComplexMatrix::Identity(tdim, tdim)).norm(), tol);
  total.resize(0, 0);

  // Route agreement, streamed one component at a time so only the shared
  // caches plus two work matrices are alive at once.
  const auto vc = vandermonde_coefficients(ws.merged());
  auto [evals, evecs] = hermitian_eigensolve(ws.trep().chat);
  const auto clusters = cluster_spectrum(evals, ws.merged());
  double worst_gv = 0.0, worst_gs = 0.0, worst_vs = 0.0;
  double worst_action = 0.0;
  std::mt19937 rng(17);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int k = 0; k < count; ++k) {
    const ComplexMatrix& gram = ws.gram_projector(k);
    {
      const ComplexMatrix vand = vandermonde_projector(ws, vc, k);
      worst_gv = std::max(worst_gv, (gram - vand).norm());
      const ComplexMatrix spec = spectral_projector(evecs, clusters[static_cast<size_t>(k)]);
      worst_gs = std::max(worst_gs, (gram - spec).norm());
      worst_vs = std::max(worst_vs, (vand - spec).norm());

      // Spectral route acting on the embeddings, probed with random vectors.
      for (int j = 0; j < unmerged; ++j) {
        const ComplexMatrix& basis = ws.embeddings()[static_cast<size_t>(j)].basis;
        const bool inside =
            std::find(ws.merged_rows()[static_cast<size_t>(k)].begin(),
                      ws.merged_rows()[static_cast<size_t>(k)].end(),
                      j) != ws.merged_rows()[static_cast<size_t>(k)].end();
        for (int trial = 0; trial < 3; ++trial) {
          ComplexVector y(basis.cols());
          for (long long r = 0; r < y.size(); ++r) y(r) = Complex(gauss(rng), gauss(rng));
          ComplexVector x = basis * y;
          x /= x.norm();
          const ComplexVector image = spec * x;
          worst_action = std::max(worst_action, (image - (inside ? x : ComplexVector(ComplexVector::Zero(tdim)))).norm());
        }
      }
    }
  }
  suite.add("gram and vandermonde routes agree", tag, worst_gv, tol);
  suite.add("gram and spectral routes agree", tag, worst_gs, tol);
  suite.add("vandermonde and spectral routes agree", tag, worst_vs, tol);
  suite.add("spectral projector action on embeddings", tag, worst_action,
            tol_base * std::sqrt(static_cast<double>(tdim)) * 10.0);

  // Literal products are affordable on small tensor spaces; run them there.
  if (tdim <= 512) {
    double worst_idem = 0.0, worst_orth = 0.0;
    for (int k = 0; k < count; ++k)
      for (int j = 0; j < count; ++j) {
        const ComplexMatrix prod = ws.gram_projector(k) * ws.gram_projector(j);
        if (k == j)
          worst_idem = std::max(worst_idem, (prod - ws.gram_projector(k)).norm());
        else
          worst_orth = std::max(worst_orth, prod.norm());
      }
    suite.add("projectors idempotent", tag, worst_idem, tol);
    suite.add("projectors mutually orthogonal", tag, worst_orth, tol);
  }
  return suite;
}

ComplexMatrix reduced_pfaffian(const Representation& rho, int i, int j, const Limits& limits) {
  const int n = rho.n;
  if (n % 2 != 0) throw std::invalid_argument("reduced Pfaffian needs even n");
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("reduced Pfaffian needs two distinct frame indices");
  const int m = n / 2;
  const long long dim = rho.dim();

  std::vector<int> complement;
  for (int c = 0; c < n; ++c)
    if (c != i && c != j) complement.push_back(c);

  double perms = 1.0;
  for (size_t c = 2; c <= complement.size(); ++c) perms *= static_cast<double>(c);
  const double flops = perms * std::max(1, m - 1) * 8.0 * dim * dim * dim;
  if (flops > limits.max_pfaffian_flops)
    throw CapacityError("reduced Pfaffian sum would exceed the flop budget");

  ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
  if (m == 1) return acc; // no factors and no permutations below four indices

  std::vector<int> idx = complement;
  do {
    const int inversions = inversion_count(idx);
    ComplexMatrix prod = rho.gen(idx[0], idx[1]);
    for (int f = 1; f + 1 < m; ++f) prod = prod * rho.gen(idx[2 * f], idx[2 * f + 1]);
    if (inversions % 2 == 0)
      acc += prod;
    else
      acc -= prod;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return acc;
}

SuiteResult verify_pfaffian(const Workspace& ws, const Limits& limits, double tol_base) {
  SuiteResult suite;
  suite.suite = "pfaffian";
  const Representation& rho = ws.rho();
  const int n = rho.n;
  if (n % 2 != 0) throw std::invalid_argument("Pfaffian suite needs even n");
  const int m = n / 2;
  const long long dim = rho.dim();
  const std::string tag = rep_tag(rho);

  // Magnitude yardstick: the closed coefficient with the possibly-zero last
  // factor clamped to one, so residuals stay relative even when p(rho) = 0.
  auto magnitude = [&](const DominantWeight& w) {
    double mag = 1.0;
    for (int f = 0; f < m; ++f) mag *= 8.0;
    for (int f = 2; f <= m; ++f) mag *= f;
    for (int c = 0; c + 1 < m; ++c)
      mag *= std::abs(w.coords[static_cast<size_t>(c)].to_double() + (m - 1 - c));
    mag *= std::max(1.0, std::abs(w.coords[static_cast<size_t>(m - 1)].to_double()));
    return mag;
  };
  const double rho_mag = magnitude(rho.weight);

  // Operator sum versus the closed scalar on V_rho itself.
  {
    const ComplexMatrix pf = pfaffian_element(n, rho.gens, limits);
    const Complex scalar = pfaffian_scalar(rho.weight);
    suite.add("pfaffian element acts as the closed scalar", tag,
              (pf - scalar * ComplexMatrix::Identity(dim, dim)).norm() /
                  (rho_mag * std::sqrt(static_cast<double>(dim))),
              1e-6);
  }

  // Exact rational trace clause sum_k q(lambda_k) dim_k = n q(rho) dim_rho.
  {
    Rational lhs(0);
    for (const auto& comp : ws.table().components)
      lhs += pfaffian_scalar_coeff(comp.weight) * Rational(comp.dimension);
    const Rational rhs = Rational(n) * pfaffian_scalar_coeff(rho.weight) *
                         Rational(static_cast<long long>(dim));
    suite.add("weighted trace clause", tag + " lhs=" + lhs.str() + " rhs=" + rhs.str(),
              lhs == rhs ? 0.0 : std::abs((lhs - rhs).to_double()), 0.0);
  }

  // Bilinear map sum_k p(lambda_k) p_k(e_j)^* p_k(e_i) against the reduced
  // permutation sums, with the global prefactor fitted rather than assumed.
  {
    std::vector<Complex> scalars;
    for (const auto& hom : ws.homs()) scalars.push_back(pfaffian_scalar(hom.descriptor.weight));
    double scale = 1.0;
    for (const auto& hom : ws.homs())
      scale = std::max(scale, magnitude(hom.descriptor.weight));

    auto bilinear = [&](int i, int j) {
      ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
      for (size_t k = 0; k < ws.homs().size(); ++k)
        out += scalars[k] * ws.homs()[k].gram(j, i);
      return out;
    };

    double worst_diag = 0.0;
    const Complex p_rho = pfaffian_scalar(rho.weight);
    for (int i = 0; i < n; ++i)
      worst_diag = std::max(
          worst_diag,
          (bilinear(i, i) - p_rho * ComplexMatrix::Identity(dim, dim)).norm() / scale);
    suite.add("bilinear diagonal is the pfaffian scalar", tag, worst_diag,
              frobenius_tol(dim, dim, tol_base));

    double worst_antisym = 0.0;
    ScalarFit fit;
    double model_size = 0.0;
    double data_size = 0.0;
    std::vector<std::vector<ComplexMatrix>> lhs_cache(static_cast<size_t>(n));
    std::vector<std::vector<ComplexMatrix>> rhs_cache(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const ComplexMatrix lhs = bilinear(i, j);
        if (j > i) worst_antisym = std::max(worst_antisym, (lhs + bilinear(j, i)).norm() / scale);

        std::vector<int> two_line = {i, j};
        for (int c = 0; c < n; ++c)
          if (c != i && c != j) two_line.push_back(c);
        const double sign = inversion_count(two_line) % 2 == 0 ? 1.0 : -1.0;
        const ComplexMatrix model = sign * reduced_pfaffian(rho, i, j, limits);
        fit.accumulate(model, lhs);
        model_size = std::max(model_size, model.norm());
        data_size = std::max(data_size, lhs.norm());
        lhs_cache[static_cast<size_t>(i)].push_back(lhs);
        rhs_cache[static_cast<size_t>(i)].push_back(model);
      }
    suite.add("bilinear antisymmetry off the diagonal", tag, worst_antisym,
              frobenius_tol(dim, dim, tol_base));

    const double vanish = tol_base * scale * static_cast<double>(dim);
    if (model_size <= vanish && data_size <= vanish) {
      suite.note("bilinear identity degenerate, both sides vanish", tag,
                 std::max(model_size, data_size) / scale);
    } else {
      const Complex alpha = fit.value();
      auto& fit_row = suite.add("bilinear prefactor", tag,
                                std::abs(alpha - Complex(8.0 * m, 0.0)) / (8.0 * m), 1e-6);
      fit_row.fitted = alpha.real();
      fit_row.has_fitted = true;
      double worst = 0.0;
      for (int i = 0; i < n; ++i)
        for (size_t c = 0; c < lhs_cache[static_cast<size_t>(i)].size(); ++c)
          worst = std::max(
              worst, (lhs_cache[static_cast<size_t>(i)][c] -
                      (8.0 * m) * rhs_cache[static_cast<size_t>(i)][c]).norm() / scale);
      suite.add("bilinear reduced permutation identity", tag, worst,
                frobenius_tol(dim, dim, tol_base));
    }
  }

  // Exceptional split: the pair members carry opposite nonzero scalars.
  if (ws.exceptional()) {
    int plus_row = -1, minus_row = -1;
    for (int r = 0; r < ws.table().size(); ++r)
      if (ws.table().components[static_cast<size_t>(r)].exceptional_partner) {
        const auto& w = ws.table().components[static_cast<size_t>(r)].weight;
        if (w.coords[static_cast<size_t>(m - 1)] > HalfInt(0))
          plus_row = r;
        else
          minus_row = r;
      }
    if (plus_row < 0 || minus_row < 0)
      throw IntegrityError("exceptional table without a labeled pair");
    for (int r : {plus_row, minus_row}) {
      const auto& emb = ws.embeddings()[static_cast<size_t>(r)];
      const Representation restricted = restrict_to_component(ws.trep(), emb);
      const ComplexMatrix pf = pfaffian_element(n, restricted.gens, limits);
      const Complex expected = pfaffian_scalar(emb.descriptor.weight);
      const double mag = magnitude(emb.descriptor.weight);
      suite.add("restricted pair member pfaffian scalar",
                tag + " -> " + component_tag(emb.descriptor),
                (pf - expected * ComplexMatrix::Identity(pf.rows(), pf.rows())).norm() /
                    (mag * std::sqrt(static_cast<double>(pf.rows()))),
                1e-6);
    }
    const Complex plus_scalar =
        pfaffian_scalar(ws.table().components[static_cast<size_t>(plus_row)].weight);
    const Complex minus_scalar =
        pfaffian_scalar(ws.table().components[static_cast<size_t>(minus_row)].weight);
    suite.add("pair scalars are opposite", tag,
              std::abs(plus_scalar + minus_scalar) / std::abs(plus_scalar), 1e-12);
  }
  return suite;
}

SuiteResult verify_casimir_traces(const Representation& rho, int q_max, double tol_base) {
  SuiteResult suite;
  suite.suite = "casimir_traces";
  const DecompositionTable table = decompose(rho.weight);
  for (int q = 1; q <= q_max; ++q) {
    Rational expected(0);
    for (const auto& comp : table.components)
      expected += Rational::pow(comp.conformal_weight, q) * Rational(comp.dimension);
    expected /= Rational(static_cast<long long>(rho.dim()));
    const Complex got = generalized_casimir_trace(rho, q, tol_base);
    auto& row = suite.add("generalized casimir trace",
                          rep_tag(rho) + " q=" + std::to_string(q) + " expected=" + expected.str(),
                          std::abs(got - Complex(expected.to_double(), 0.0)),
                          tol_base * std::max(1.0, std::abs(expected.to_double())) *
                              std::sqrt(static_cast<double>(rho.dim())));
    row.fitted = got.real();
    row.has_fitted = true;
  }
  return suite;
}

namespace {

/// Polar-aligned match of a hom onto model operators: U p(e_i) ~ c T_i with
/// U unitary; the construction absorbs any phase, so c comes out positive.
struct IntertwinerFit {
  double scale = 0.0;
  double residual = 0.0;
};

IntertwinerFit fit_intertwiner(const std::vector<ComplexMatrix>& targets,
                               const CliffordHom& hom) {
  ComplexMatrix mix = ComplexMatrix::Zero(targets[0].rows(), hom.p[0].rows());
  for (size_t i = 0; i < targets.size(); ++i) mix += targets[i] * hom.p[i].adjoint();
  const ComplexMatrix u = polar_unitary(mix);
  ScalarFit fit;
  for (size_t i = 0; i < targets.size(); ++i) fit.accumulate(targets[i], u * hom.p[i]);
  const Complex c = fit.value();
  double worst = 0.0;
  for (size_t i = 0; i < targets.size(); ++i)
    worst = std::max(worst, (u * hom.p[i] - c * targets[i]).norm());
  return IntertwinerFit{std::abs(c), worst};
}

} // namespace

SuiteResult spinor_suite(int n, const Limits& limits, double tol_base) {
  if (n % 2 == 0) throw std::invalid_argument("spinor suite needs odd n");
  SuiteResult suite;
  suite.suite = "spinor";
  const Workspace ws(standard_rep(n, RepKind::Spinor, 0, limits), limits);
  const Representation& rho = ws.rho();
  const long long dim = rho.dim();
  const double tol = frobenius_tol(dim, dim, tol_base);
  const std::string tag = rep_tag(rho);

  int same_idx = -1, top_idx = -1;
  for (size_t k = 0; k < ws.homs().size(); ++k) {
    if (ws.homs()[k].descriptor.weight == rho.weight)
      same_idx = static_cast<int>(k);
    else
      top_idx = static_cast<int>(k);
  }
  if (same_idx < 0 || top_idx < 0 || ws.homs().size() != 2)
    throw IntegrityError("spinor branching should have exactly a same and a top component");
  const CliffordHom& hg = ws.homs()[static_cast<size_t>(same_idx)];
  const CliffordHom& ht = ws.homs()[static_cast<size_t>(top_idx)];

  double worst_complete = 0.0, worst_weighted = 0.0, worst_same = 0.0, worst_top = 0.0;
  double worst_gamma = 0.0;
  const GammaSet gs = gamma_matrices(n);
  ScalarFit clifford_fit;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const ComplexMatrix gg = hg.gram(i, j);
      const ComplexMatrix gt = ht.gram(i, j);
      const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
      const double delta = i == j ? 1.0 : 0.0;
      const ComplexMatrix gen = rho.gen(i, j);

      worst_complete = std::max(worst_complete, (gt + gg - delta * id).norm());
      worst_weighted = std::max(
          worst_weighted, (-0.5 * gt + 0.5 * (n - 1) * gg + 0.25 * gen).norm());
      worst_same = std::max(worst_same,
                            (gg - (delta / n) * id + (0.5 / n) * gen).norm());
      worst_top = std::max(worst_top,
                           (gt - (delta * (n - 1) / n) * id - (0.5 / n) * gen).norm());
      worst_gamma = std::max(worst_gamma,
                             (gg + (1.0 / n) * gs.gamma[static_cast<size_t>(i)] *
                                       gs.gamma[static_cast<size_t>(j)]).norm());

      const ComplexMatrix sym = gg + hg.gram(j, i);
      clifford_fit.accumulate(delta * id, sym);
    }
  suite.add("two-component completeness on frame pairs", tag, worst_complete, tol);
  suite.add("weighted gram identity", tag, worst_weighted, tol);
  suite.add("same-component gram pattern", tag, worst_same, tol);
  suite.add("top-component gram pattern", tag, worst_top, tol);
  suite.add("gamma model gram", tag, worst_gamma, tol);

  const double c = clifford_fit.value().real();
  double worst_rel = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double delta = i == j ? 1.0 : 0.0;
      worst_rel = std::max(
          worst_rel,
          (hg.gram(i, j) + hg.gram(j, i) - c * delta * ComplexMatrix::Identity(dim, dim)).norm());
    }
  suite.add("clifford relation", tag, worst_rel, tol);
  auto& fit_row = suite.add("clifford constant equals 2/n", tag,
                            std::abs(c - 2.0 / n), 1e-10);
  fit_row.fitted = c;
  fit_row.has_fitted = true;

  const IntertwinerFit align = fit_intertwiner(gs.gamma, hg);
  suite.add("clifford action intertwiner", tag, align.residual,
            frobenius_tol(dim, dim, tol_base * 10));
  auto& scale_row = suite.add("clifford action scale is 1/sqrt(n)", tag,
                              std::abs(align.scale * std::sqrt(static_cast<double>(n)) - 1.0),
                              1e-8);
  scale_row.fitted = align.scale;
  scale_row.has_fitted = true;
  return suite;
}

SuiteResult exterior_suite(int n, int k, const Limits& limits, double tol_base) {
  if (k < 1 || 2 * k >= n)
    throw std::invalid_argument("exterior suite needs 1 <= k and 2k < n");
  SuiteResult suite;
  suite.suite = "exterior";
  const Workspace ws(standard_rep(n, RepKind::Exterior, k, limits), limits);
  const Representation& rho = ws.rho();
  const long long dim = rho.dim();
  const double tol = frobenius_tol(dim, dim, tol_base);
  const std::string tag = rep_tag(rho) + " k=" + std::to_string(k);

  int idx0 = -1, idx1 = -1, idx2 = -1;
  for (int c = 0; c < ws.merged().size(); ++c) {
    const Rational mw = ws.merged().components[static_cast<size_t>(c)].conformal_weight;
    if (mw == Rational(-1)) idx0 = c;
    if (mw == Rational(k)) idx1 = c;
    if (mw == Rational(n - k)) idx2 = c;
  }
  if (idx0 < 0 || idx1 < 0 || idx2 < 0 || ws.merged().size() != 3)
    throw IntegrityError("exterior branching should have conformal weights -1, k, n-k");
  const CliffordHom h0 = ws.merged_hom(idx0);
  const CliffordHom h1 = ws.merged_hom(idx1);
  const CliffordHom h2 = ws.merged_hom(idx2);

  // r^1 and r^2 entries from the eigensolver-free recursion.
  std::vector<std::vector<ComplexMatrix>> r1(static_cast<size_t>(n));
  std::vector<std::vector<ComplexMatrix>> r2(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      r1[static_cast<size_t>(j)].push_back(-0.25 * rho.gen(j, i));
      r2[static_cast<size_t>(j)].push_back(rq_entry(rho, 2, j, i));
    }
  auto R1 = [&](int j, int i) -> const ComplexMatrix& {
    return r1[static_cast<size_t>(j)][static_cast<size_t>(i)];
  };
  auto R2 = [&](int j, int i) -> const ComplexMatrix& {
    return r2[static_cast<size_t>(j)][static_cast<size_t>(i)];
  };

  double worst_anti = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      worst_anti = std::max(
          worst_anti, (R2(j, i) - R2(i, j) - (n - 2.0) * R1(j, i)).norm());
  suite.add("r2 antisymmetrization is (n-2) r1", tag, worst_anti, tol);

  // Closed forms over delta, r^1, r^2 with the denominators fitted.
  struct ClosedForm {
    const CliffordHom* hom;
    double c_delta, c_r1, c_r2;
    double denominator;
    const char* label;
  };
  const std::vector<ClosedForm> forms = {
      {&h0, static_cast<double>(k) * (n - k), -static_cast<double>(n), 1.0,
       static_cast<double>((k + 1) * (n - k + 1)), "lowest component closed form"},
      {&h1, static_cast<double>(n - k), static_cast<double>(n - k - 1), -1.0,
       static_cast<double>((k + 1) * (n - 2 * k)), "wedge component closed form"},
      {&h2, -static_cast<double>(k), -static_cast<double>(k - 1), 1.0,
       static_cast<double>((n - 2 * k) * (n - k + 1)), "interior component closed form"},
  };
  for (const auto& form : forms) {
    ScalarFit fit;
    double worst = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double delta = i == j ? 1.0 : 0.0;
        const ComplexMatrix numerator =
            form.c_delta * delta * ComplexMatrix::Identity(dim, dim) +
            form.c_r1 * R1(j, i) + form.c_r2 * R2(j, i);
        const ComplexMatrix gram = form.hom->gram(j, i);
        fit.accumulate(numerator, gram);
        worst = std::max(worst, (gram - numerator / form.denominator).norm());
      }
    suite.add(form.label, tag, worst, tol);
    const Complex inv = fit.value();
    const double fitted_den = 1.0 / inv.real();
    auto& row = suite.add(std::string(form.label) + " denominator",
                          tag + " expected=" + std::to_string(static_cast<int>(form.denominator)),
                          std::abs(fitted_den - form.denominator) / form.denominator, 1e-8);
    row.fitted = fitted_den;
    row.has_fitted = true;
  }

  // The mixed identities tied to the wedge/interior normalization.
  double worst_mixed = 0.0, worst_asym1 = 0.0, worst_asym2 = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double delta = i == j ? 1.0 : 0.0;
      worst_mixed = std::max(
          worst_mixed,
          ((k + 1.0) * h1.gram(j, i) + (n - k + 1.0) * h2.gram(i, j) -
           delta * ComplexMatrix::Identity(dim, dim)).norm());
      worst_asym1 = std::max(
          worst_asym1, ((k + 1.0) * (h1.gram(j, i) - h1.gram(i, j)) - R1(j, i)).norm());
      worst_asym2 = std::max(
          worst_asym2,
          ((n - k + 1.0) * (h2.gram(j, i) - h2.gram(i, j)) - R1(j, i)).norm());
    }
  suite.add("weighted wedge/interior grams sum to delta", tag, worst_mixed, tol);
  suite.add("wedge gram antisymmetrization is r1", tag, worst_asym1, tol);
  suite.add("interior gram antisymmetrization is r1", tag, worst_asym2, tol);

  // Exterior model wiring: the standard anticommutation identity is asserted;
  // the index-mismatched variant is only reported, it fails off the diagonal.
  const ExteriorModel model(n, k);
  const ExteriorModel model_up(n, k + 1);
  const ExteriorModel model_down(n, k - 1);
  double worst_std = 0.0, worst_variant = 0.0, worst_commutator = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double delta = i == j ? 1.0 : 0.0;
      const ComplexMatrix std_form = model_up.interior(j) * model.wedge(i) +
                                     model_down.wedge(i) * model.interior(j) -
                                     delta * ComplexMatrix::Identity(dim, dim);
      worst_std = std::max(worst_std, std_form.norm());
      const ComplexMatrix variant = model_up.interior(j) * model.wedge(i) +
                                    model_down.wedge(j) * model.interior(i) -
                                    delta * ComplexMatrix::Identity(dim, dim);
      worst_variant = std::max(worst_variant, variant.norm());
      worst_commutator = std::max(
          worst_commutator,
          (model_down.wedge(j) * model.interior(i) - model_down.wedge(i) * model.interior(j) +
           0.25 * model.generator(j, i)).norm());
    }
  suite.add("wedge/interior anticommutation", tag, worst_std, tol);
  suite.note("index-mismatched anticommutation variant", tag, worst_variant);
  suite.add("wedge/interior commutator matches the generator", tag, worst_commutator, tol);

  // Normalizations through polar intertwiners onto the model operators.
  std::vector<ComplexMatrix> wedges, interiors;
  for (int i = 0; i < n; ++i) {
    wedges.push_back(model.wedge(i));
    interiors.push_back(model.interior(i));
  }
  const IntertwinerFit fit1 = fit_intertwiner(wedges, h1);
  suite.add("wedge intertwiner", tag, fit1.residual, frobenius_tol(dim, dim, tol_base * 10));
  auto& s1 = suite.add("wedge scale is 1/sqrt(k+1)", tag,
                       std::abs(fit1.scale * std::sqrt(k + 1.0) - 1.0), 1e-8);
  s1.fitted = fit1.scale;
  s1.has_fitted = true;
  const IntertwinerFit fit2 = fit_intertwiner(interiors, h2);
  suite.add("interior intertwiner", tag, fit2.residual, frobenius_tol(dim, dim, tol_base * 10));
  auto& s2 = suite.add("interior scale is 1/sqrt(n-k+1)", tag,
                       std::abs(fit2.scale * std::sqrt(n - k + 1.0) - 1.0), 1e-8);
  s2.fitted = fit2.scale;
  s2.has_fitted = true;

  // Projector block realizations directly from the model operators.
  double worst_b1 = 0.0, worst_b2 = 0.0, worst_b0 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double delta = i == j ? 1.0 : 0.0;
      const ComplexMatrix block1 = (model_up.interior(i) * model.wedge(j)) / (k + 1.0);
      const ComplexMatrix block2 = (model_down.wedge(i) * model.interior(j)) / (n - k + 1.0);
      const ComplexMatrix block0 =
          delta * ComplexMatrix::Identity(dim, dim) - block1 - block2;
      worst_b1 = std::max(worst_b1, (h1.gram(i, j) - block1).norm());
      worst_b2 = std::max(worst_b2, (h2.gram(i, j) - block2).norm());
      worst_b0 = std::max(worst_b0, (h0.gram(i, j) - block0).norm());
    }
  suite.add("wedge projector blocks", tag, worst_b1, tol);
  suite.add("interior projector blocks", tag, worst_b2, tol);
  suite.add("lowest projector blocks", tag, worst_b0, tol);
  return suite;
}

SuiteResult hodge_suite(int n, const Limits& limits, double tol_base) {
  if (n % 2 != 0 || n < 4)
    throw std::invalid_argument("hodge suite needs even n of at least four");
  SuiteResult suite;
  suite.suite = "hodge";
  const int m = n / 2;
  const int k = m - 1;
  const Workspace ws(standard_rep(n, RepKind::Exterior, k, limits), limits);
  const Representation& rho = ws.rho();
  const long long dim = rho.dim();
  const double tol = frobenius_tol(dim, dim, tol_base);
  const std::string tag = rep_tag(rho);
  if (!ws.exceptional())
    throw IntegrityError("degree n/2 - 1 forms should branch exceptionally");

  const ExteriorModel model(n, k);
  const ExteriorModel model_up(n, m);
  const ComplexMatrix star = model_up.hodge_star();
  const ComplexMatrix id_up = ComplexMatrix::Identity(model_up.dim(), model_up.dim());

  // The middle-degree star squares to (-1)^m; chiral projectors split either
  // the +-1 or the +-i eigenspaces accordingly.
  const double sq_plus = (star * star - id_up).norm();
  const double sq_minus = (star * star + id_up).norm();
  const bool involution = sq_plus < sq_minus;
  suite.add(involution ? "hodge star squares to +1" : "hodge star squares to -1", tag,
            std::min(sq_plus, sq_minus), frobenius_tol(model_up.dim(), model_up.dim(), tol_base));
  const Complex iu(0.0, 1.0);
  const ComplexMatrix q_plus = involution ? ComplexMatrix(0.5 * (id_up + star))
                                          : ComplexMatrix(0.5 * (id_up - iu * star));
  const ComplexMatrix q_minus = involution ? ComplexMatrix(0.5 * (id_up - star))
                                           : ComplexMatrix(0.5 * (id_up + iu * star));
  suite.add("chiral projectors idempotent", tag,
            std::max((q_plus * q_plus - q_plus).norm(), (q_minus * q_minus - q_minus).norm()),
            frobenius_tol(model_up.dim(), model_up.dim(), tol_base));

  // Locate the split pair and its two homs.
  int pair_col = -1;
  for (int c = 0; c < ws.merged().size(); ++c)
    if (ws.merged_rows()[static_cast<size_t>(c)].size() == 2) pair_col = c;
  if (pair_col < 0) throw IntegrityError("no merged pair column in the exceptional table");
  const auto& rows = ws.merged_rows()[static_cast<size_t>(pair_col)];
  const CliffordHom& ha = ws.homs()[static_cast<size_t>(rows[0])];
  const CliffordHom& hb = ws.homs()[static_cast<size_t>(rows[1])];

  auto block = [&](const ComplexMatrix& q, int i, int j) {
    return ComplexMatrix((model_up.interior(i) * (q * model.wedge(j))) / static_cast<double>(m));
  };
  auto pair_residual = [&](const ComplexMatrix& q, const CliffordHom& hom) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        worst = std::max(worst, (block(q, i, j) - hom.gram(i, j)).norm());
    return worst;
  };
  const double paa = pair_residual(q_plus, ha);
  const double pab = pair_residual(q_plus, hb);
  const double pba = pair_residual(q_minus, ha);
  const double pbb = pair_residual(q_minus, hb);

  // The chirality-to-weight pairing is discovered, then asserted as an exact
  // bijection: the matched residuals pass at tolerance, the crossed ones fail.
  const bool direct = paa + pbb <= pab + pba;
  const CliffordHom& plus_hom = direct ? ha : hb;
  const CliffordHom& minus_hom = direct ? hb : ha;
  suite.add("positive chirality blocks match " + component_tag(plus_hom.descriptor), tag,
            direct ? paa : pab, tol);
  suite.add("negative chirality blocks match " + component_tag(minus_hom.descriptor), tag,
            direct ? pbb : pba, tol);
  suite.note("crossed chirality pairing residual", tag, direct ? pab + pba : paa + pbb);
  if (std::min(direct ? pab : paa, direct ? pba : pbb) < 100 * tol)
    throw IntegrityError("chirality pairing is not an unambiguous bijection");

  double trace_plus = 0.0, trace_minus = 0.0;
  for (int i = 0; i < n; ++i) {
    trace_plus += block(q_plus, i, i).trace().real();
    trace_minus += block(q_minus, i, i).trace().real();
  }
  suite.add("positive chirality rank", tag,
            std::abs(trace_plus - static_cast<double>(plus_hom.descriptor.dimension)),
            tol_base * dim * n);
  suite.add("negative chirality rank", tag,
            std::abs(trace_minus - static_cast<double>(minus_hom.descriptor.dimension)),
            tol_base * dim * n);
  return suite;
}

} // namespace gradkit
