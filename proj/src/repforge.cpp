#include "gradkit/repforge.hpp"

#include "gradkit/errors.hpp"
#include "gradkit/exterior.hpp"
#include "gradkit/gamma.hpp"

#include <json.hpp>

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <utility>

namespace gradkit {

namespace fs = std::filesystem;
using json = nlohmann::json;

int pair_index(int n, int k, int l) {
  if (k < 0 || l <= k || l >= n) throw std::invalid_argument("pair_index needs 0 <= k < l < n");
  return k * (2 * n - k - 1) / 2 + (l - k - 1);
}

Representation::Representation(int n_, DominantWeight weight_, std::vector<ComplexMatrix> gens_)
    : n(n_), weight(std::move(weight_)), gens(std::move(gens_)) {
  if (n < 3) throw std::invalid_argument("representation needs n >= 3");
  if (static_cast<int>(gens.size()) != n * (n - 1) / 2)
    throw std::invalid_argument("representation needs one generator per coordinate pair");
  if (weight.n != n) throw std::invalid_argument("weight is for a different n");
}

const ComplexMatrix& Representation::gen_at(int k, int l) const {
  return gens[static_cast<size_t>(pair_index(n, k, l))];
}

ComplexMatrix Representation::gen(int k, int l) const {
  if (k == l) return ComplexMatrix::Zero(dim(), dim());
  if (k < l) return gen_at(k, l);
  return -gen_at(l, k);
}

ComplexMatrix Representation::casimir_matrix() const {
  const int d = dim();
  ComplexMatrix c = ComplexMatrix::Zero(d, d);
  for (const auto& g : gens) c += g * g;
  return c / 32.0;
}

double Representation::casimir_probe_defect(int samples, std::uint64_t seed) const {
  const int d = dim();
  const double c = casimir_constant(weight).to_double();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    ComplexVector v(d);
    for (int i = 0; i < d; ++i) v(i) = std::complex<double>(dist(rng), dist(rng));
    v /= v.norm();
    ComplexVector acc = ComplexVector::Zero(d);
    for (const auto& g : gens) acc += g * (g * v);
    worst = std::max(worst, (acc / 32.0 - c * v).norm());
  }
  return worst;
}

namespace {

/// pi_vec([e_k, e_l]) = -4 E_kl + 4 E_lk, the so(n) action normalized to the
/// Clifford commutator.
ComplexMatrix vector_generator(int n, int k, int l) {
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  a(k, l) = -4.0;
  a(l, k) = 4.0;
  return a;
}

DominantWeight weight_of_kind(int n, RepKind kind, int k) {
  const int m = n / 2;
  std::vector<HalfInt> coords(m, HalfInt(0));
  switch (kind) {
    case RepKind::Trivial:
      break;
    case RepKind::Vector:
      coords[0] = HalfInt(1);
      break;
    case RepKind::Spinor:
    case RepKind::SpinorPlus:
      std::fill(coords.begin(), coords.end(), HalfInt::half());
      break;
    case RepKind::SpinorMinus:
      std::fill(coords.begin(), coords.end(), HalfInt::half());
      coords[m - 1] = -HalfInt::half();
      break;
    case RepKind::Exterior:
      for (int i = 0; i < k; ++i) coords[i] = HalfInt(1);
      break;
  }
  return DominantWeight(n, coords);
}

} // namespace

Representation standard_rep(int n, RepKind kind, int k, const Limits& limits) {
  if (n < 3) throw std::invalid_argument("standard_rep needs n >= 3");
  if (n > limits.max_n) throw CapacityError("n exceeds the configured limit");
  const int pairs = n * (n - 1) / 2;
  std::vector<ComplexMatrix> gens;
  gens.reserve(pairs);

  switch (kind) {
    case RepKind::Trivial: {
      for (int i = 0; i < pairs; ++i) gens.push_back(ComplexMatrix::Zero(1, 1));
      break;
    }
    case RepKind::Vector: {
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) gens.push_back(vector_generator(n, a, b));
      break;
    }
    case RepKind::Spinor: {
      if (n % 2 == 0) throw std::invalid_argument("plain spinor rep needs odd n");
      GammaSet gs = gamma_matrices(n, limits.max_n);
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) gens.push_back(gs.bracket(a, b));
      break;
    }
    case RepKind::SpinorPlus:
    case RepKind::SpinorMinus: {
      if (n % 2 != 0) throw std::invalid_argument("half-spin reps need even n");
      GammaSet gs = gamma_matrices(n, limits.max_n);
      const int want = kind == RepKind::SpinorPlus ? 0 : 1; // popcount parity
      std::vector<int> sel;
      for (int idx = 0; idx < gs.dim(); ++idx)
        if (__builtin_popcount(static_cast<unsigned>(idx)) % 2 == want) sel.push_back(idx);
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          ComplexMatrix full = gs.bracket(a, b);
          ComplexMatrix half(sel.size(), sel.size());
          for (size_t r = 0; r < sel.size(); ++r)
            for (size_t c = 0; c < sel.size(); ++c) half(r, c) = full(sel[r], sel[c]);
          gens.push_back(std::move(half));
        }
      break;
    }
    case RepKind::Exterior: {
      const int m = n / 2;
      if (k < 0 || k > m || (n % 2 == 0 && k == m))
        throw std::invalid_argument("exterior degree must satisfy 0 <= k <= floor(n/2), "
                                    "strictly below n/2 for even n");
      ExteriorModel model(n, k);
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) gens.push_back(model.generator(a, b));
      break;
    }
  }

  return Representation(n, weight_of_kind(n, kind, k), std::move(gens));
}

TensorRep tensor_with_vector(const Representation& base, const Limits& limits) {
  const int n = base.n;
  const int d = base.dim();
  const long long dim = static_cast<long long>(d) * n;
  if (dim > limits.max_tensor_dim)
    throw CapacityError("tensor dimension " + std::to_string(dim) + " exceeds limit " +
                        std::to_string(limits.max_tensor_dim));

  ComplexMatrix chat = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const ComplexMatrix& g = base.gen_at(i, j);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          chat(a * n + i, b * n + j) = -0.25 * g(a, b);
          chat(a * n + j, b * n + i) = 0.25 * g(a, b);
        }
    }

  // Block identity: chat[(a,t),(b,s)] = 1/4 pi_rho([e_s,e_t])[a,b].
  double defect = 0.0;
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < n; ++s) {
      const ComplexMatrix block = 0.25 * base.gen(s, t);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          defect = std::max(defect, std::abs(chat(a * n + t, b * n + s) - block(a, b)));
    }
  if (defect > 1e-12 || hermiticity_defect(chat) > frobenius_tol(dim, dim, 1e-12))
    throw IntegrityError("conformal weight operator violates its block identity");

  return TensorRep{base, std::move(chat)};
}

ComplexMatrix TensorRep::gen(int k, int l) const {
  const int nn = base.n;
  if (k == l) return ComplexMatrix::Zero(dim(), dim());
  const ComplexMatrix g = base.gen(k, l);
  ComplexMatrix out = kron(g, ComplexMatrix::Identity(nn, nn));
  const ComplexMatrix a = k < l ? vector_generator(nn, k, l) : ComplexMatrix(-vector_generator(nn, l, k));
  const int d = base.dim();
  for (int i = 0; i < d; ++i) out.block(i * nn, i * nn, nn, nn) += a;
  return out;
}

Eigen::VectorXd chat_eigenvalues(const TensorRep& trep) {
  return hermitian_eigenvalues(trep.chat);
}

Rational pfaffian_scalar_coeff(const DominantWeight& w) {
  if (w.n % 2 != 0) throw std::invalid_argument("Pfaffian scalar needs even n");
  const int m = w.rank();
  Rational coeff(1);
  for (int i = 0; i < m; ++i) {
    coeff *= Rational(8);
    coeff *= Rational(i + 1);
    coeff *= w.coords[i].to_rational() + Rational(m - 1 - i);
  }
  return coeff;
}

std::complex<double> pfaffian_scalar(const DominantWeight& w) {
  const int m = w.rank();
  // The square root branch is pinned by the gamma model: with the Cartan
  // generators (i/4)*pi([e_{2j-1},e_{2j}]) acting as +1/2 on the highest
  // spinor weight, gamma_1...gamma_{2m} = (-2i)^m H_1...H_m, so the signed
  // permutation sum evaluates with phase (-i)^m, not i^m.  The two agree for
  // even m; for odd m only this branch matches the operator sum.
  const std::complex<double> neg_iu(0.0, -1.0);
  std::complex<double> phase = 1.0;
  for (int i = 0; i < m; ++i) phase *= neg_iu;
  return phase * pfaffian_scalar_coeff(w).to_double();
}

ComplexMatrix pfaffian_element(int n, const std::vector<ComplexMatrix>& gens,
                               const Limits& limits) {
  if (n % 2 != 0) throw std::invalid_argument("Pfaffian element needs even n");
  if (static_cast<int>(gens.size()) != n * (n - 1) / 2)
    throw std::invalid_argument("Pfaffian element needs one generator per pair");
  const int m = n / 2;
  const int d = static_cast<int>(gens[0].rows());

  double perms = 1.0;
  for (int i = 2; i <= n; ++i) perms *= i;
  const double flops = perms * std::max(1, m - 1) * 8.0 * d * d * d;
  if (flops > limits.max_pfaffian_flops)
    throw CapacityError("Pfaffian element sum would exceed the flop budget");

  auto signed_gen = [&](int k, int l) -> ComplexMatrix {
    if (k < l) return gens[static_cast<size_t>(pair_index(n, k, l))];
    return -gens[static_cast<size_t>(pair_index(n, l, k))];
  };

  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  ComplexMatrix acc = ComplexMatrix::Zero(d, d);
  do {
    int inversions = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (idx[a] > idx[b]) ++inversions;
    ComplexMatrix prod = signed_gen(idx[0], idx[1]);
    for (int f = 1; f < m; ++f) prod = prod * signed_gen(idx[2 * f], idx[2 * f + 1]);
    if (inversions % 2 == 0)
      acc += prod;
    else
      acc -= prod;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return acc;
}

namespace {

constexpr double kSnapTol = 1e-6;

/// Buckets eigenvector columns by the nearest conformal weight of the merged table.
std::vector<std::vector<int>> cluster_by_node(const Eigen::VectorXd& evals,
                                              const DecompositionTable& merged) {
  std::vector<std::vector<int>> buckets(merged.components.size());
  for (int idx = 0; idx < evals.size(); ++idx) {
    int best = -1;
    double best_gap = 0.0;
    for (size_t j = 0; j < merged.components.size(); ++j) {
      const double gap = std::abs(evals(idx) - merged.components[j].conformal_weight.to_double());
      if (best < 0 || gap < best_gap) {
        best = static_cast<int>(j);
        best_gap = gap;
      }
    }
    if (best_gap > kSnapTol)
      throw IntegrityError("conformal weight eigenvalue off every table node by " +
                           std::to_string(best_gap));
    buckets[best].push_back(idx);
  }
  for (size_t j = 0; j < buckets.size(); ++j)
    if (static_cast<long long>(buckets[j].size()) != merged.components[j].dimension)
      throw IntegrityError("eigenspace dimension disagrees with the branching table");
  return buckets;
}

ComplexMatrix take_columns(const ComplexMatrix& m, const std::vector<int>& cols) {
  ComplexMatrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = m.col(cols[j]);
  return out;
}

/// Separates the merged exceptional eigenspace into its two summands with the
/// Pfaffian element, whose scalars on the pair differ only by sign.
std::pair<ComplexMatrix, ComplexMatrix> pfaffian_split(const TensorRep& trep,
                                                       const ComplexMatrix& pair_basis,
                                                       const ComponentDescriptor& plus,
                                                       const ComponentDescriptor& minus,
                                                       const Limits& limits) {
  const int n = trep.n();
  std::vector<ComplexMatrix> restricted;
  restricted.reserve(n * (n - 1) / 2);
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l)
      restricted.push_back(pair_basis.adjoint() * (trep.gen(k, l) * pair_basis));

  const ComplexMatrix w = pfaffian_element(n, restricted, limits);
  const std::complex<double> p_plus = pfaffian_scalar(plus.weight);
  const double magnitude = std::abs(p_plus);
  if (magnitude <= 0.0) throw IntegrityError("exceptional pair has vanishing Pfaffian scalar");
  const std::complex<double> theta = p_plus / magnitude;

  const ComplexMatrix h = ((w / theta) + (w / theta).adjoint()) / 2.0;
  auto [evals, evecs] = hermitian_eigensolve(h);
  std::vector<int> pos, neg;
  for (int i = 0; i < evals.size(); ++i) {
    if (std::abs(std::abs(evals(i)) - magnitude) > 1e-6 * magnitude)
      throw IntegrityError("Pfaffian eigenvalue does not match the pair scalar");
    (evals(i) > 0 ? pos : neg).push_back(i);
  }
  if (static_cast<long long>(pos.size()) != plus.dimension ||
      static_cast<long long>(neg.size()) != minus.dimension)
    throw IntegrityError("Pfaffian split sizes disagree with the branching table");

  return {pair_basis * take_columns(evecs, pos), pair_basis * take_columns(evecs, neg)};
}

} // namespace

std::vector<ComponentEmbedding> split_components(const TensorRep& trep,
                                                 const DecompositionTable& table,
                                                 const Limits& limits) {
  if (table.rho != trep.base.weight)
    throw std::invalid_argument("branching table is for a different weight");
  if (table.merged) throw std::invalid_argument("split needs the unmerged table");

  const DecompositionTable merged = table.merged_table();
  auto [evals, evecs] = hermitian_eigensolve(trep.chat);
  const auto buckets = cluster_by_node(evals, merged);

  auto merged_index_for = [&](const Rational& conformal) {
    for (size_t j = 0; j < merged.components.size(); ++j)
      if (merged.components[j].conformal_weight == conformal) return static_cast<int>(j);
    throw IntegrityError("merged table misses a conformal weight");
  };

  std::vector<ComponentEmbedding> out;
  out.reserve(table.components.size());
  for (int i = 0; i < table.size(); ++i) {
    const ComponentDescriptor& desc = table.components[i];
    if (desc.exceptional_partner && *desc.exceptional_partner < i) continue; // handled with partner
    const int mj = merged_index_for(desc.conformal_weight);
    ComplexMatrix basis = take_columns(evecs, buckets[mj]);
    if (!desc.exceptional_partner) {
      out.push_back(ComponentEmbedding{desc, std::move(basis)});
      continue;
    }
    const ComponentDescriptor& partner = table.components[*desc.exceptional_partner];
    const bool first_is_plus = desc.weight.coords.back() > partner.weight.coords.back();
    const ComponentDescriptor& plus = first_is_plus ? desc : partner;
    const ComponentDescriptor& minus = first_is_plus ? partner : desc;
    auto [bp, bm] = pfaffian_split(trep, basis, plus, minus, limits);
    out.push_back(ComponentEmbedding{plus, std::move(bp)});
    out.push_back(ComponentEmbedding{minus, std::move(bm)});
  }

  // The pair is emitted plus-first, which is also table order (lex descending).
  if (out.size() != table.components.size())
    throw IntegrityError("component embeddings do not cover the branching table");
  for (size_t i = 0; i < out.size(); ++i)
    if (out[i].descriptor.weight != table.components[i].weight)
      throw IntegrityError("component embeddings are out of table order");
  return out;
}

Representation restrict_to_component(const TensorRep& trep, const ComponentEmbedding& emb) {
  const int n = trep.n();
  std::vector<ComplexMatrix> gens;
  gens.reserve(n * (n - 1) / 2);
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l)
      gens.push_back(emb.basis.adjoint() * (trep.gen(k, l) * emb.basis));
  Representation rep(n, emb.descriptor.weight, std::move(gens));
  if (rep.dim() != emb.descriptor.dimension)
    throw IntegrityError("component dimension mismatch after restriction");
  return rep;
}

std::vector<DominantWeight> build_chain(const DominantWeight& target) {
  const int n = target.n;
  const int m = target.rank();
  std::vector<HalfInt> cur(m, HalfInt(0));
  if (target.half_odd()) {
    std::fill(cur.begin(), cur.end(), HalfInt::half());
    if (n % 2 == 0 && target.coords[m - 1] < HalfInt(0)) cur[m - 1] = -HalfInt::half();
  }

  std::vector<DominantWeight> chain;
  chain.emplace_back(n, cur);
  auto push = [&] { chain.emplace_back(n, cur); };
  for (int i = 0; i + 1 < m; ++i)
    while (cur[i] < target.coords[i]) {
      cur[i] = cur[i] + HalfInt(1);
      push();
    }
  while (cur[m - 1] < target.coords[m - 1]) {
    cur[m - 1] = cur[m - 1] + HalfInt(1);
    push();
  }
  while (cur[m - 1] > target.coords[m - 1]) {
    cur[m - 1] = cur[m - 1] - HalfInt(1);
    push();
  }
  return chain;
}

std::string default_cache_dir() {
  if (const char* env = std::getenv("GRADKIT_CACHE_DIR"); env && *env) return env;
  return ".gradkit-cache";
}

std::string cache_key(const DominantWeight& w) {
  std::string key = "n" + std::to_string(w.n) + "_w";
  for (int i = 0; i < w.rank(); ++i) {
    if (i) key += "_";
    key += std::to_string(w.coords[i].twice());
  }
  return key;
}

namespace {

constexpr double kCacheCasimirTol = 1e-6;

std::string gen_file_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "gen_%03d.cmat", index);
  return buf;
}

json rep_manifest(const Representation& rep) {
  json weight = json::array();
  for (const auto& c : rep.weight.coords) weight.push_back(c.str());
  json files = json::array();
  for (size_t i = 0; i < rep.gens.size(); ++i) files.push_back(gen_file_name(static_cast<int>(i)));
  return json{{"format", "gradkit-rep-1"},
              {"n", rep.n},
              {"weight", weight},
              {"dim", rep.dim()},
              {"generator_count", rep.gens.size()},
              {"files", files}};
}

} // namespace

bool cache_load(const std::string& dir, const DominantWeight& w, Representation* out) {
  const fs::path entry = fs::path(dir) / cache_key(w);
  const fs::path manifest_path = entry / "manifest.json";
  if (!fs::exists(manifest_path)) return false;

  json manifest;
  try {
    std::ifstream in(manifest_path);
    in >> manifest;
  } catch (const std::exception& e) {
    throw IntegrityError("unreadable cache manifest " + manifest_path.string() + ": " + e.what());
  }

  if (manifest.value("format", "") != "gradkit-rep-1" || manifest.value("n", -1) != w.n)
    throw IntegrityError("cache manifest mismatch at " + entry.string());
  std::vector<std::string> coords = manifest.value("weight", std::vector<std::string>{});
  if (coords.size() != w.coords.size())
    throw IntegrityError("cache manifest weight mismatch at " + entry.string());
  for (size_t i = 0; i < coords.size(); ++i)
    if (HalfInt::parse(coords[i]) != w.coords[i])
      throw IntegrityError("cache manifest weight mismatch at " + entry.string());

  const int pairs = w.n * (w.n - 1) / 2;
  if (manifest.value("generator_count", -1) != pairs)
    throw IntegrityError("cache manifest generator count mismatch at " + entry.string());

  std::vector<ComplexMatrix> gens;
  gens.reserve(pairs);
  const long long dim = manifest.value("dim", -1);
  for (const auto& name : manifest.at("files")) {
    ComplexMatrix g = read_cmat(entry / name.get<std::string>());
    if (g.rows() != dim || g.cols() != dim)
      throw IntegrityError("cached generator shape mismatch at " + entry.string());
    gens.push_back(std::move(g));
  }

  Representation rep(w.n, w, std::move(gens));
  if (rep.dim() != weyl_dimension(w))
    throw IntegrityError("cached representation has the wrong dimension at " + entry.string());
  const double defect = rep.casimir_probe_defect();
  if (defect > kCacheCasimirTol)
    throw IntegrityError("cached representation fails the Casimir probe at " + entry.string());
  *out = std::move(rep);
  return true;
}

void cache_store(const std::string& dir, const Representation& rep) {
  const fs::path root(dir);
  const std::string key = cache_key(rep.weight);
  const fs::path final_dir = root / key;
  if (fs::exists(final_dir / "manifest.json")) return;

  fs::create_directories(root);
  const fs::path tmp = root / (".tmp-" + key + "-" + std::to_string(::getpid()));
  std::error_code ec;
  fs::remove_all(tmp, ec);
  fs::create_directories(tmp);
  try {
    for (size_t i = 0; i < rep.gens.size(); ++i)
      write_cmat(tmp / gen_file_name(static_cast<int>(i)), rep.gens[i]);
    std::ofstream out(tmp / "manifest.json");
    if (!out) throw IoError("cannot write cache manifest under " + tmp.string());
    out << rep_manifest(rep).dump(2) << "\n";
    out.close();
    fs::rename(tmp, final_dir);
  } catch (const fs::filesystem_error&) {
    fs::remove_all(tmp, ec);
    if (!fs::exists(final_dir / "manifest.json"))
      throw IoError("cannot publish cache entry " + final_dir.string());
  } catch (...) {
    fs::remove_all(tmp, ec);
    throw;
  }
}

namespace {

std::string memo_key(const DominantWeight& w) { return std::to_string(w.n) + "|" + w.str(); }

std::map<std::string, Representation>& memo_store() {
  static std::map<std::string, Representation> store;
  return store;
}

Representation seed_rep(const DominantWeight& start, const Limits& limits) {
  if (!start.half_odd()) return standard_rep(start.n, RepKind::Trivial, 0, limits);
  if (start.n % 2 != 0) return standard_rep(start.n, RepKind::Spinor, 0, limits);
  const bool minus = start.coords[start.rank() - 1] < HalfInt(0);
  return standard_rep(start.n, minus ? RepKind::SpinorMinus : RepKind::SpinorPlus, 0, limits);
}

} // namespace

Representation build_rep(const DominantWeight& target, const BuildOptions& opts) {
  if (target.n > opts.limits.max_n) throw CapacityError("n exceeds the configured limit");

  auto fetch = [&](const DominantWeight& w) -> std::optional<Representation> {
    if (opts.memoize) {
      auto it = memo_store().find(memo_key(w));
      if (it != memo_store().end()) return it->second;
    }
    if (!opts.cache_dir.empty()) {
      Representation loaded(w.n, w, std::vector<ComplexMatrix>(w.n * (w.n - 1) / 2));
      if (cache_load(opts.cache_dir, w, &loaded)) {
        if (opts.memoize) memo_store().insert_or_assign(memo_key(w), loaded);
        return loaded;
      }
    }
    return std::nullopt;
  };
  auto publish = [&](const Representation& rep) {
    if (opts.memoize) memo_store().insert_or_assign(memo_key(rep.weight), rep);
    if (!opts.cache_dir.empty()) cache_store(opts.cache_dir, rep);
  };

  if (auto hit = fetch(target)) return *hit;

  const std::vector<DominantWeight> chain = build_chain(target);
  Representation current = seed_rep(chain.front(), opts.limits);
  if (auto hit = fetch(chain.front()))
    current = *hit;
  else
    publish(current);

  for (size_t step = 1; step < chain.size(); ++step) {
    const DominantWeight& next = chain[step];
    if (auto hit = fetch(next)) {
      current = *hit;
      continue;
    }
    const DecompositionTable table = decompose(current.weight);
    const TensorRep trep = tensor_with_vector(current, opts.limits);
    const auto embeddings = split_components(trep, table, opts.limits);
    bool found = false;
    for (const auto& emb : embeddings) {
      if (emb.descriptor.weight != next) continue;
      current = restrict_to_component(trep, emb);
      found = true;
      break;
    }
    if (!found) throw IntegrityError("chain step " + next.str() + " missing from the branching");
    if (current.dim() != weyl_dimension(next))
      throw IntegrityError("chain step " + next.str() + " has the wrong dimension");
    const double defect = current.casimir_probe_defect();
    if (defect > 1e-7 * std::max(1, current.dim()))
      throw IntegrityError("chain step " + next.str() + " fails the Casimir probe");
    publish(current);
  }
  return current;
}

namespace {

/// Structure constants of [pi([e_a,e_b]), pi([e_c,e_d])] over the pair basis,
/// read off the Clifford model by trace projection.
std::vector<std::complex<double>> bracket_coefficients(const GammaSet& gs, int a, int b, int c,
                                                       int d) {
  const int n = gs.n;
  const ComplexMatrix x =
      gs.bracket(a, b) * gs.bracket(c, d) - gs.bracket(c, d) * gs.bracket(a, b);
  std::vector<std::complex<double>> coeffs;
  coeffs.reserve(n * (n - 1) / 2);
  const double norm = 4.0 * gs.dim();
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l)
      coeffs.push_back((gs.bracket(k, l).adjoint() * x).trace() / norm);
  return coeffs;
}

} // namespace

ValidationReport validate_rep(const Representation& rep, double tol_base, std::uint64_t seed) {
  ValidationReport report;
  const int d = rep.dim();
  report.actual_dim = d;
  report.expected_dim = weyl_dimension(rep.weight);
  report.tolerance = tol_base * std::max(1, d);

  for (const auto& g : rep.gens)
    report.skew_defect = std::max(report.skew_defect, (g + g.adjoint()).norm());

  const GammaSet gs = gamma_matrices(rep.n);
  // The pair basis must be trace-orthogonal for the coefficient read-off.
  for (int p1 = 0; p1 < static_cast<int>(gs.n * (gs.n - 1) / 2); ++p1)
    for (int p2 = p1 + 1; p2 < static_cast<int>(gs.n * (gs.n - 1) / 2); ++p2) {
      int k1 = 0, l1 = 0, k2 = 0, l2 = 0, idx = 0;
      for (int k = 0; k < gs.n; ++k)
        for (int l = k + 1; l < gs.n; ++l, ++idx) {
          if (idx == p1) { k1 = k; l1 = l; }
          if (idx == p2) { k2 = k; l2 = l; }
        }
      if (std::abs((gs.bracket(k1, l1).adjoint() * gs.bracket(k2, l2)).trace()) > 1e-9)
        throw IntegrityError("Clifford pair basis is not trace-orthogonal");
    }

  const int pairs = rep.n * (rep.n - 1) / 2;
  std::vector<std::pair<int, int>> pair_list;
  for (int k = 0; k < rep.n; ++k)
    for (int l = k + 1; l < rep.n; ++l) pair_list.emplace_back(k, l);

  std::vector<std::pair<int, int>> combos;
  if (d <= 64) {
    for (int p = 0; p < pairs; ++p)
      for (int q = p + 1; q < pairs; ++q) combos.emplace_back(p, q);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, pairs - 1);
    while (combos.size() < 40) {
      int p = pick(rng), q = pick(rng);
      if (p != q) combos.emplace_back(std::min(p, q), std::max(p, q));
    }
  }

  std::mt19937_64 rng(seed + 1);
  std::normal_distribution<double> dist;
  for (const auto& [p, q] : combos) {
    const auto [a, b] = pair_list[p];
    const auto [c, e] = pair_list[q];
    const auto coeffs = bracket_coefficients(gs, a, b, c, e);
    const ComplexMatrix& gp = rep.gens[p];
    const ComplexMatrix& gq = rep.gens[q];
    if (d <= 64) {
      ComplexMatrix delta = gp * gq - gq * gp;
      for (int r = 0; r < pairs; ++r)
        if (std::abs(coeffs[r]) > 1e-12) delta -= coeffs[r] * rep.gens[r];
      report.bracket_defect = std::max(report.bracket_defect, delta.norm());
    } else {
      for (int probe = 0; probe < 4; ++probe) {
        ComplexVector v(d);
        for (int i = 0; i < d; ++i) v(i) = std::complex<double>(dist(rng), dist(rng));
        v /= v.norm();
        ComplexVector delta = gp * (gq * v) - gq * (gp * v);
        for (int r = 0; r < pairs; ++r)
          if (std::abs(coeffs[r]) > 1e-12) delta -= coeffs[r] * (rep.gens[r] * v);
        report.bracket_defect = std::max(report.bracket_defect, delta.norm());
      }
    }
  }

  if (d <= 256) {
    const double c = casimir_constant(rep.weight).to_double();
    report.casimir_defect =
        (rep.casimir_matrix() - c * ComplexMatrix::Identity(d, d)).norm();
  } else {
    report.casimir_defect = rep.casimir_probe_defect(8, seed + 2);
  }
  return report;
}

ComplexMatrix group_element(const Representation& rep, int k, int l, double t) {
  const ComplexMatrix g = rep.gen(k, l);
  auto [evals, evecs] = hermitian_eigensolve(
      ComplexMatrix(std::complex<double>(0, 1) * g));
  ComplexVector phases(evals.size());
  for (int i = 0; i < evals.size(); ++i)
    phases(i) = std::exp(std::complex<double>(0, -t * evals(i)));
  return evecs * phases.asDiagonal() * evecs.adjoint();
}

} // namespace gradkit
