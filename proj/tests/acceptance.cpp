// Acceptance gate: ten identity/oracle criteria over the small-rank grid plus
// negative controls, one [PASS]/[FAIL] line each, nonzero exit when anything
// fails. Tolerances are pinned inside the criterion that uses them. The first
// criterion times the cold build of the whole grid, so the binary starts from
// a scratch cache; later criteria reuse the in-process memo.
#include "gradkit/cliffkit.hpp"
#include "gradkit/curvkit.hpp"
#include "gradkit/errors.hpp"
#include "gradkit/linalg.hpp"
#include "gradkit/repforge.hpp"
#include "gradkit/weightcalc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace gradkit;

namespace {

using Complex = std::complex<double>;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

/// Grid shared by the spectra, moment, projector, curvature and symbol
/// criteria: every dominant weight with first coordinate <= 2 whose tensor
/// product stays within the size cap.
std::vector<DominantWeight> grid_weights(int n, long long cap = 4096) {
  std::vector<DominantWeight> out;
  for (const DominantWeight& w : enumerate_dominant_weights(n, HalfInt(2)))
    if (weyl_dimension(w) * n <= cap) out.push_back(w);
  return out;
}

bool is_spinor_shape(const DominantWeight& w) {
  for (int i = 0; i + 1 < w.rank(); ++i)
    if (w.coords[i].twice() != 1) return false;
  return w.coords[w.rank() - 1].abs().twice() == 1;
}

bool is_vector_shape(const DominantWeight& w) {
  if (w.coords[0] != HalfInt(1)) return false;
  for (int i = 1; i < w.rank(); ++i)
    if (w.coords[i] != HalfInt(0)) return false;
  return true;
}

DominantWeight spinor_weight(int n, bool minus = false) {
  std::vector<HalfInt> coords(static_cast<size_t>(n / 2), HalfInt::half());
  if (minus) coords.back() = -HalfInt::half();
  return DominantWeight(n, coords);
}

DominantWeight form_weight(int n, int k) {
  std::vector<HalfInt> coords(static_cast<size_t>(n / 2), HalfInt(0));
  for (int i = 0; i < k; ++i) coords[static_cast<size_t>(i)] = HalfInt(1);
  return DominantWeight(n, coords);
}

// ---------------------------------------------------------------------------
// Criterion 1: the tensor conformal weight operator reproduces the branching
// table spectrum, full grid from a cold cache inside the time budget.

Outcome criterion_spectra(const BuildOptions& opts) {
  const double kTolPerEigenvalue = 1e-8;
  const double kBudgetSeconds = 300.0;
  const auto t0 = std::chrono::steady_clock::now();

  double worst = 0.0;
  int weights = 0;
  for (int n = 3; n <= 7; ++n) {
    for (const DominantWeight& w : grid_weights(n)) {
      const Representation rep = build_rep(w, opts);
      const TensorRep trep = tensor_with_vector(rep, opts.limits);
      const Eigen::VectorXd ev = chat_eigenvalues(trep); // ascending

      std::vector<double> expected;
      for (const ComponentDescriptor& comp : decompose(w).components)
        expected.insert(expected.end(), static_cast<size_t>(comp.dimension),
                        comp.conformal_weight.to_double());
      std::sort(expected.begin(), expected.end());
      if (std::ssize(expected) != ev.size())
        return {false, "spectrum size mismatch at n=" + std::to_string(n) + " rho=" + w.str()};
      for (long long i = 0; i < ev.size(); ++i) {
        double defect = 0.0;
        const double snapped = snap_half_integer(ev(i), &defect);
        worst = std::max({worst, defect, std::abs(snapped - expected[static_cast<size_t>(i)])});
      }
      ++weights;
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = worst <= kTolPerEigenvalue && secs < kBudgetSeconds;
  return {pass, fmt("%d weights, worst eigenvalue deviation %.2e (tol %.0e), %.1f s (budget %.0f s)",
                    weights, worst, kTolPerEigenvalue, secs, kBudgetSeconds)};
}

// ---------------------------------------------------------------------------
// Criteria 2, 3, 9, 10 share one pass over the grid: moment identities,
// projector triple agreement, curvature transform checks, symbol completeness.

struct GridOutcomes {
  Outcome moments;
  Outcome projectors;
  Outcome curvature;
  Outcome symbols;
};

GridOutcomes run_grid_criteria(const BuildOptions& opts) {
  const double kTolBase = 1e-9;       // the verifiers scale this by the dimension
  const int kSymbolSamples = 50;
  const int kCurvatureSamples = 100;  // random bound checks per representation, n <= 6

  bool m_ok = true, p_ok = true, s_ok = true, c_ok = true;
  double m_worst = 0, p_worst = 0, s_worst = 0;
  double c_const_worst = 0;   // scaled residual of the spinor/vector constant forms
  double c_margin = 1e300;    // min over samples of lambda_min(R1) - bound
  std::string first_fail;
  int weights = 0;
  long long samples_run = 0;

  for (int n = 3; n <= 7; ++n) {
    std::vector<AlgebraicCurvatureTensor> tensors;
    std::vector<double> floors;
    if (n <= 6) {
      for (int s = 0; s < kCurvatureSamples; ++s) {
        tensors.push_back(random_positive_curvature(n, 1000u * static_cast<unsigned>(n) +
                                                           static_cast<unsigned>(s)));
        floors.push_back(curvature_floor(tensors.back()));
        // the operator floor certifies the sectional precondition exactly
        const double op_min = hermitian_eigenvalues(
                                  tensors.back().operator_form().cast<Complex>())(0);
        if (op_min < 2.0 * floors.back() - 1e-9) {
          c_ok = false;
          first_fail = "sample floor certificate broken at n=" + std::to_string(n);
        }
      }
    }

    for (const DominantWeight& w : grid_weights(n)) {
      const Representation rep = build_rep(w, opts);
      const std::string tag = "n=" + std::to_string(n) + " rho=" + w.str();
      std::fprintf(stderr, "  grid %s dim=%d\n", tag.c_str(), rep.dim());
      {
        const Workspace ws(rep, opts.limits);
        const SuiteResult sm = verify_moment_identities(ws, -1, kTolBase);
        m_worst = std::max(m_worst, sm.worst_residual());
        if (!sm.pass()) { m_ok = false; if (first_fail.empty()) first_fail = "moments " + tag; }

        const SuiteResult sp = verify_projectors(ws, kTolBase);
        p_worst = std::max(p_worst, sp.worst_residual());
        if (!sp.pass()) { p_ok = false; if (first_fail.empty()) first_fail = "projectors " + tag; }

        const SuiteResult ss = verify_symbols(ws, kSymbolSamples, 17, kTolBase);
        s_worst = std::max(s_worst, ss.worst_residual());
        if (!ss.pass()) { s_ok = false; if (first_fail.empty()) first_fail = "symbols " + tag; }
      }

      // constant-curvature forms: scalar curvature over eight on spinors,
      // the Ricci endomorphism on the vector representation
      const double dim = static_cast<double>(rep.dim());
      if (is_spinor_shape(w) || is_vector_shape(w)) {
        const AlgebraicCurvatureTensor unit = constant_curvature(n, 1.0);
        const CurvatureTransform tr = curvature_transform(rep, unit);
        double res = 0.0;
        if (is_spinor_shape(w)) {
          const double scalar = static_cast<double>(n) * (n - 1) / 8.0; // kappa/8 at K=1
          res = (tr.matrix - scalar * ComplexMatrix::Identity(rep.dim(), rep.dim())).norm();
        } else {
          res = (tr.matrix - unit.ricci().cast<Complex>()).norm();
        }
        c_const_worst = std::max(c_const_worst, res / (kTolBase * dim));
        if (res > kTolBase * dim) {
          c_ok = false;
          if (first_fail.empty()) first_fail = "constant curvature " + tag;
        }
      }

      // random curvature tensors with a certified sectional floor r: every
      // eigenvalue of the transform must clear -2 r c(rho)
      if (n <= 6) {
        const double c_rho = casimir_constant(w).to_double();
        for (int s = 0; s < kCurvatureSamples; ++s) {
          const CurvatureTransform tr = curvature_transform(rep, tensors[static_cast<size_t>(s)]);
          const double lam = hermitian_eigenvalues(tr.matrix)(0);
          const double bound = -2.0 * floors[static_cast<size_t>(s)] * c_rho;
          const double tol = kTolBase * dim * std::max(1.0, std::abs(bound));
          c_margin = std::min(c_margin, lam - bound);
          if (lam < bound - tol) {
            c_ok = false;
            if (first_fail.empty())
              first_fail = fmt("curvature bound %s sample %d", tag.c_str(), s);
          }
          ++samples_run;
        }
      }
      ++weights;
    }
  }

  const std::string suffix = first_fail.empty() ? "" : "; first failure: " + first_fail;
  GridOutcomes out;
  out.moments = {m_ok, fmt("%d weights, worst residual %.2e", weights, m_worst) +
                           (m_ok ? "" : suffix)};
  out.projectors = {p_ok, fmt("%d weights, worst residual %.2e", weights, p_worst) +
                              (p_ok ? "" : suffix)};
  out.symbols = {s_ok, fmt("%d weights x %d samples, worst residual %.2e", weights,
                           kSymbolSamples, s_worst) +
                           (s_ok ? "" : suffix)};
  out.curvature = {
      c_ok, fmt("constant forms within %.2f of tolerance; %lld bound samples, min margin %.3f",
                c_const_worst, samples_run, c_margin) +
                (c_ok ? "" : suffix)};
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 4: spinor specialization suites for odd n.

Outcome criterion_spinor(const Limits& limits) {
  const double kTolBase = 1e-9; // the 2/n constant row pins 1e-10 internally
  double worst = 0.0;
  for (int n : {3, 5, 7}) {
    const SuiteResult s = spinor_suite(n, limits, kTolBase);
    worst = std::max(worst, s.worst_residual());
    if (!s.pass()) return {false, fmt("suite failed at n=%d", n)};
  }
  return {true, fmt("n in {3,5,7}, worst residual %.2e", worst)};
}

// ---------------------------------------------------------------------------
// Criterion 5: exterior power suites plus the middle-degree chiral split.

Outcome criterion_exterior(const Limits& limits) {
  const double kTolBase = 1e-9;
  double worst = 0.0;
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{5, 1}, {5, 2}, {6, 1}, {6, 2}}) {
    const SuiteResult s = exterior_suite(n, k, limits, kTolBase);
    worst = std::max(worst, s.worst_residual());
    if (!s.pass()) return {false, fmt("exterior suite failed at n=%d k=%d", n, k)};
  }
  const SuiteResult h = hodge_suite(6, limits, kTolBase);
  worst = std::max(worst, h.worst_residual());
  if (!h.pass()) return {false, "chiral split suite failed at n=6"};
  return {true, fmt("(n,k) in {(5,1),(5,2),(6,1),(6,2)} + n=6 split, worst residual %.2e", worst)};
}

// ---------------------------------------------------------------------------
// Criterion 6: Pfaffian scalar and the exceptional pair separation.

Outcome criterion_pfaffian(const BuildOptions& opts) {
  const double kTolBase = 1e-9; // scalar rows gate at 1e-6 relative internally
  double worst = 0.0;
  int reps = 0;

  std::vector<DominantWeight> targets;
  for (const DominantWeight& w : enumerate_dominant_weights(4, HalfInt::from_twice(3)))
    targets.push_back(w);
  targets.push_back(spinor_weight(6, false));
  targets.push_back(spinor_weight(6, true));
  targets.push_back(DominantWeight(6, {HalfInt(1), HalfInt(1), HalfInt(1)}));
  targets.push_back(DominantWeight(6, {HalfInt(1), HalfInt(1), -HalfInt(1)}));
  targets.push_back(form_weight(6, 2)); // exceptional pair host

  bool split_seen = false;
  for (const DominantWeight& w : targets) {
    const Workspace ws(build_rep(w, opts), opts.limits);
    const SuiteResult s = verify_pfaffian(ws, opts.limits, kTolBase);
    worst = std::max(worst, s.worst_residual());
    if (!s.pass()) return {false, "suite failed at n=" + std::to_string(w.n) + " rho=" + w.str()};
    for (const CheckResult& c : s.cases)
      if (c.identity == "pair scalars are opposite" && c.pass()) split_seen = true;
    ++reps;
  }
  if (!split_seen) return {false, "exceptional pair separation row missing"};
  return {true, fmt("%d representations incl. the exceptional split, worst residual %.2e", reps,
                    worst)};
}

// ---------------------------------------------------------------------------
// Criterion 7: second order coefficient tables in exact rational arithmetic.

Outcome criterion_bochner() {
  std::vector<DominantWeight> targets;
  for (int n : {3, 5, 7}) targets.push_back(spinor_weight(n));
  for (int n : {4, 6}) {
    targets.push_back(spinor_weight(n, false));
    targets.push_back(spinor_weight(n, true));
  }
  for (const auto& [n, k] :
       std::vector<std::pair<int, int>>{{5, 1}, {5, 2}, {6, 1}, {6, 2}, {7, 1}, {7, 2}, {7, 3}})
    targets.push_back(form_weight(n, k));

  int spinor_rows = 0, form_rows = 0;
  for (const DominantWeight& w : targets) {
    const SuiteResult s = verify_bochner(w);
    if (!s.pass()) return {false, "coefficients failed at n=" + std::to_string(w.n) + " rho=" + w.str()};
    for (const CheckResult& c : s.cases) {
      if (c.identity == "dirac square scalar curvature coefficient" ||
          c.identity == "twistor scalar curvature coefficient")
        ++spinor_rows;
      if (c.identity.rfind("form ", 0) == 0) ++form_rows;
    }
  }
  if (spinor_rows != 2 * 7 || form_rows != 3 * 7)
    return {false, fmt("expected coefficient rows missing (%d spinor, %d form)", spinor_rows,
                       form_rows)};
  return {true, fmt("%zu weights, all rows exact (%d spinor rows, %d form rows)", targets.size(),
                    spinor_rows, form_rows)};
}

// ---------------------------------------------------------------------------
// Criterion 8: the closed form of the first-eigenvalue bound on form weights.

Outcome criterion_bound_formula() {
  int checks = 0;
  for (int n = 3; n <= 8; ++n) {
    for (int k = 1; k <= n / 2; ++k) {
      const DominantWeight w = form_weight(n, k);
      for (const Rational& r : {Rational(1), Rational(2, 3), Rational(5)}) {
        const BoundReport rep = eigenvalue_bound(w, r);
        const Rational expected = Rational(k) * Rational(n - k + 1) * r;
        if (rep.bound != expected)
          return {false, fmt("mismatch at n=%d k=%d r=%s: got %s want %s", n, k,
                             r.str().c_str(), rep.bound.str().c_str(), expected.str().c_str())};
        ++checks;
      }
    }
  }
  return {true, fmt("%d exact rational checks over 3<=n<=8", checks)};
}

// ---------------------------------------------------------------------------
// Negative controls: perturbed generators must fail validation.

Outcome negative_controls(const BuildOptions& opts) {
  const Representation rep = build_rep(spinor_weight(5), opts);

  Representation dented = rep;
  dented.gens[0](0, 0) += Complex(1e-3, 0.0); // breaks skew-hermiticity
  const bool caught_dent = !validate_rep(dented).pass();

  Representation swapped = rep;
  std::swap(swapped.gens[0], swapped.gens[1]); // breaks the bracket table
  const bool caught_swap = !validate_rep(swapped).pass();

  Representation scaled = rep;
  scaled.gens[2] *= 1.001; // breaks brackets and the Casimir scalar
  const bool caught_scale = !validate_rep(scaled).pass();

  const bool pass = caught_dent && caught_swap && caught_scale;
  return {pass, fmt("dent %s, swap %s, rescale %s", caught_dent ? "caught" : "missed",
                    caught_swap ? "caught" : "missed", caught_scale ? "caught" : "missed")};
}

int report(int index, const char* name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("[%s] criterion %d: %s - %s\n", o.pass ? "PASS" : "FAIL", index, name,
              o.detail.c_str());
  std::fflush(stdout);
  return o.pass ? 0 : 1;
}

} // namespace

int main() {
  const fs::path scratch = fs::temp_directory_path() / "gradkit_acceptance";
  fs::remove_all(scratch);
  fs::create_directories(scratch);
  BuildOptions opts;
  opts.cache_dir = (scratch / "cache").string();
  opts.memoize = true;

  int failures = 0;
  failures += report(1, "conformal weight spectra across the grid",
                     [&] { return criterion_spectra(opts); });

  GridOutcomes grid;
  try {
    grid = run_grid_criteria(opts);
  } catch (const std::exception& e) {
    const Outcome boom{false, std::string("exception: ") + e.what()};
    grid = {boom, boom, boom, boom};
  }
  failures += report(2, "moment identities through twice the table size", [&] { return grid.moments; });
  failures += report(3, "projector triple agreement and algebra", [&] { return grid.projectors; });
  failures += report(4, "spinor specialization constants", [&] { return criterion_spinor(opts.limits); });
  failures += report(5, "exterior specialization denominators and chiral split",
                     [&] { return criterion_exterior(opts.limits); });
  failures += report(6, "pfaffian scalars and exceptional separation",
                     [&] { return criterion_pfaffian(opts); });
  failures += report(7, "second order coefficient tables, exact rationals",
                     [&] { return criterion_bochner(); });
  failures += report(8, "closed form eigenvalue bound on form weights",
                     [&] { return criterion_bound_formula(); });
  failures += report(9, "curvature transform forms and spectral floor", [&] { return grid.curvature; });
  failures += report(10, "principal symbol completeness", [&] { return grid.symbols; });

  const Outcome controls = negative_controls(opts);
  std::printf("[%s] negative controls: perturbed generators fail validation - %s\n",
              controls.pass ? "PASS" : "FAIL", controls.detail.c_str());
  if (!controls.pass) ++failures;

  std::printf("acceptance: %d/11 passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
