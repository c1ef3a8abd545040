#include "gradkit/repforge.hpp"

#include "gradkit/errors.hpp"
#include "gradkit/exterior.hpp"
#include "gradkit/gamma.hpp"

#include <doctest.h>

#include <complex>
#include <filesystem>
#include <fstream>
#include <random>

using namespace gradkit;
namespace fs = std::filesystem;

namespace {

DominantWeight w(int n, std::vector<long long> twice) {
  std::vector<HalfInt> coords;
  for (long long t : twice) coords.push_back(HalfInt::from_twice(t));
  return DominantWeight(n, coords);
}

ComplexMatrix ident(int d) { return ComplexMatrix::Identity(d, d); }

} // namespace

TEST_CASE("gamma matrices satisfy the Clifford relations") {
  for (int n = 3; n <= 8; ++n) {
    GammaSet gs = gamma_matrices(n);
    const int d = gs.dim();
    CHECK(d == (1 << (n / 2)));
    for (int i = 0; i < n; ++i) {
      CHECK((gs.gamma[i] + gs.gamma[i].adjoint()).norm() < 1e-13);
      for (int j = i; j < n; ++j) {
        ComplexMatrix anti = gs.gamma[i] * gs.gamma[j] + gs.gamma[j] * gs.gamma[i];
        if (i == j) anti += 2.0 * ident(d);
        CHECK(anti.norm() < 1e-13);
      }
    }
    if (n % 2 == 0) {
      ComplexMatrix omega = gs.chirality();
      CHECK((omega * omega - ident(d)).norm() < 1e-13);
      for (int i = 0; i < n; ++i)
        CHECK((omega * gs.gamma[i] + gs.gamma[i] * omega).norm() < 1e-13);
    }
  }
}

TEST_CASE("exterior model") {
  SUBCASE("wedge is the adjoint of interior one degree up") {
    ExteriorModel lam2(5, 2), lam3(5, 3);
    CHECK(lam2.dim() == 10);
    for (int i = 0; i < 5; ++i)
      CHECK((lam2.wedge(i) - lam3.interior(i).adjoint()).norm() == 0.0);
  }

  SUBCASE("interior against wedge anticommutation") {
    const int n = 6, k = 2;
    ExteriorModel mid(n, k), up(n, k + 1), down(n, k - 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ComplexMatrix lhs = up.interior(i) * mid.wedge(j) + down.wedge(j) * mid.interior(i);
        ComplexMatrix want = i == j ? ident(mid.dim()) : ComplexMatrix::Zero(mid.dim(), mid.dim());
        CHECK((lhs - want).norm() == 0.0);
      }
  }

  SUBCASE("hodge star squares to +-1") {
    auto star_square = [](int n, int k) {
      ExteriorModel a(n, k), b(n, n - k);
      return ComplexMatrix(b.hodge_star() * a.hodge_star());
    };
    CHECK((star_square(4, 2) - ident(6)).norm() == 0.0);
    CHECK((star_square(6, 3) + ident(20)).norm() == 0.0); // m odd: star^2 = -1
    CHECK((star_square(5, 2) - ident(10)).norm() == 0.0);
  }

  SUBCASE("degree one reproduces the vector representation") {
    Representation vec = standard_rep(5, RepKind::Vector);
    ExteriorModel lam1(5, 1);
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        CHECK((lam1.generator(i, j) - vec.gen_at(i, j)).norm() == 0.0);
  }
}

TEST_CASE("standard representations validate against the Clifford oracle") {
  struct Case {
    int n;
    RepKind kind;
    int k;
    long long dim;
  };
  const Case cases[] = {
      {5, RepKind::Vector, 0, 5},      {5, RepKind::Spinor, 0, 4},
      {4, RepKind::SpinorPlus, 0, 2},  {4, RepKind::SpinorMinus, 0, 2},
      {6, RepKind::SpinorPlus, 0, 4},  {5, RepKind::Exterior, 2, 10},
      {6, RepKind::Exterior, 2, 15},   {7, RepKind::Exterior, 3, 35},
      {8, RepKind::SpinorMinus, 0, 8}, {6, RepKind::Trivial, 0, 1},
  };
  for (const auto& c : cases) {
    CAPTURE(c.n);
    CAPTURE(c.dim);
    Representation rep = standard_rep(c.n, c.kind, c.k);
    CHECK(rep.dim() == c.dim);
    ValidationReport report = validate_rep(rep);
    CHECK(report.pass());
    CHECK(report.expected_dim == c.dim);
  }

  CHECK_THROWS_AS(standard_rep(4, RepKind::Spinor), std::invalid_argument);
  CHECK_THROWS_AS(standard_rep(5, RepKind::SpinorPlus), std::invalid_argument);
  CHECK_THROWS_AS(standard_rep(6, RepKind::Exterior, 3), std::invalid_argument);
  CHECK_THROWS_AS(standard_rep(5, RepKind::Exterior, 3), std::invalid_argument);
}

TEST_CASE("casimir matrices sit at the exact scalar") {
  Representation vec = standard_rep(6, RepKind::Vector);
  CHECK((vec.casimir_matrix() + 2.5 * ident(6)).norm() < 1e-12);
  Representation spin3 = standard_rep(3, RepKind::Spinor);
  CHECK((spin3.casimir_matrix() + 0.375 * ident(2)).norm() < 1e-12);
}

TEST_CASE("negative control: a perturbed generator fails validation") {
  Representation rep = standard_rep(4, RepKind::Vector);
  rep.gens[0](0, 0) += std::complex<double>(0, 1e-3); // still skew-Hermitian
  ValidationReport report = validate_rep(rep);
  CHECK_FALSE(report.pass());
  CHECK(report.bracket_defect > 1e-4);
}

TEST_CASE("group elements rotate the vector representation by angle 4t") {
  Representation rep = standard_rep(5, RepKind::Vector);
  const double t = 0.1;
  ComplexMatrix u = group_element(rep, 0, 1, t);
  CHECK((u * u.adjoint() - ident(5)).norm() < 1e-12);
  CHECK(std::abs(u(0, 0) - std::cos(4 * t)) < 1e-12);
  CHECK(std::abs(u(1, 0) - std::sin(4 * t)) < 1e-12);
  CHECK(std::abs(u(0, 1) + std::sin(4 * t)) < 1e-12);
  CHECK(std::abs(u(2, 2) - 1.0) < 1e-12);
}

TEST_CASE("tensor product layout and conformal weight operator") {
  Representation base = standard_rep(3, RepKind::Spinor);
  TensorRep trep = tensor_with_vector(base);
  REQUIRE(trep.dim() == 6);

  Representation vec = standard_rep(3, RepKind::Vector);
  SUBCASE("generators act as g (x) 1 + 1 (x) A") {
    for (int k = 0; k < 3; ++k)
      for (int l = k + 1; l < 3; ++l) {
        ComplexMatrix want = kron(base.gen_at(k, l), ident(3)) + kron(ident(2), vec.gen_at(k, l));
        CHECK((trep.gen(k, l) - want).norm() == 0.0);
        CHECK((trep.gen(l, k) + want).norm() == 0.0);
      }
  }

  SUBCASE("chat equals the dense double sum") {
    // (1/32) over ordered index pairs collapses to (1/16) over i < j.
    ComplexMatrix dense = ComplexMatrix::Zero(6, 6);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        dense += kron(base.gen_at(i, j), vec.gen_at(i, j)) / 16.0;
    CHECK((trep.chat - dense).norm() < 1e-14);
    CHECK(hermiticity_defect(trep.chat) < 1e-14);
  }
}

namespace {

Eigen::VectorXd expected_spectrum(const DecompositionTable& merged) {
  std::vector<double> vals;
  for (const auto& comp : merged.components)
    for (long long i = 0; i < comp.dimension; ++i)
      vals.push_back(comp.conformal_weight.to_double());
  std::sort(vals.begin(), vals.end());
  return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

} // namespace

TEST_CASE("tensor spectra match the branching tables") {
  struct Case {
    Representation rep;
    DominantWeight rho;
  };
  const Case cases[] = {
      {standard_rep(3, RepKind::Spinor), w(3, {1})},
      {standard_rep(5, RepKind::Spinor), w(5, {1, 1})},
      {standard_rep(4, RepKind::Vector), w(4, {2, 0})},
  };
  for (const auto& c : cases) {
    TensorRep trep = tensor_with_vector(c.rep);
    Eigen::VectorXd got = chat_eigenvalues(trep);
    Eigen::VectorXd want = expected_spectrum(decompose(c.rho).merged_table());
    REQUIRE(got.size() == want.size());
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("pfaffian scalars: frozen values") {
  CHECK(pfaffian_scalar_coeff(w(4, {1, 1})) == Rational(96));
  CHECK(pfaffian_scalar(w(4, {1, 1})) == std::complex<double>(-96, 0));
  CHECK(pfaffian_scalar(w(4, {1, -1})) == std::complex<double>(96, 0));
  CHECK(pfaffian_scalar(w(4, {2, 0})) == std::complex<double>(0, 0));
  CHECK(pfaffian_scalar(w(4, {2, 2})) == std::complex<double>(-256, 0));
  CHECK(pfaffian_scalar(w(4, {2, -2})) == std::complex<double>(256, 0));
  CHECK(pfaffian_scalar(w(4, {3, 1})) == std::complex<double>(-160, 0));
  CHECK(pfaffian_scalar(w(4, {3, 3})) == std::complex<double>(-480, 0));
  CHECK(pfaffian_scalar(w(4, {3, -3})) == std::complex<double>(480, 0));
  // (-i)^3 = +i, so the half-odd n=6 scalars sit on the positive imaginary
  // axis when the last coordinate is positive; checked against the operator
  // sum on the chiral spinor below.
  CHECK(pfaffian_scalar(w(6, {1, 1, 1})) == std::complex<double>(0, 5760));
  CHECK(pfaffian_scalar(w(6, {1, 1, -1})) == std::complex<double>(0, -5760));
  CHECK(pfaffian_scalar(w(6, {2, 2, 2})) == std::complex<double>(0, 18432));
  CHECK(pfaffian_scalar(w(6, {2, 2, -2})) == std::complex<double>(0, -18432));
  CHECK_THROWS_AS(pfaffian_scalar(w(5, {1, 1})), std::invalid_argument);
}

TEST_CASE("pfaffian element acts as the scalar on irreducibles") {
  auto check_scalar = [](const Representation& rep, std::complex<double> want) {
    ComplexMatrix pf = pfaffian_element(rep.n, rep.gens);
    CHECK((pf - want * ident(rep.dim())).norm() < 1e-9 * std::max(1.0, std::abs(want)));
  };
  check_scalar(standard_rep(4, RepKind::SpinorPlus), {-96, 0});
  check_scalar(standard_rep(4, RepKind::SpinorMinus), {96, 0});
  check_scalar(standard_rep(4, RepKind::Vector), {0, 0});
  check_scalar(standard_rep(6, RepKind::SpinorPlus), {0, 5760});
}

TEST_CASE("splitting the tensor product, exceptional pair included") {
  Representation base = standard_rep(4, RepKind::Vector);
  TensorRep trep = tensor_with_vector(base);
  DecompositionTable table = decompose(w(4, {2, 0}));
  auto embeddings = split_components(trep, table);
  REQUIRE(embeddings.size() == 4);

  ComplexMatrix projector_sum = ComplexMatrix::Zero(16, 16);
  for (int i = 0; i < 4; ++i) {
    const auto& emb = embeddings[i];
    CHECK(emb.descriptor.weight == table.components[i].weight);
    CHECK(emb.basis.cols() == table.components[i].dimension);
    CHECK((emb.basis.adjoint() * emb.basis - ident(static_cast<int>(emb.basis.cols()))).norm() <
          1e-12);
    const double m = emb.descriptor.conformal_weight.to_double();
    CHECK((trep.chat * emb.basis - m * emb.basis).norm() < 1e-10);
    projector_sum += emb.basis * emb.basis.adjoint();
  }
  CHECK((projector_sum - ident(16)).norm() < 1e-11);

  // The pair members are told apart by the Pfaffian sign.
  Representation plus = restrict_to_component(trep, embeddings[1]);
  Representation minus = restrict_to_component(trep, embeddings[2]);
  CHECK(plus.weight == w(4, {2, 2}));
  CHECK(minus.weight == w(4, {2, -2}));
  CHECK(validate_rep(plus).pass());
  CHECK(validate_rep(minus).pass());
  CHECK((pfaffian_element(4, plus.gens) + 256.0 * ident(3)).norm() < 1e-8);
  CHECK((pfaffian_element(4, minus.gens) - 256.0 * ident(3)).norm() < 1e-8);

  Representation top = restrict_to_component(trep, embeddings[0]);
  CHECK(validate_rep(top).pass());
  CHECK(top.dim() == 9);
}

TEST_CASE("build chains") {
  auto chain_strs = [](const DominantWeight& target) {
    std::vector<std::string> out;
    for (const auto& x : build_chain(target)) out.push_back(x.str());
    return out;
  };
  CHECK(chain_strs(w(7, {4, 4, 2})) ==
        std::vector<std::string>{"(0,0,0)", "(1,0,0)", "(2,0,0)", "(2,1,0)", "(2,2,0)",
                                 "(2,2,1)"});
  CHECK(chain_strs(w(4, {3, -3})) ==
        std::vector<std::string>{"(1/2,-1/2)", "(3/2,-1/2)", "(3/2,-3/2)"});
  CHECK(chain_strs(w(4, {2, -2})) == std::vector<std::string>{"(0,0)", "(1,0)", "(1,-1)"});
  CHECK(chain_strs(w(4, {1, 1})) == std::vector<std::string>{"(1/2,1/2)"});
  CHECK(chain_strs(w(5, {1, 1})) == std::vector<std::string>{"(1/2,1/2)"});
}

TEST_CASE("build_rep reproduces the standard models up to equivalence") {
  BuildOptions opts;

  SUBCASE("two-forms on R^5") {
    Representation built = build_rep(w(5, {2, 2}), opts);
    Representation model = standard_rep(5, RepKind::Exterior, 2);
    CHECK(built.dim() == 10);
    CHECK(validate_rep(built).pass());
    for (double t : {0.3, 0.7}) {
      const std::complex<double> a = group_element(built, 0, 1, t).trace();
      const std::complex<double> b = group_element(model, 0, 1, t).trace();
      CHECK(std::abs(a - b) < 1e-9);
    }
  }

  SUBCASE("vector on R^4") {
    Representation built = build_rep(w(4, {2, 0}), opts);
    CHECK(built.dim() == 4);
    CHECK(validate_rep(built).pass());
  }

  SUBCASE("anti-self-dual two-form via the exceptional split") {
    Representation built = build_rep(w(4, {2, -2}), opts);
    CHECK(built.dim() == 3);
    CHECK(validate_rep(built).pass());
    CHECK((pfaffian_element(4, built.gens) - 256.0 * ident(3)).norm() < 1e-8);
  }

  SUBCASE("negative half-odd chain on R^4") {
    Representation built = build_rep(w(4, {3, -3}), opts);
    CHECK(built.dim() == 4);
    CHECK(validate_rep(built).pass());
    CHECK((pfaffian_element(4, built.gens) - 480.0 * ident(4)).norm() < 1e-7);
  }

  SUBCASE("n = 8 stays within capacity for small weights") {
    Representation built = build_rep(w(8, {2, 0, 0, 0}), opts);
    CHECK(built.dim() == 8);
    CHECK(validate_rep(built).pass());
  }
}

TEST_CASE("representation cache") {
  const fs::path dir =
      fs::temp_directory_path() / ("gradkit-test-cache-" + std::to_string(::getpid()));
  fs::remove_all(dir);

  CHECK(cache_key(w(4, {3, -3})) == "n4_w3_-3");
  CHECK(cache_key(w(5, {2, 0})) == "n5_w2_0");

  BuildOptions opts;
  opts.cache_dir = dir.string();
  opts.memoize = false;
  Representation built = build_rep(w(5, {1, 1}), opts);
  CHECK(fs::exists(dir / "n5_w1_1" / "manifest.json"));

  Representation loaded(5, w(5, {0, 0}), std::vector<ComplexMatrix>(10));
  REQUIRE(cache_load(dir.string(), w(5, {1, 1}), &loaded));
  REQUIRE(loaded.gens.size() == built.gens.size());
  for (size_t i = 0; i < loaded.gens.size(); ++i)
    CHECK((loaded.gens[i] - built.gens[i]).norm() == 0.0); // byte-exact round trip

  CHECK_FALSE(cache_load(dir.string(), w(5, {2, 2}), &loaded));

  SUBCASE("corrupted payload is refused") {
    const fs::path victim = dir / "n5_w1_1" / "gen_003.cmat";
    std::fstream f(victim, std::ios::binary | std::ios::in | std::ios::out);
    REQUIRE(f.good());
    f.seekp(40);
    const double garbage = 1e9;
    f.write(reinterpret_cast<const char*>(&garbage), sizeof garbage);
    f.close();
    CHECK_THROWS_AS(cache_load(dir.string(), w(5, {1, 1}), &loaded), IntegrityError);
  }

  fs::remove_all(dir);
}

TEST_CASE("cmat container round trip") {
  const fs::path path =
      fs::temp_directory_path() / ("gradkit-test-" + std::to_string(::getpid()) + ".cmat");
  std::mt19937_64 rng(11);
  std::normal_distribution<double> dist;
  ComplexMatrix m(7, 3);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = std::complex<double>(dist(rng), dist(rng));
  write_cmat(path, m);
  ComplexMatrix back = read_cmat(path);
  REQUIRE(back.rows() == 7);
  REQUIRE(back.cols() == 3);
  CHECK((back - m).norm() == 0.0);

  std::ofstream(path, std::ios::binary) << "NOTCMAT1 garbage";
  CHECK_THROWS_AS(read_cmat(path), IoError);
  fs::remove(path);
}

TEST_CASE("capacity limits raise CapacityError") {
  Limits tight;
  tight.max_tensor_dim = 10;
  CHECK_THROWS_AS(tensor_with_vector(standard_rep(4, RepKind::Vector), tight), CapacityError);

  BuildOptions opts;
  opts.limits.max_n = 6;
  CHECK_THROWS_AS(build_rep(w(8, {2, 0, 0, 0}), opts), CapacityError);

  Limits nopf;
  nopf.max_pfaffian_flops = 10;
  Representation spin = standard_rep(4, RepKind::SpinorPlus);
  CHECK_THROWS_AS(pfaffian_element(4, spin.gens, nopf), CapacityError);
}
