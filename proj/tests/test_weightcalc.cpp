#include "gradkit/weightcalc.hpp"

#include <doctest.h>

#include <set>

using namespace gradkit;

namespace {

DominantWeight w(int n, std::vector<long long> twice) {
  std::vector<HalfInt> coords;
  for (long long t : twice) coords.push_back(HalfInt::from_twice(t));
  return DominantWeight(n, coords);
}

} // namespace

TEST_CASE("half integer parsing") {
  CHECK(HalfInt::parse("3").twice() == 6);
  CHECK(HalfInt::parse("-2").twice() == -4);
  CHECK(HalfInt::parse("3/2").twice() == 3);
  CHECK(HalfInt::parse("-1/2").twice() == -1);
  CHECK(HalfInt::parse("5/1").twice() == 10);
  CHECK_THROWS_AS(HalfInt::parse("2/4"), std::invalid_argument);
  CHECK_THROWS_AS(HalfInt::parse("4/2"), std::invalid_argument); // not lowest terms
  CHECK_THROWS_AS(HalfInt::parse("1/3"), std::invalid_argument);
  CHECK_THROWS_AS(HalfInt::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(HalfInt::parse(""), std::invalid_argument);
  CHECK(HalfInt::parse("3/2").str() == "3/2");
  CHECK(HalfInt::parse("-4").str() == "-4");
}

TEST_CASE("rational arithmetic stays reduced") {
  Rational a(6, -4);
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(2, 3) * Rational(9, 4)) == Rational(3, 2));
  CHECK(Rational::pow(Rational(-1, 2), 3) == Rational(-1, 8));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(Rational(-7, 2).str() == "-7/2");
}

TEST_CASE("dominant weight validation") {
  CHECK(DominantWeight::is_valid(5, {HalfInt(2), HalfInt(1)}));
  CHECK(DominantWeight::is_valid(5, {HalfInt::from_twice(3), HalfInt::from_twice(1)}));
  CHECK_FALSE(DominantWeight::is_valid(5, {HalfInt(1), HalfInt(2)}));   // not decreasing
  CHECK_FALSE(DominantWeight::is_valid(5, {HalfInt(1), HalfInt(-1)}));  // odd n, last < 0
  CHECK_FALSE(DominantWeight::is_valid(5, {HalfInt(1), HalfInt::half()})); // mixed parity
  CHECK(DominantWeight::is_valid(4, {HalfInt(1), HalfInt(-1)}));        // even n, signed last
  CHECK_FALSE(DominantWeight::is_valid(4, {HalfInt(1), HalfInt(-2)}));
  CHECK_FALSE(DominantWeight::is_valid(5, {HalfInt(1)}));               // wrong rank
  CHECK_THROWS_AS(DominantWeight(5, {HalfInt(1), HalfInt(2)}), std::invalid_argument);
}

TEST_CASE("delta vector") {
  auto d6 = delta_vector(6);
  REQUIRE(d6.size() == 3);
  CHECK(d6[0] == HalfInt(2));
  CHECK(d6[2] == HalfInt(0));
  auto d7 = delta_vector(7);
  REQUIRE(d7.size() == 3);
  CHECK(d7[0] == HalfInt::from_twice(5));
  CHECK(d7[2] == HalfInt::from_twice(1));
}

TEST_CASE("casimir frozen values") {
  // Vector weight: -(n-1)/2 for every n, both parities of n.
  CHECK(casimir_constant(w(4, {2, 0})) == Rational(-3, 2));
  CHECK(casimir_constant(w(5, {2, 0})) == Rational(-2));
  CHECK(casimir_constant(w(6, {2, 0, 0})) == Rational(-5, 2));
  CHECK(casimir_constant(w(7, {2, 0, 0})) == Rational(-3));
  // Spin weight: -n(n-1)/16.
  CHECK(casimir_constant(w(3, {1})) == Rational(-3, 8));
  CHECK(casimir_constant(w(5, {1, 1})) == Rational(-5, 4));
  CHECK(casimir_constant(w(7, {1, 1, 1})) == Rational(-21, 8));
  CHECK(casimir_constant(w(4, {1, -1})) == Rational(-3, 4));
  // Trivial weight sits at zero, everything else below.
  CHECK(casimir_constant(w(6, {0, 0, 0})) == Rational(0));
  CHECK(casimir_constant(w(4, {4, 4})) == Rational(-6)); // two-form weight (2,2)
}

TEST_CASE("weyl dimension frozen values") {
  CHECK(weyl_dimension(w(5, {0, 0})) == 1);
  CHECK(weyl_dimension(w(5, {2, 0})) == 5);
  CHECK(weyl_dimension(w(7, {2, 0, 0})) == 7);
  CHECK(weyl_dimension(w(3, {1})) == 2);
  CHECK(weyl_dimension(w(5, {1, 1})) == 4);
  CHECK(weyl_dimension(w(7, {1, 1, 1})) == 8);
  CHECK(weyl_dimension(w(4, {1, 1})) == 2);
  CHECK(weyl_dimension(w(4, {1, -1})) == 2);
  CHECK(weyl_dimension(w(6, {2, 2, 0})) == 15);
  CHECK(weyl_dimension(w(6, {2, 2, 2})) == 10);
  CHECK(weyl_dimension(w(6, {2, 2, -2})) == 10);
  CHECK(weyl_dimension(w(5, {3, 1})) == 16);
  CHECK(weyl_dimension(w(4, {4, 0})) == 9); // (2,0)
  CHECK(weyl_dimension(w(4, {4, 2})) == 8); // spins (3/2, 1/2) under su(2) x su(2)
  CHECK(weyl_dimension(w(7, {4, 4, 2})) == 378);
  CHECK(weyl_dimension(w(7, {4, 4, 4})) == 294);
  CHECK(weyl_dimension(w(7, {3, 3, 3})) == 112);
  CHECK(weyl_dimension(w(8, {1, 1, 1, 1})) == 8);
  CHECK(weyl_dimension(w(8, {1, 1, 1, -1})) == 8);
}

TEST_CASE("branching table: odd n spinor") {
  auto table = decompose(w(5, {1, 1}));
  REQUIRE(table.size() == 2);
  CHECK_FALSE(table.exceptional);
  CHECK(table.components[0].weight == w(5, {3, 1}));
  CHECK(table.components[0].kind == ComponentKind::plus_mu);
  CHECK(table.components[0].mu_index == 1);
  CHECK(table.components[0].conformal_weight == Rational(-1, 2));
  CHECK(table.components[0].dimension == 16);
  CHECK(table.components[1].weight == w(5, {1, 1}));
  CHECK(table.components[1].kind == ComponentKind::same);
  CHECK(table.components[1].conformal_weight == Rational(2));
  CHECK(table.components[1].dimension == 4);
}

TEST_CASE("branching table: odd n, integer weight with trailing zero") {
  // rho (x) R^n never repeats rho when the last coordinate vanishes; instead
  // the +mu_m component steps in.
  auto table = decompose(w(5, {2, 0}));
  REQUIRE(table.size() == 3);
  CHECK(table.components[0].weight == w(5, {4, 0}));
  CHECK(table.components[0].conformal_weight == Rational(-1));
  CHECK(table.components[0].dimension == 14);
  CHECK(table.components[1].weight == w(5, {2, 2}));
  CHECK(table.components[1].kind == ComponentKind::plus_mu);
  CHECK(table.components[1].mu_index == 2);
  CHECK(table.components[1].conformal_weight == Rational(1));
  CHECK(table.components[1].dimension == 10);
  CHECK(table.components[2].weight == w(5, {0, 0}));
  CHECK(table.components[2].conformal_weight == Rational(4));
  CHECK(table.components[2].dimension == 1);
}

TEST_CASE("branching table: exceptional pair") {
  auto table = decompose(w(4, {2, 0}));
  REQUIRE(table.size() == 4);
  CHECK(table.exceptional);
  CHECK(table.components[0].weight == w(4, {4, 0}));
  CHECK(table.components[0].conformal_weight == Rational(-1));
  CHECK(table.components[1].weight == w(4, {2, 2}));
  CHECK(table.components[2].weight == w(4, {2, -2}));
  CHECK(table.components[1].conformal_weight == Rational(1));
  CHECK(table.components[2].conformal_weight == Rational(1));
  CHECK(table.components[1].exceptional_partner == 2);
  CHECK(table.components[2].exceptional_partner == 1);
  CHECK(table.components[3].weight == w(4, {0, 0}));
  CHECK(table.components[3].conformal_weight == Rational(3));

  auto merged = table.merged_table();
  REQUIRE(merged.size() == 3);
  CHECK(merged.merged);
  CHECK(merged.components[1].kind == ComponentKind::merged_pair);
  CHECK(merged.components[1].dimension == 6);
  CHECK(merged.components[1].conformal_weight == Rational(1));
}

TEST_CASE("branching table: even n spinor") {
  // Even n keeps only the dominant rho +- mu_i; rho itself never recurs.
  auto table = decompose(w(6, {1, 1, 1}));
  REQUIRE(table.size() == 2);
  CHECK_FALSE(table.exceptional);
  CHECK(table.components[0].weight == w(6, {3, 1, 1}));
  CHECK(table.components[0].dimension == 20);
  CHECK(table.components[0].conformal_weight == Rational(-1, 2));
  CHECK(table.components[1].weight == w(6, {1, 1, -1}));
  CHECK(table.components[1].dimension == 4);
  CHECK(table.components[1].kind == ComponentKind::minus_mu);
  CHECK(table.components[1].mu_index == 3);
  CHECK(table.components[1].conformal_weight == Rational(5, 2));
}

TEST_CASE("branching properties over a grid") {
  for (int n = 3; n <= 8; ++n) {
    for (const auto& rho : enumerate_dominant_weights(n, HalfInt(2))) {
      auto table = decompose(rho);
      long long total = 0;
      for (const auto& comp : table.components) total += comp.dimension;
      CHECK(total == static_cast<long long>(n) * weyl_dimension(rho));

      // Conformal weights strictly increase down the table except on the
      // exceptional pair, which shares one value on adjacent columns.
      for (int i = 0; i + 1 < table.size(); ++i) {
        const auto &a = table.components[i], &b = table.components[i + 1];
        if (a.exceptional_partner && b.exceptional_partner)
          CHECK(a.conformal_weight == b.conformal_weight);
        else
          CHECK(a.conformal_weight < b.conformal_weight);
      }

      // Both conformal weight routes: closed form against the Casimir shift.
      for (const auto& comp : table.components) {
        Rational via_casimir = comp.casimir - casimir_constant(rho) + Rational(n - 1, 2);
        CHECK(comp.conformal_weight == via_casimir);
      }

      // The last column never belongs to the pair.
      if (table.exceptional) {
        CHECK_FALSE(table.components[table.size() - 1].exceptional_partner.has_value());
        CHECK(table.merged_table().size() == table.size() - 1);
      }
    }
  }
}

TEST_CASE("vandermonde coefficients") {
  SUBCASE("frozen 2x2 inverse for the odd spinor table") {
    auto v = vandermonde_coefficients(decompose(w(5, {1, 1})));
    REQUIRE(v.nodes.size() == 2);
    CHECK(v.nodes[0] == Rational(-1, 2));
    CHECK(v.nodes[1] == Rational(2));
    CHECK(v.inverse[0][0] == Rational(4, 5));
    CHECK(v.inverse[0][1] == Rational(-2, 5));
    CHECK(v.inverse[1][0] == Rational(1, 5));
    CHECK(v.inverse[1][1] == Rational(2, 5));
  }

  SUBCASE("rows reproduce Lagrange evaluation exactly") {
    auto table = decompose(w(6, {4, 2, 2})).merged_table();
    auto v = vandermonde_coefficients(table);
    const int N = static_cast<int>(v.nodes.size());
    for (int k = 0; k < N; ++k)
      for (int j = 0; j < N; ++j) {
        Rational acc(0);
        for (int q = 0; q < N; ++q) acc += v.inverse[k][q] * Rational::pow(v.nodes[j], q);
        CHECK(acc == Rational(k == j ? 1 : 0));
      }
  }

  SUBCASE("duplicate nodes are rejected until merged") {
    auto table = decompose(w(4, {2, 0}));
    CHECK_THROWS_AS(vandermonde_coefficients(table), std::domain_error);
    CHECK_NOTHROW(vandermonde_coefficients(table.merged_table()));
  }
}

TEST_CASE("eigenvalue bound") {
  SUBCASE("k-form weights give k(n-k+1) r exactly") {
    for (int n = 3; n <= 8; ++n) {
      const int m = n / 2;
      for (int k = 1; k <= m; ++k) {
        std::vector<long long> twice(m, 0);
        for (int i = 0; i < k; ++i) twice[i] = 2;
        auto report = eigenvalue_bound(w(n, twice), Rational(1));
        CHECK(report.bound == Rational(static_cast<long long>(k) * (n - k + 1)));
        auto scaled = eigenvalue_bound(w(n, twice), Rational(3, 7));
        CHECK(scaled.bound == Rational(static_cast<long long>(k) * (n - k + 1)) * Rational(3, 7));
      }
    }
  }

  SUBCASE("frozen values") {
    auto spinor5 = eigenvalue_bound(w(5, {1, 1}), Rational(1));
    CHECK(spinor5.bound == Rational(25, 4));
    CHECK(spinor5.m_top == Rational(-1, 2));
    CHECK(spinor5.m_bottom == Rational(2));
    CHECK(eigenvalue_bound(w(6, {2, 2, 0}), Rational(1)).bound == Rational(10));
    // Self-dual two-form weights (k,k) on n = 4: 2r(2k+1).
    for (long long k = 1; k <= 3; ++k)
      CHECK(eigenvalue_bound(w(4, {2 * k, 2 * k}), Rational(1, 2)).bound == Rational(2 * k + 1));
  }

  SUBCASE("rejects bad input") {
    CHECK_THROWS_AS(eigenvalue_bound(w(5, {1, 1}), Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(eigenvalue_bound(w(5, {1, 1}), Rational(-1)), std::invalid_argument);
  }
}

TEST_CASE("dominant weight enumeration") {
  auto list4 = enumerate_dominant_weights(4, HalfInt(2));
  CHECK(list4.size() == 15);
  std::set<std::string> seen;
  for (const auto& x : list4) {
    CHECK(DominantWeight::is_valid(x.n, x.coords));
    CHECK(x.coords[0] <= HalfInt(2));
    seen.insert(x.str());
  }
  CHECK(seen.size() == list4.size());

  auto has = [&](std::vector<long long> twice) {
    DominantWeight probe = w(4, std::move(twice));
    for (const auto& x : list4)
      if (x == probe) return true;
    return false;
  };
  CHECK(has({0, 0}));
  CHECK(has({4, -4}));
  CHECK(has({3, -1}));

  // Odd n: no signed last coordinate.
  for (const auto& x : enumerate_dominant_weights(5, HalfInt::from_twice(3)))
    CHECK(x.coords.back() >= HalfInt(0));
}

TEST_CASE("json emitters") {
  auto table = decompose(w(4, {2, 0}));
  auto j = table_to_json(table);
  CHECK(j["n"] == 4);
  CHECK(j["exceptional"] == true);
  CHECK(j["components"].size() == 4);
  CHECK(j["components"][0]["weight"][0] == "2");
  CHECK(j["components"][1]["conformal_weight"] == "1");

  auto b = bound_to_json(eigenvalue_bound(w(5, {1, 1}), Rational(1)));
  CHECK(b["bound"] == "25/4");
  CHECK(b["r"] == "1");
}
