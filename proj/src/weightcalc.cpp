#include "gradkit/weightcalc.hpp"

#include <algorithm>
#include <stdexcept>

namespace gradkit {

namespace {

Rational norm_sq(const std::vector<HalfInt>& v) {
  Rational s(0);
  for (const auto& x : v) s += x.to_rational() * x.to_rational();
  return s;
}

Rational casimir_of(int n, const std::vector<HalfInt>& coords) {
  std::vector<HalfInt> delta = delta_vector(n);
  std::vector<HalfInt> shifted = coords;
  for (size_t i = 0; i < shifted.size(); ++i) shifted[i] = shifted[i] + delta[i];
  return (norm_sq(shifted) - norm_sq(delta)) * Rational(-1, 2);
}

} // namespace

DominantWeight::DominantWeight(int n_, std::vector<HalfInt> coords_)
    : n(n_), coords(std::move(coords_)) {
  if (!is_valid(n, coords)) {
    std::string s = "(";
    for (size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + coords[i].str();
    s += ")";
    throw std::invalid_argument("not a dominant weight for n=" + std::to_string(n) + ": " + s);
  }
}

bool DominantWeight::is_valid(int n, const std::vector<HalfInt>& coords) {
  if (n < 3) return false;
  const int m = n / 2;
  if (static_cast<int>(coords.size()) != m) return false;
  const bool integral = coords[0].is_integer();
  for (const auto& c : coords)
    if (c.is_integer() != integral) return false;
  for (int i = 0; i + 1 < m; ++i)
    if (coords[i] < coords[i + 1]) return false;
  if (n % 2 == 1) {
    if (coords[m - 1] < HalfInt(0)) return false;
  } else {
    if (m >= 2 && coords[m - 2] < coords[m - 1].abs()) return false;
  }
  return true;
}

std::string DominantWeight::str() const {
  std::string s = "(";
  for (size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + coords[i].str();
  return s + ")";
}

bool lex_greater(const std::vector<HalfInt>& a, const std::vector<HalfInt>& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

std::vector<HalfInt> delta_vector(int n) {
  if (n < 3) throw std::invalid_argument("delta_vector requires n >= 3");
  const int m = n / 2;
  std::vector<HalfInt> d(m);
  if (n % 2 == 0) {
    for (int i = 0; i < m; ++i) d[i] = HalfInt(m - 1 - i);
  } else {
    for (int i = 0; i < m; ++i) d[i] = HalfInt::from_twice(2 * (m - i) - 1);
  }
  return d;
}

Rational casimir_constant(const DominantWeight& rho) {
  return casimir_of(rho.n, rho.coords);
}

long long weyl_dimension(const DominantWeight& rho) {
  const int m = rho.rank();
  std::vector<HalfInt> delta = delta_vector(rho.n);
  std::vector<Rational> l(m), d(m);
  for (int i = 0; i < m; ++i) {
    l[i] = (rho.coords[i] + delta[i]).to_rational();
    d[i] = delta[i].to_rational();
  }
  Rational dim(1);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      dim *= (l[i] - l[j]) / (d[i] - d[j]);
      dim *= (l[i] + l[j]) / (d[i] + d[j]);
    }
  }
  if (rho.n % 2 == 1) {
    for (int i = 0; i < m; ++i) dim *= l[i] / d[i];
  }
  if (!dim.is_integer() || dim.num() <= 0)
    throw std::logic_error("Weyl dimension did not reduce to a positive integer for " + rho.str());
  return dim.num();
}

std::string kind_str(ComponentKind kind, int mu_index) {
  switch (kind) {
    case ComponentKind::plus_mu: return "plus_mu(" + std::to_string(mu_index) + ")";
    case ComponentKind::minus_mu: return "minus_mu(" + std::to_string(mu_index) + ")";
    case ComponentKind::same: return "same(rho)";
    case ComponentKind::merged_pair: return "merged_pair";
  }
  return "?";
}

DecompositionTable decompose(const DominantWeight& rho) {
  const int n = rho.n;
  const int m = rho.rank();
  const bool odd = n % 2 == 1;
  const bool last_zero = rho.coords[m - 1] == HalfInt(0);

  struct Candidate {
    std::vector<HalfInt> coords;
    ComponentKind kind;
    int mu_index;
  };
  std::vector<Candidate> cands;

  auto push_shift = [&](int i, int sign) {
    std::vector<HalfInt> c = rho.coords;
    c[i] = c[i] + (sign > 0 ? HalfInt(1) : HalfInt(-1));
    cands.push_back({std::move(c), sign > 0 ? ComponentKind::plus_mu : ComponentKind::minus_mu, i + 1});
  };

  if (!odd) {
    for (int i = 0; i < m; ++i) { push_shift(i, +1); push_shift(i, -1); }
  } else if (!last_zero) {
    cands.push_back({rho.coords, ComponentKind::same, 0});
    for (int i = 0; i < m; ++i) { push_shift(i, +1); push_shift(i, -1); }
  } else {
    push_shift(m - 1, +1);
    for (int i = 0; i < m - 1; ++i) { push_shift(i, +1); push_shift(i, -1); }
  }

  DecompositionTable table{rho, {}, false, false};
  const Rational c_rho = casimir_constant(rho);
  const Rational c_ad(-(n - 1), 2); // Casimir of the n-dimensional vector component

  for (auto& cand : cands) {
    if (!DominantWeight::is_valid(n, cand.coords)) continue;
    DominantWeight lambda(n, cand.coords);

    Rational m_closed;
    if (cand.kind == ComponentKind::same) {
      m_closed = Rational(n - 1, 2);
    } else {
      const Rational ri = rho.coords[cand.mu_index - 1].to_rational();
      m_closed = cand.kind == ComponentKind::plus_mu
                     ? Rational(cand.mu_index - 1) - ri
                     : Rational(n - cand.mu_index - 1) + ri;
    }
    const Rational c_lambda = casimir_constant(lambda);
    const Rational m_casimir = c_lambda - c_rho - c_ad;
    if (m_closed != m_casimir)
      throw std::logic_error("conformal weight mismatch between closed form and Casimir route at " +
                             lambda.str());

    table.components.push_back(ComponentDescriptor{
        lambda, cand.kind, cand.mu_index, m_closed, c_lambda, weyl_dimension(lambda), std::nullopt});
  }

  // Increasing conformal weight. For weights with a non-negative last
  // coordinate this equals lexicographic descending; for mirrored weights
  // (even n, negative last coordinate) only the conformal order is monotone.
  // The exceptional pair is the single possible tie; lex puts its plus
  // component first.
  std::sort(table.components.begin(), table.components.end(),
            [](const ComponentDescriptor& a, const ComponentDescriptor& b) {
              if (a.conformal_weight != b.conformal_weight)
                return a.conformal_weight < b.conformal_weight;
              return lex_greater(a.weight.coords, b.weight.coords);
            });

  // Exceptional tables: even n, rho^{m-1} >= 1, rho^m = 0. The two components
  // shifting the last coordinate share one conformal weight; all other pairs
  // must be strictly increasing down the table.
  table.exceptional = !odd && m >= 2 && rho.coords[m - 2] >= HalfInt(1) && last_zero;
  if (table.exceptional) {
    int plus_at = -1, minus_at = -1;
    for (int i = 0; i < table.size(); ++i) {
      if (table.components[i].mu_index == m) {
        if (table.components[i].kind == ComponentKind::plus_mu) plus_at = i;
        if (table.components[i].kind == ComponentKind::minus_mu) minus_at = i;
      }
    }
    if (plus_at < 0 || minus_at < 0 || minus_at != plus_at + 1)
      throw std::logic_error("exceptional pair not adjacent in table for " + rho.str());
    if (table.components[plus_at].conformal_weight != table.components[minus_at].conformal_weight)
      throw std::logic_error("exceptional pair with unequal conformal weights for " + rho.str());
    table.components[plus_at].exceptional_partner = minus_at;
    table.components[minus_at].exceptional_partner = plus_at;
  }

  for (int i = 0; i + 1 < table.size(); ++i) {
    const auto& a = table.components[i];
    const auto& b = table.components[i + 1];
    const bool pair = table.exceptional && a.exceptional_partner == i + 1;
    if (pair ? a.conformal_weight != b.conformal_weight : !(a.conformal_weight < b.conformal_weight))
      throw std::logic_error("conformal weights not increasing down the table for " + rho.str());
  }

  long long total = 0;
  for (const auto& c : table.components) total += c.dimension;
  if (total != static_cast<long long>(n) * weyl_dimension(rho))
    throw std::logic_error("component dimensions do not add up to n*dim for " + rho.str());

  return table;
}

DecompositionTable DecompositionTable::merged_table() const {
  if (!exceptional || merged) return *this;
  DecompositionTable out{rho, {}, exceptional, true};
  for (int i = 0; i < size(); ++i) {
    const auto& c = components[i];
    if (c.exceptional_partner) {
      if (*c.exceptional_partner < i) continue; // already fused
      ComponentDescriptor fused = c;
      fused.kind = ComponentKind::merged_pair;
      fused.mu_index = 0;
      fused.dimension = c.dimension + components[*c.exceptional_partner].dimension;
      fused.exceptional_partner = std::nullopt;
      out.components.push_back(std::move(fused));
    } else {
      out.components.push_back(c);
    }
  }
  return out;
}

namespace {

/// Elementary symmetric polynomials e_0..e_k of the given values.
std::vector<Rational> elementary_symmetric(const std::vector<Rational>& vals) {
  std::vector<Rational> e(vals.size() + 1, Rational(0));
  e[0] = Rational(1);
  for (const auto& v : vals) {
    for (size_t k = e.size() - 1; k >= 1; --k) e[k] += v * e[k - 1];
  }
  return e;
}

} // namespace

VandermondeCoefficients vandermonde_coefficients(const DecompositionTable& table) {
  const int count = table.size();
  if (count < 1) throw std::domain_error("empty decomposition table");
  std::vector<Rational> nodes;
  nodes.reserve(count);
  for (const auto& c : table.components) nodes.push_back(c.conformal_weight);
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j)
      if (nodes[i] == nodes[j])
        throw std::domain_error(
            "duplicate conformal weights; merge the exceptional pair before inverting");

  const int N = count - 1;
  VandermondeCoefficients out;
  out.nodes = nodes;
  out.inverse.assign(count, std::vector<Rational>(count, Rational(0)));
  for (int i = 0; i < count; ++i) {
    std::vector<Rational> others;
    Rational denom(1);
    for (int k = 0; k < count; ++k) {
      if (k == i) continue;
      others.push_back(nodes[k]);
      denom *= nodes[i] - nodes[k];
    }
    const auto sym = elementary_symmetric(others);
    for (int j = 0; j < count; ++j) {
      const Rational sign((N - j) % 2 == 0 ? 1 : -1);
      out.inverse[i][j] = sign * sym[N - j] / denom;
    }
  }

  // Exact sanity: rows must invert the power matrix.
  for (int i = 0; i < count; ++i) {
    for (int l = 0; l < count; ++l) {
      Rational acc(0);
      for (int j = 0; j < count; ++j) acc += out.inverse[i][j] * Rational::pow(nodes[l], j);
      if (acc != Rational(i == l ? 1 : 0))
        throw std::logic_error("Vandermonde inverse failed exact verification");
    }
  }
  return out;
}

BoundReport eigenvalue_bound(const DominantWeight& rho, const Rational& r) {
  if (!(r > Rational(0))) throw std::invalid_argument("curvature floor r must be positive");
  const DecompositionTable table = decompose(rho).merged_table();
  if (table.size() < 2)
    throw std::domain_error("eigenvalue bound needs at least two components; " + rho.str() +
                            " has a single one");
  const Rational m_top = table.components.front().conformal_weight;
  const Rational m_bottom = table.components.back().conformal_weight;
  if (!(m_top < Rational(0)) || !(m_bottom > Rational(0)))
    throw std::logic_error("unexpected conformal weight signs in bound for " + rho.str());
  const Rational c = casimir_constant(rho);
  const Rational bound = (m_top - m_bottom) / (m_top * m_bottom) * (Rational(-2) * r * c);
  if (!(bound > Rational(0))) throw std::logic_error("bound failed positivity for " + rho.str());
  return BoundReport{rho, r, m_top, m_bottom, c, bound};
}

std::vector<DominantWeight> enumerate_dominant_weights(int n, HalfInt max_first) {
  const int m = n / 2;
  std::vector<DominantWeight> out;
  std::vector<HalfInt> cur(m);

  auto descend = [&](auto&& self, int pos, long long parity) -> void {
    if (pos == m) {
      if (DominantWeight::is_valid(n, cur)) out.emplace_back(n, cur);
      return;
    }
    long long hi = pos == 0 ? max_first.twice() : cur[pos - 1].twice();
    if (((hi % 2) + 2) % 2 != parity) hi -= 1;
    const bool signed_last = (n % 2 == 0) && pos == m - 1;
    const long long lo = signed_last ? -hi : parity;
    for (long long t = hi; t >= lo; t -= 2) {
      cur[pos] = HalfInt::from_twice(t);
      self(self, pos + 1, parity);
    }
  };

  for (long long parity : {0LL, 1LL}) descend(descend, 0, parity);

  std::sort(out.begin(), out.end(), [](const DominantWeight& a, const DominantWeight& b) {
    if (a.half_odd() != b.half_odd()) return !a.half_odd();
    return lex_greater(a.coords, b.coords);
  });
  return out;
}

nlohmann::json weight_to_json(const DominantWeight& w) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : w.coords) arr.push_back(c.str());
  return arr;
}

nlohmann::json table_to_json(const DecompositionTable& table) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : table.components) {
    comps.push_back({{"weight", weight_to_json(c.weight)},
                     {"conformal_weight", c.conformal_weight.str()},
                     {"casimir", c.casimir.str()},
                     {"dimension", c.dimension},
                     {"kind", kind_str(c.kind, c.mu_index)}});
  }
  return {{"n", table.rho.n},
          {"rho", weight_to_json(table.rho)},
          {"components", comps},
          {"exceptional", table.exceptional},
          {"merged", table.merged}};
}

nlohmann::json vandermonde_to_json(const VandermondeCoefficients& v) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& x : v.nodes) nodes.push_back(x.str());
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : v.inverse) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& x : row) r.push_back(x.str());
    rows.push_back(r);
  }
  return {{"nodes", nodes}, {"inverse", rows}};
}

nlohmann::json bound_to_json(const BoundReport& report) {
  return {{"n", report.rho.n},
          {"rho", weight_to_json(report.rho)},
          {"r", report.r.str()},
          {"m_top", report.m_top.str()},
          {"m_bottom", report.m_bottom.str()},
          {"casimir", report.casimir.str()},
          {"bound", report.bound.str()}};
}

} // namespace gradkit
