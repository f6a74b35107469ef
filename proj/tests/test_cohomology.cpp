#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "lieval/cohomology.hpp"
#include "oracles.hpp"

using namespace lieval;

namespace {

// Brute-force Chevalley-Eilenberg cohomology: dense cochain spaces, the
// differential evaluated straight from the defining formula, ranks by
// textbook elimination. Returns dims[q], restricted to cochains of weight
// zero when zero_only is set.
std::vector<long long> brute_ce(const FiniteGradedLie& h, const CEModule& V, bool zero_only) {
  const int n = static_cast<int>(h.dim());
  const int m = static_cast<int>(V.dim());
  const Fq& F = h.field();
  std::vector<std::vector<std::pair<std::uint32_t, int>>> cells(n + 1);
  for (std::uint32_t S = 0; S < (1u << n); ++S) {
    int q = std::popcount(S);
    for (int v = 0; v < m; ++v) {
      Weight w = V.weights[v];
      for (int a = 0; a < n; ++a)
        if (S >> a & 1) w -= h.basis(a).weight;
      if (zero_only && !w.is_zero()) continue;
      cells[q].push_back({S, v});
    }
  }
  auto pos_of = [&](int q, std::uint32_t S, int v) -> long {
    auto it = std::find(cells[q].begin(), cells[q].end(), std::make_pair(S, v));
    return it == cells[q].end() ? -1 : it - cells[q].begin();
  };
  std::vector<std::size_t> rk(n + 2, 0);
  for (int q = 0; q < n; ++q) {
    // rows: degree q+1 cells, columns: degree q cells
    std::vector<std::vector<Elem>> M(cells[q + 1].size(), std::vector<Elem>(cells[q].size(), 0));
    for (std::size_t col = 0; col < cells[q].size(); ++col) {
      auto [S, v] = cells[q][col];
      for (std::uint32_t T = 0; T < (1u << n); ++T) {
        if (std::popcount(T) != q + 1) continue;
        std::vector<int> t;
        for (int a = 0; a < n; ++a)
          if (T >> a & 1) t.push_back(a);
        std::vector<Elem> out(m, 0);
        for (int i = 0; i <= q; ++i)
          for (int j = i + 1; j <= q; ++j) {
            std::uint32_t R = T & ~(1u << t[i]) & ~(1u << t[j]);
            for (const auto& term : h.bracket(t[i], t[j])) {
              int k = term.index;
              if (R >> k & 1) continue;
              if ((R | (1u << k)) != S) continue;
              int below = std::popcount(R & ((1u << k) - 1));
              bool neg = ((i + j) + below) % 2;
              Elem c = neg ? F.neg(term.coeff) : term.coeff;
              out[v] = F.add(out[v], c);
            }
          }
        for (int i = 0; i <= q; ++i) {
          if ((T & ~(1u << t[i])) != S) continue;
          for (const auto& term : V.act(t[i], v)) {
            Elem c = i % 2 ? F.neg(term.coeff) : term.coeff;
            out[term.index] = F.add(out[term.index], c);
          }
        }
        for (int w = 0; w < m; ++w) {
          if (!out[w]) continue;
          long row = pos_of(q + 1, T, w);
          REQUIRE(row >= 0);
          M[row][col] = out[w];
        }
      }
    }
    rk[q + 1] = oracle::dense_rank(M, F);
  }
  std::vector<long long> dims(n + 1);
  for (int q = 0; q <= n; ++q)
    dims[q] = static_cast<long long>(cells[q].size()) - static_cast<long long>(rk[q + 1]) -
              static_cast<long long>(rk[q]);
  return dims;
}

std::vector<long long> by_degree(const CohomologyTable& T, int top) {
  std::vector<long long> d(top + 1, 0);
  for (const auto& [key, v] : T.dims) d[key.first] += v;
  return d;
}

Weight zero_of(const FiniteGradedLie& h) { return Weight(h.basis(0).weight.size()); }

}  // namespace

TEST_CASE("polynomial helpers") {
  CHECK(poly_mul({1, 1}, {1, 1}) == Poly{1, 2, 1});
  CHECK(poly_pow({1, 1}, 3) == Poly{1, 3, 3, 1});
  CHECK(poly_trim({1, 0, 0}) == Poly{1});
  CHECK(exterior_poincare({1, 2}) == Poly{1, 0, 0, 1, 0, 1, 0, 0, 1});
  CHECK(poly_str({1, 0, 0, 2}) == "1 + 2t^3");
}

TEST_CASE("CE cohomology against the brute-force oracle, trivial coefficients") {
  for (const auto& name : {"A1", "A2", "B2"}) {
    CAPTURE(name);
    StructLie L = build_chevalley(RootSystem::parse(name));
    FiniteGradedLie gb = build_gbar(L, 5);
    CEModule k = trivial_module(gb, zero_of(gb));
    CEComplex all = ce_complex(gb, k, WeightFilter::all());
    CHECK(by_degree(cohomology_dims(all), gb.dim()) == brute_ce(gb, k, false));
    CEComplex zero = ce_complex(gb, k, WeightFilter::zero());
    CHECK(by_degree(cohomology_dims(zero), gb.dim()) == brute_ce(gb, k, true));
  }
}

TEST_CASE("CE cohomology against the brute-force oracle, nontrivial coefficients") {
  for (const auto& name : {"A2", "B2", "G2"}) {
    CAPTURE(name);
    StructLie L = build_chevalley(RootSystem::parse(name));
    Triangular T = triangular(L);
    FiniteGradedLie n = subalgebra(L, T.n, 7, "n");
    CEModule gb_dual = dual_module(n, quotient_module(L, n, T.b));
    for (int j = 0; j <= 2; ++j) {
      CEModule E = exterior_power(n, gb_dual, j);
      CEComplex C = ce_complex(n, E, WeightFilter::all());
      CHECK(check_d_squared(C).ok);
      CHECK(by_degree(cohomology_dims(C), n.dim()) == brute_ce(n, E, false));
    }
    CEModule adj = quotient_module(L, n, {});
    CEComplex C = ce_complex(n, adj, WeightFilter::all());
    CHECK(by_degree(cohomology_dims(C), n.dim()) == brute_ce(n, adj, false));
  }
}

TEST_CASE("d^2 = 0 and Euler characteristic on every block") {
  for (const auto& name : {"A2", "B2", "G2", "A3"}) {
    CAPTURE(name);
    StructLie L = build_chevalley(RootSystem::parse(name));
    FiniteGradedLie gb = build_gbar(L, 7);
    CEComplex C = ce_complex(gb, trivial_module(gb, zero_of(gb)), WeightFilter::all());
    CHECK(check_d_squared(C).ok);
    CHECK(check_euler(C, cohomology_dims(C)).ok);
  }
}

TEST_CASE("weight-zero Poincare polynomials") {
  for (auto [name, p] : std::vector<std::pair<std::string, std::uint32_t>>{
           {"A1", 5}, {"A2", 5}, {"B2", 7}, {"G2", 11}, {"A3", 7}}) {
    CAPTURE(name);
    RootSystem rs = RootSystem::parse(name);
    CohomologyTable T = gbar_cohomology(build_chevalley(rs), p);
    CHECK(poly_trim(T.poincare()) == exterior_poincare(rs.exponents()));
  }
}

TEST_CASE("module validation") {
  StructLie L = build_chevalley(RootSystem('A', 1));
  FiniteGradedLie gb = build_gbar(L, 5);
  // X acting on a one-dimensional module of weight 0 with a nonzero value breaks weights
  std::vector<FpVec> action(gb.dim(), FpVec{});
  action[0] = FpVec{{0, 1}};
  CHECK_THROWS_AS(make_module(gb, "bad", {"v"}, {Weight(1)}, action), ModuleError);
}

TEST_CASE("Kostant") {
  for (auto [name, p, total] : std::vector<std::tuple<std::string, std::uint32_t, long long>>{
           {"A1", 5, 2}, {"A2", 5, 6}, {"B2", 7, 8}, {"G2", 5, 12}, {"A3", 5, 24}, {"B3", 7, 48}, {"C3", 7, 48}}) {
    CAPTURE(name);
    RootSystem rs = RootSystem::parse(name);
    KostantReport r = kostant_check(rs, p, Weight(static_cast<std::size_t>(rs.rank())));
    CHECK(r.ok);
    CHECK(r.hypothesis_ok);
    CHECK(r.total == total);
    for (const auto& [q, ws] : r.computed) CHECK(static_cast<long long>(ws.size()) == rs.length_polynomial()[q]);
  }
  // twisted by a weight
  RootSystem a2('A', 2);
  KostantReport r = kostant_check(a2, 5, Weight(std::vector<int>{1, 1}));
  CHECK(r.ok);
  CHECK(r.total == 6);
}

TEST_CASE("Hodge dimensions") {
  for (auto [name, p] : std::vector<std::pair<std::string, std::uint32_t>>{{"A1", 5}, {"A2", 5}, {"B2", 7}, {"G2", 7}}) {
    CAPTURE(name);
    RootSystem rs = RootSystem::parse(name);
    HodgeReport r = hodge_dims_check(rs, p);
    CHECK(r.ok);
    auto lp = rs.length_polynomial();
    for (std::size_t i = 0; i < r.dims.size(); ++i)
      for (std::size_t j = 0; j < r.dims[i].size(); ++j)
        CHECK(r.dims[i][j] == (i == j && i < lp.size() ? lp[i] : 0));
  }
}

TEST_CASE("semidirect degeneration and its zero-action control") {
  for (const auto& name : {"A1", "A2"}) {
    CAPTURE(name);
    StructLie L = build_chevalley(RootSystem::parse(name));
    SemidirectReport r = semidirect_degeneration_check(L, 5);
    CHECK(r.ok);
    CHECK(r.lhs == r.rhs);
    SemidirectReport c = semidirect_degeneration_check(L, 5, true);
    CHECK_FALSE(c.ok);
  }
  SemidirectReport a1 = semidirect_degeneration_check(build_chevalley(RootSystem('A', 1)), 5);
  CHECK(poly_trim(a1.lhs) == Poly{1, 2, 2, 1});
}

TEST_CASE("cup product generators") {
  for (auto [name, p, degs] : std::vector<std::tuple<std::string, std::uint32_t, std::vector<int>>>{
           {"A1", 5, {3}}, {"A2", 5, {3, 5}}, {"B2", 7, {3, 7}}, {"G2", 11, {3, 11}}, {"A3", 7, {3, 5, 7}}}) {
    CAPTURE(name);
    StructLie L = build_chevalley(RootSystem::parse(name));
    FiniteGradedLie gb = build_gbar(L, p);
    CEComplex C = ce_complex(gb, trivial_module(gb, zero_of(gb)), WeightFilter::zero());
    RingCertificate cert = cup_structure(C);
    CHECK(cert.ok);
    auto got = cert.generator_degrees;
    std::sort(got.begin(), got.end());
    CHECK(got == degs);
  }
}

TEST_CASE("lattices") {
  Lattice s = Lattice::scaled(2, 4);
  CHECK(s.index() == 16);
  CHECK(s.contains(Weight(std::vector<int>{4, -8})));
  CHECK_FALSE(s.contains(Weight(std::vector<int>{2, 0})));
  Lattice m({{2, 1}, {0, 3}});
  CHECK(m.index() == 6);
  // columns (2, 0) and (1, 3)
  CHECK(m.contains(Weight(std::vector<int>{3, 3})));
  CHECK_FALSE(m.contains(Weight(std::vector<int>{1, 0})));
  CHECK_THROWS(Lattice({{1, 2}, {2, 4}}));
}

TEST_CASE("Kunneth twist for the split case") {
  StructLie L = build_chevalley(RootSystem('A', 1));
  CohomologyTable all = gbar_cohomology(L, 5, WeightFilter::all());
  CohomologyTable t = kunneth_twist(all, 2, Lattice::scaled(1, 24));
  CHECK(poly_trim(t.poincare()) == poly_pow(exterior_poincare({1}), 2));
  CHECK_THROWS(kunneth_twist(gbar_cohomology(L, 5), 2, Lattice::scaled(1, 24)));
}

TEST_CASE("dimension tables do not depend on the basis order") {
  for (const auto& name : {"A2", "B2"}) {
    StructLie L = build_chevalley(RootSystem::parse(name));
    FiniteGradedLie gb = build_gbar(L, 5);
    CohomologyTable ref = cohomology_dims(ce_complex(gb, trivial_module(gb, zero_of(gb)), WeightFilter::all()));
    std::mt19937_64 rng(9);
    for (int t = 0; t < 3; ++t) {
      std::vector<int> perm(gb.dim());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      FiniteGradedLie q = gb.permuted(perm);
      CohomologyTable got = cohomology_dims(ce_complex(q, trivial_module(q, zero_of(q)), WeightFilter::all()));
      CHECK(got.dims == ref.dims);
    }
  }
}

TEST_CASE("reruns are byte-identical") {
  StructLie L = build_chevalley(RootSystem('G', 2));
  std::string a = gbar_cohomology(L, 11).to_json();
  std::string b = gbar_cohomology(L, 11).to_json();
  CHECK(a == b);
  CHECK(gbar_cohomology(L, 11).to_csv().rfind("degree,weight,dim\n", 0) == 0);
}

TEST_CASE("weight filters") {
  Weight z(2), w(std::vector<int>{1, 0});
  CHECK(WeightFilter::all().accepts(w));
  CHECK(WeightFilter::zero().accepts(z));
  CHECK_FALSE(WeightFilter::zero().accepts(w));
  CHECK(WeightFilter::only({w}).accepts(w));
  CHECK_FALSE(WeightFilter::only({w}).accepts(z));
}
