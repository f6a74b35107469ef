#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "lieval/padicgroups.hpp"

using namespace lieval;

TEST_CASE("root elements and omega on SL_2") {
  SLn G(2, 5, 12);
  int a = *G.root_at(0, 1), b = *G.root_at(1, 0);
  PadicMatrix u = G.root_element(a, 0, 1);
  CHECK(u == G.from_ints({{1, G.root_sign(a)}, {0, 1}}));
  CHECK(G.omega(u).value == Rational(1, 2));
  CHECK(G.omega(G.root_element(b, 1, 1)).value == Rational(1, 2));
  CHECK(G.omega(G.coroot_element(0, 6)).value == Rational(1));
  CHECK(G.omega(G.identity()).infinite());
  CHECK_THROWS(G.root_element(b, 0, 1));
  CHECK(G.det(G.mul(u, G.root_element(b, 2, 3))) == 1);
}

TEST_CASE("symbols on SL_2") {
  SLn G(2, 5, 12);
  int a = *G.root_at(0, 1), b = *G.root_at(1, 0);
  SymbolVector s = G.symbol(G.root_element(a, 0, 3));
  CHECK(s.degree == Rational(1, 2));
  CHECK(G.symbol_str(s).find("3") != std::string::npos);
  SymbolVector h = G.symbol(G.coroot_element(0, 11));
  CHECK(h.degree == Rational(1));
  CHECK(std::count(h.coords.begin(), h.coords.end(), 2) == 1);
  // u_alpha(1) u_{-alpha}(p^2) has the symbol of u_alpha(1)
  SymbolVector m = G.symbol(G.mul(G.root_element(a, 0, 1), G.root_element(b, 2, 1)));
  CHECK(m == G.symbol(G.root_element(a, 0, 1)));
}

TEST_CASE("omega on SL_3") {
  SLn G(3, 7, 12);
  int r = *G.root_at(2, 0);
  CHECK(G.omega(G.root_element(r, 1, 1)).value == Rational(1, 3));
}

TEST_CASE("Iwahori factorization round trip and entrywise omega") {
  for (int n : {2, 3, 4}) {
    SLn G(n, 7, 12);
    std::mt19937_64 rng(static_cast<std::uint64_t>(n));
    for (int t = 0; t < 200; ++t) {
      PadicMatrix g = random_iwahori_element(G, rng);
      CHECK(G.in_I1(g));
      CHECK(G.det(g) == 1);
      CHECK(G.multiply_back(G.iwahori_factor(g)) == g);
      CHECK(G.mul(g, G.inverse(g)) == G.identity());
      if (g == G.identity()) continue;
      CHECK(G.omega(g) == G.omega_entrywise(g));
    }
  }
}

TEST_CASE("not in the pro-p Iwahori") {
  SLn G(2, 5, 8);
  CHECK_FALSE(G.in_I1(G.from_ints({{2, 0}, {0, 3}})));
  CHECK_FALSE(G.in_I1(G.from_ints({{1, 0}, {1, 1}})));
}

TEST_CASE("precision limit") {
  SLn G(2, 5, 3);
  // omega above N - 1 cannot be certified
  CHECK_THROWS_AS(G.omega(G.root_element(*G.root_at(0, 1), 2, 1)), PrecisionError);
  CHECK(G.omega(G.coroot_element(0, 26)).value == Rational(2));
}

TEST_CASE("explicit SL_2 commutator") {
  for (std::uint32_t p : {5u, 7u}) {
    MPReport r = verify_sl2_commutator(p, 12);
    CHECK(r.ok());
    CHECK(r.trials == 4);
  }
}

TEST_CASE("group-level suites") {
  for (int n : {2, 3})
    for (std::uint32_t p : {5u, 7u}) {
      CAPTURE(n);
      CAPTURE(p);
      MPReport om = verify_omega_values(n, p, 12);
      CHECK(om.ok());
      MPReport sb = verify_symbol_bracket(n, p, 12, 200, 1);
      CHECK(sb.ok());
      CHECK(sb.precision_flags == 0);
      MPReport ep = verify_epsilon(n, p, 12, 200, 2);
      CHECK(ep.ok());
      MPReport pv = verify_pvaluation_axioms(n, p, 12, 200, 3);
      CHECK(pv.ok());
      CHECK(pv.trials >= 200);
    }
}

TEST_CASE("hypotheses") {
  CHECK_THROWS_AS(verify_symbol_bracket(3, 3, 12, 10, 1), HypothesisError);
  CHECK_THROWS_AS(verify_symbol_bracket(2, 5, 6, 10, 1), HypothesisError);
  CHECK_THROWS_AS(verify_epsilon(2, 3, 12, 10, 1), HypothesisError);
  CHECK_THROWS_AS(verify_pvaluation_axioms(3, 2, 12, 10, 1), HypothesisError);
}

TEST_CASE("reports are deterministic") {
  MPReport a = verify_epsilon(2, 5, 12, 100, 42), b = verify_epsilon(2, 5, 12, 100, 42);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_json().find("\"seed\":42") != std::string::npos);
}
