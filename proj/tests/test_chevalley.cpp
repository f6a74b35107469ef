#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "lieval/chevalley.hpp"
#include "oracles.hpp"

using namespace lieval;

namespace {

std::vector<int> add(std::vector<int> a, const std::vector<int>& b, int k = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += k * b[i];
  return a;
}

// Largest r with beta - r alpha a root.
int string_r(const RootSystem& rs, int a, int b) {
  int r = 0;
  while (rs.index_of(add(rs.root(b).coords, rs.root(a).coords, -(r + 1))) >= 0) ++r;
  return r;
}

}  // namespace

TEST_CASE("structure constants have |N| = r + 1 and the sign symmetries") {
  for (const auto& name : {"A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"}) {
    RootSystem rs = RootSystem::parse(name);
    StructLie L = build_chevalley(rs);
    CAPTURE(name);
    const int nr = static_cast<int>(rs.num_roots());
    for (int a = 0; a < nr; ++a)
      for (int b = 0; b < nr; ++b) {
        long long N = L.structure_constant(a, b);
        bool is_root = rs.index_of(add(rs.root(a).coords, rs.root(b).coords)) >= 0;
        if (!is_root) {
          CHECK(N == 0);
          continue;
        }
        CHECK(std::llabs(N) == string_r(rs, a, b) + 1);
        CHECK(L.structure_constant(b, a) == -N);
        CHECK(L.structure_constant(rs.negative_of(a), rs.negative_of(b)) == -N);
      }
  }
}

TEST_CASE("Jacobi identity over Z and F_p") {
  for (const auto& name : {"A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"}) {
    StructLie L = build_chevalley(RootSystem::parse(name));
    CAPTURE(name);
    CHECK_FALSE(jacobi_violation(L));
    CHECK_FALSE(jacobi_violation(L, 3));
    CHECK_FALSE(jacobi_violation(L, 5));
  }
  CHECK_FALSE(jacobi_violation(build_gl(3)));
}

TEST_CASE("sl2 brackets") {
  StructLie L = build_chevalley(RootSystem('A', 1));
  REQUIRE(L.dim() == 3);
  // [X, Y] = H, [H, X] = 2X, [H, Y] = -2Y
  CHECK(L.bracket(0, 1) == ZVec{{2, 1}});
  CHECK(L.bracket(2, 0) == ZVec{{0, 2}});
  CHECK(L.bracket(2, 1) == ZVec{{1, -2}});
  CHECK(L.bracket(0, 0).empty());
}

TEST_CASE("weights are additive") {
  for (const auto& name : {"B3", "G2"}) {
    StructLie L = build_chevalley(RootSystem::parse(name));
    for (std::size_t i = 0; i < L.dim(); ++i)
      for (std::size_t j = 0; j < L.dim(); ++j)
        for (const auto& t : L.bracket(i, j)) CHECK(L.basis(t.index).weight == L.basis(i).weight + L.basis(j).weight);
  }
}

TEST_CASE("triangular pieces") {
  StructLie L = build_chevalley(RootSystem('B', 3));
  Triangular T = triangular(L);
  CHECK(T.n.size() == 9);
  CHECK(T.n_minus.size() == 9);
  CHECK(T.t.size() == 3);
  CHECK(T.b.size() == 12);
  CHECK(T.b_minus.size() == 12);
}

TEST_CASE("type A matrix realization is a Lie homomorphism") {
  for (int n : {2, 3, 4}) {
    for (bool gl : {false, true}) {
      StructLie L = gl ? build_gl(n) : build_chevalley(RootSystem('A', n - 1));
      auto rho = matrix_realization(L);
      REQUIRE(rho.size() == L.dim());
      for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = 0; j < L.dim(); ++j) {
          auto ab = oracle::matmul(rho[i], rho[j]), ba = oracle::matmul(rho[j], rho[i]);
          IntMatrix want(n, std::vector<long long>(n, 0));
          for (const auto& t : L.bracket(i, j))
            for (int r = 0; r < n; ++r)
              for (int c = 0; c < n; ++c) want[r][c] += t.coeff * rho[t.index][r][c];
          for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) CHECK(ab[r][c] - ba[r][c] == want[r][c]);
        }
    }
  }
}

TEST_CASE("gl_n weights in the standard basis") {
  StructLie G = build_gl(2);
  REQUIRE(G.has_center());
  CHECK(G.dim() == 4);
  CHECK(G.basis(0).weight == Weight(std::vector<int>{1, -1}));
  CHECK(G.basis(G.center_basis()).weight.is_zero());
}

TEST_CASE("bracket table dump is deterministic JSON") {
  StructLie L = build_chevalley(RootSystem('G', 2));
  std::string a = bracket_table_json(L), b = bracket_table_json(build_chevalley(RootSystem('G', 2)));
  CHECK(a == b);
  CHECK(a.find("\"algebra\":\"G2\"") != std::string::npos);
}
