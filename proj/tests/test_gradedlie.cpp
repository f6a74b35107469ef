#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>

#include "lieval/gradedlie.hpp"

using namespace lieval;

namespace {

using Acc = std::map<int, Elem>;

void accumulate(Acc& acc, const FpVec& v, Elem scale, const Fq& F) {
  for (const auto& t : v) {
    Elem& slot = acc[t.index];
    slot = F.add(slot, F.mul(scale, t.coeff));
  }
}

bool all_zero(const Acc& a) {
  for (const auto& [k, v] : a)
    if (v) return false;
  return true;
}

// Jacobi on basis triples whose total degree stays inside the truncation.
bool truncated_jacobi(const GradedLie& tg) {
  const Fq& F = tg.field();
  const std::size_t n = tg.dim();
  auto br = [&](const FpVec& x, std::size_t k) {
    Acc acc;
    for (const auto& t : x) accumulate(acc, tg.bracket(t.index, k), t.coeff, F);
    return acc;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (tg.basis(i).degree_num + tg.basis(j).degree_num + tg.basis(k).degree_num > tg.max_num()) continue;
        Acc total;
        for (auto [a, b, c] : {std::array<std::size_t, 3>{i, j, k}, {j, k, i}, {k, i, j}}) {
          Acc part = br(tg.bracket(a, b), c);
          for (const auto& [idx, v] : part) total[idx] = F.add(total[idx], v);
        }
        if (!all_zero(total)) return false;
      }
  return true;
}

}  // namespace

TEST_CASE("graded algebra degrees") {
  StructLie L = build_chevalley(RootSystem('A', 1));
  GradedLie tg = build_tilde_g(L, 5);
  CHECK(tg.degree_den() == 2);
  // gr^{1/2} = X_alpha, X_{-alpha} v
  CHECK(tg.piece(1).size() == 2);
  CHECK(tg.piece(2).size() == 1);
  CHECK(tg.basis(static_cast<std::size_t>(*tg.index_of(0, 0))).degree_num == 1);
  CHECK(tg.basis(static_cast<std::size_t>(*tg.index_of(1, 1))).degree_num == 1);
  CHECK(tg.basis(static_cast<std::size_t>(*tg.index_of(2, 1))).degree_num == 2);
  CHECK_FALSE(tg.index_of(1, 0));
  CHECK_FALSE(tg.index_of(2, 0));
}

TEST_CASE("ramified sl2: X_{-alpha} v has degree 1/4") {
  StructLie L = build_chevalley(RootSystem('A', 1));
  GradedLie tg = build_tilde_g(L, 5, 2);
  CHECK(tg.degree_den() == 4);
  auto k = tg.index_of(1, 1);
  REQUIRE(k);
  CHECK(Rational(tg.basis(*k).degree_num, tg.degree_den()) == Rational(1, 4));
  CHECK(Rational(tg.basis(*tg.index_of(0, 0)).degree_num, 4) == Rational(1, 4));
  CHECK(Rational(tg.basis(*tg.index_of(2, 1)).degree_num, 4) == Rational(1, 2));
  // epsilon is multiplication by v^e
  CHECK(*tg.epsilon(*tg.index_of(0, 0)) == *tg.index_of(0, 2));
}

TEST_CASE("brackets respect degree and weight") {
  for (const auto& name : {"A2", "B2", "G2"})
    for (int e : {1, 2}) {
      StructLie L = build_chevalley(RootSystem::parse(name));
      GradedLie tg = build_tilde_g(L, 7, e);
      for (std::size_t i = 0; i < tg.dim(); ++i)
        for (std::size_t j = 0; j < tg.dim(); ++j) {
          if (!tg.bracket_defined(i, j)) {
            CHECK_THROWS_AS(tg.bracket(i, j), std::out_of_range);
            continue;
          }
          for (const auto& t : tg.bracket(i, j)) {
            CHECK(tg.basis(t.index).degree_num == tg.basis(i).degree_num + tg.basis(j).degree_num);
            CHECK(tg.basis(t.index).weight == tg.basis(i).weight + tg.basis(j).weight);
          }
        }
    }
}

TEST_CASE("truncated Jacobi") {
  for (const auto& name : {"A1", "A2", "B2", "G2"}) {
    CAPTURE(name);
    StructLie L = build_chevalley(RootSystem::parse(name));
    CHECK(truncated_jacobi(build_tilde_g(L, 5, 1, 1, Rational(2))));
    CHECK(truncated_jacobi(build_tilde_g(L, 7, 2, 3, Rational(3, 2))));
  }
}

TEST_CASE("epsilon commutes with brackets") {
  StructLie L = build_chevalley(RootSystem('B', 2));
  GradedLie tg = build_tilde_g(L, 7);
  for (std::size_t i = 0; i < tg.dim(); ++i)
    for (std::size_t j = 0; j < tg.dim(); ++j) {
      auto ei = tg.epsilon(i);
      if (!ei || !tg.bracket_defined(*ei, j)) continue;
      FpVec lhs = tg.bracket(*ei, j);
      FpVec rhs;
      bool ok = true;
      for (const auto& t : tg.bracket(i, j)) {
        auto et = tg.epsilon(t.index);
        if (!et) ok = false;
        else rhs.push_back({*et, t.coeff});
      }
      REQUIRE(ok);
      std::sort(rhs.begin(), rhs.end(), [](auto& a, auto& b) { return a.index < b.index; });
      CHECK(lhs == rhs);
    }
}

TEST_CASE("gbar structure") {
  for (const auto& name : {"A1", "A2", "A3", "B2", "G2", "C3"}) {
    CAPTURE(name);
    StructLie L = build_chevalley(RootSystem::parse(name));
    FiniteGradedLie gb = build_gbar(L, 7);
    CHECK(gb.dim() == L.dim());
    CHECK(gb.check_antisymmetry().ok);
    CHECK(gb.check_jacobi().ok);
    CHECK(gb.check_grading().ok);
    CHECK(gb.nilpotency_length().has_value());
    CHECK(verify_mod_epsilon_iso(build_tilde_g(L, 7), gb).ok);
    CHECK(verify_coxeter_iso(build_tilde_g(L, 7)).ok);
  }
}

TEST_CASE("permuting the basis keeps the algebra") {
  StructLie L = build_chevalley(RootSystem('A', 2));
  FiniteGradedLie gb = build_gbar(L, 5);
  std::vector<int> perm(gb.dim());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(2);
  std::shuffle(perm.begin(), perm.end(), rng);
  FiniteGradedLie q = gb.permuted(perm);
  CHECK(q.check_jacobi().ok);
  for (std::size_t k = 0; k < q.dim(); ++k) CHECK(q.basis(k).label == gb.basis(perm[k]).label);
}

TEST_CASE("a corrupted bracket breaks Jacobi") {
  StructLie L = build_chevalley(RootSystem('A', 2));
  FiniteGradedLie gb = build_gbar(L, 5);
  // [X_1, X_2] doubled
  FpVec v = gb.bracket(0, 1);
  REQUIRE_FALSE(v.empty());
  for (auto& t : v) t.coeff = gb.field().mul(2, t.coeff);
  gb.set_bracket(0, 1, v);
  CHECK_FALSE(gb.check_jacobi().ok);
}

TEST_CASE("shift presentation of the gl_n algebra") {
  for (int n : {2, 3, 4}) {
    CAPTURE(n);
    GradedLie tg = build_tilde_g(build_gl(n), 7);
    CHECK(verify_shift_iso(ShiftModel(n, Fq(7)), tg).ok);
    ShiftModel m(n, Fq(7));
    // weight of coordinate j in piece i is e_j - e_{j+i}
    Weight w = m.weight(1, n - 1);
    CHECK(w[n - 1] == 1);
    CHECK(w[0] == -1);
  }
}
