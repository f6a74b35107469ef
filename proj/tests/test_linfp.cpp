#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "lieval/linfp.hpp"
#include "oracles.hpp"

using namespace lieval;

TEST_CASE("primality") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK_THROWS(Fq(6));
}

TEST_CASE("field axioms, exhaustive on small fields") {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 3}, {3, 2}, {5, 2}, {7, 1}}) {
    Fq F(p, m);
    CAPTURE(p);
    CAPTURE(m);
    REQUIRE(F.order() == static_cast<std::uint32_t>(std::pow(p, m) + 0.5));
    for (Elem a = 0; a < F.order(); ++a) {
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a) CHECK(F.mul(a, F.inv(a)) == 1);
      for (Elem b = 0; b < F.order(); ++b) {
        CHECK(F.add(a, b) == F.add(b, a));
        CHECK(F.mul(a, b) == F.mul(b, a));
        Elem c = (a * 7 + b * 3 + 1) % F.order();
        CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        // Frobenius is additive and multiplicative
        CHECK(F.frobenius(F.add(a, b), 1) == F.add(F.frobenius(a, 1), F.frobenius(b, 1)));
        CHECK(F.frobenius(F.mul(a, b), 1) == F.mul(F.frobenius(a, 1), F.frobenius(b, 1)));
      }
    }
  }
}

TEST_CASE("primitive element and subfields") {
  Fq F(5, 2);
  Elem g = F.primitive();
  std::set<Elem> seen;
  Elem x = 1;
  for (std::uint32_t i = 0; i + 1 < F.order(); ++i) {
    seen.insert(x);
    x = F.mul(x, g);
  }
  CHECK(seen.size() == F.order() - 1);
  CHECK(x == 1);
  int in_prime = 0;
  for (Elem a = 0; a < F.order(); ++a) in_prime += F.in_subfield(a, 1);
  CHECK(in_prime == 5);
  CHECK(F.frobenius(g, 2) == g);
  CHECK(F.pow(g, 24) == 1);
}

TEST_CASE("coefficient round trip") {
  Fq F(3, 3);
  for (Elem a = 0; a < F.order(); ++a) CHECK(F.from_coeffs(F.coeffs(a)) == a);
}

TEST_CASE("irreducible polynomials counted against Gauss's formula") {
  // number of monic irreducible quadratics over F_p is (p^2 - p) / 2
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    int count = 0;
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b) count += fp_poly::is_irreducible({b, a, 1}, p);
    CHECK(count == static_cast<int>((p * p - p) / 2));
  }
}

namespace {

std::vector<std::vector<Elem>> random_dense(std::mt19937_64& rng, std::size_t r, std::size_t c, const Fq& F,
                                            double density) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<Elem> v(1, F.order() - 1);
  std::vector<std::vector<Elem>> m(r, std::vector<Elem>(c, 0));
  for (auto& row : m)
    for (auto& x : row)
      if (u(rng) < density) x = v(rng);
  return m;
}

}  // namespace

TEST_CASE("sparse rank against dense elimination") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 5u, 13u}) {
    Fq F(p);
    for (int t = 0; t < 60; ++t) {
      std::size_t r = 1 + rng() % 40, c = 1 + rng() % 40;
      auto dense = random_dense(rng, r, c, F, t % 3 == 0 ? 0.5 : 0.1);
      // force some dependencies
      if (r > 2)
        for (std::size_t k = 0; k < c; ++k) dense[r - 1][k] = F.add(dense[0][k], F.mul(2 % p, dense[1][k]));
      SparseMat M = SparseMat::from_dense(dense, c);
      CHECK(rank(M, F) == oracle::dense_rank(dense, F));
      auto ker = kernel_basis(M, F);
      CHECK(ker.size() == c - oracle::dense_rank(dense, F));
      for (const auto& v : ker) {
        auto img = M.apply(v, F);
        CHECK(std::all_of(img.begin(), img.end(), [](Elem e) { return e == 0; }));
      }
      CHECK(oracle::dense_rank(ker, F) == ker.size());
    }
  }
}

TEST_CASE("rank over an extension field") {
  Fq F(5, 2);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    auto dense = random_dense(rng, 12, 15, F, 0.3);
    CHECK(rank_of_vectors(dense, 15, F) == oracle::dense_rank(dense, F));
  }
}

TEST_CASE("dense mode switch keeps the rank") {
  Fq F(7);
  std::mt19937_64 rng(5);
  auto dense = random_dense(rng, 300, 200, F, 0.4);
  Eliminator E(200, F);
  for (const auto& row : dense) E.insert_dense(row);
  CHECK(E.rank() == oracle::dense_rank(dense, F));
  CHECK(E.rank() == 200);
}

TEST_CASE("matrix operations") {
  Fq F(5);
  auto A = SparseMat::from_triplets(2, 3, {{0, 0, 1}, {0, 0, 2}, {1, 2, 4}, {1, 2, 1}}, F);
  // 1 + 2 = 3, 4 + 1 = 0 mod 5
  CHECK(A.nnz() == 1);
  CHECK(A.to_dense()[0][0] == 3);
  auto B = SparseMat::from_dense({{1, 2}, {0, 1}, {3, 0}}, 2);
  auto C = A.multiply(B, F);
  CHECK(C.to_dense() == std::vector<std::vector<Elem>>{{3, 1}, {0, 0}});
  CHECK(B.transpose().transpose().to_dense() == B.to_dense());
  CHECK_THROWS(A.multiply(A, F));
}

TEST_CASE("cohomology_dim of a small complex") {
  Fq F(3);
  // C^0 = F -> C^1 = F^2 -> C^2 = F, d_in = (1, 1)^T, d_out = (1, -1)
  auto din = SparseMat::from_dense({{1}, {1}}, 1);
  auto dout = SparseMat::from_dense({{1, 2}}, 2);
  CHECK(cohomology_dim(din, dout, F) == 0);
  auto bad = SparseMat::from_dense({{1, 1}}, 2);
  CHECK_THROWS_AS(cohomology_dim(din, bad, F), NotAComplex);
}
