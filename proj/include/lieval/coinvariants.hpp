#pragma once

#include <map>
#include <string>
#include <vector>

#include "lieval/cohomology.hpp"
#include "lieval/linfp.hpp"
#include "lieval/rootsys.hpp"

namespace lieval {

using Monomial = std::vector<int>;  // exponent vector

// Polynomial in x_1..x_r over F_p. The x_i are dual to the simple coroots.
class GradedPoly {
 public:
  GradedPoly(std::size_t nvars, std::uint32_t p) : n_(nvars), p_(p) {}
  static GradedPoly variable(std::size_t nvars, std::uint32_t p, std::size_t i);
  static GradedPoly constant(std::size_t nvars, std::uint32_t p, Elem c);

  std::size_t nvars() const { return n_; }
  std::uint32_t p() const { return p_; }
  const std::map<Monomial, Elem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Elem coeff(const Monomial& m) const;
  void add_term(const Monomial& m, Elem c);

  // Degree of the top component; -1 for zero. weight = 2 is the doubled grading.
  int degree(int weight = 1) const;
  bool homogeneous() const;

  GradedPoly operator+(const GradedPoly& o) const;
  GradedPoly operator-(const GradedPoly& o) const;
  GradedPoly operator*(const GradedPoly& o) const;
  GradedPoly scaled(Elem c) const;
  bool operator==(const GradedPoly& o) const = default;

  // Substitutes x_i -> sum_j forms[i][j] x_j.
  GradedPoly substitute(const std::vector<std::vector<Elem>>& forms) const;
  std::string str() const;

 private:
  std::size_t n_;
  std::uint32_t p_;
  std::map<Monomial, Elem> terms_;
};

// Monomials of degree d in r variables, lexicographically descending.
std::vector<Monomial> monomials(std::size_t r, int d);

// Action of W on t^dual through the simple reflections, as linear forms:
// forms[i] is the image of x_i.
std::vector<std::vector<std::vector<Elem>>> simple_reflection_forms(const RootSystem& rs, std::uint32_t p);
std::vector<std::vector<Elem>> weyl_forms(const WeylElement& w, std::uint32_t p);

// Homogeneous W-invariant generators of degrees m_i + 1, found degree by
// degree as invariants not generated by lower ones. Requires p > h.
std::vector<GradedPoly> fundamental_invariants(const RootSystem& rs, std::uint32_t p);
// Exponents as generator degrees minus one; throws when they disagree with
// the height partition.
std::vector<int> exponents_from_invariants(const RootSystem& rs, std::uint32_t p);

// Chain complex A (x) wedge V over A = F_p[x_1..x_r], with
//   d(a e_S) = sum_{k in S} (-1)^{pos_S(k)} a delta(e_k) e_{S - k},
// split by internal degree deg a + sum_{k in S} deg delta(e_k).
struct KoszulComplex {
  std::size_t nvars = 0;
  std::uint32_t p = 0;
  std::vector<GradedPoly> delta;
  int max_internal = 0;
  // cells[D][j]: (monomial, subset) pairs of internal degree D, exterior degree j
  std::vector<std::vector<std::vector<std::pair<Monomial, std::uint32_t>>>> cells;
  // d[D][j]: exterior degree j -> j - 1 (rows index j - 1 cells); d[D][0] empty
  std::vector<std::vector<SparseMat>> d;
};

KoszulComplex koszul_complex(std::size_t nvars, std::uint32_t p, std::vector<GradedPoly> delta,
                             int max_internal);
CheckResult check_koszul_d_squared(const KoszulComplex& K);

struct KoszulHomology {
  // dims[D][j]
  std::vector<std::vector<long long>> dims;
  // First (D, j) with j > 0 and nonzero homology, or (-1, -1).
  std::pair<int, int> first_higher{-1, -1};
  bool concentrated() const { return first_higher.first < 0; }
};
KoszulHomology koszul_homology(const KoszulComplex& K);

// F_p[x]/(F_1..F_r), with per-degree bases of standard monomials.
class QuotientAlgebra {
 public:
  QuotientAlgebra(std::size_t nvars, std::uint32_t p, std::vector<GradedPoly> gens);

  std::size_t nvars() const { return n_; }
  const Fq& field() const { return F_; }
  const std::vector<GradedPoly>& generators() const { return gens_; }
  int top_degree() const { return static_cast<int>(levels_.size()) - 1; }
  std::size_t dim(int d) const;
  std::size_t total_dim() const;
  Poly poincare() const;
  // Standard monomials spanning degree d.
  const std::vector<Monomial>& basis(int d) const { return levels_.at(d).basis; }
  // Coordinates of a homogeneous polynomial of degree d in basis(d).
  std::vector<Elem> normal_form(const GradedPoly& f, int d) const;

 private:
  struct Level {
    std::vector<Monomial> monomials;
    std::map<Monomial, std::size_t> index;
    // reduced echelon rows spanning the ideal in this degree
    std::vector<std::vector<Elem>> rref;
    std::vector<std::size_t> pivots;
    std::vector<Monomial> basis;
    std::vector<std::size_t> basis_cols;
  };
  std::size_t n_;
  Fq F_;
  std::vector<GradedPoly> gens_;
  std::vector<Level> levels_;
};

struct CoinvariantAlgebra {
  std::vector<GradedPoly> invariants;
  QuotientAlgebra quotient;
  KoszulHomology koszul;
};
// Throws if the invariants fail to form a regular sequence.
CoinvariantAlgebra coinvariant_algebra(const RootSystem& rs, std::uint32_t p);

// The dga  A^(2) (x) wedge(xi_1..xi_r)  with A the coinvariant algebra in
// doubled degrees, deg xi = 1 and d xi_i = x_i. Total-degree homology.
CohomologyTable e1_dga_homology(const RootSystem& rs, std::uint32_t p);

struct CrossValidation {
  bool hypothesis_ok = true;
  bool agree = false;
  CohomologyTable ce;
  CohomologyTable e1;
  std::string detail;
};
// Weight-zero cohomology of gbar against the dga route.
CrossValidation cross_validate(const RootSystem& rs, std::uint32_t p);

}  // namespace lieval
