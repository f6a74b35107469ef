#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lieval/gradedlie.hpp"
#include "lieval/linfp.hpp"
#include "lieval/rootsys.hpp"

namespace lieval {

using Poly = std::vector<long long>;  // coefficient of t^i at index i

Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_pow(const Poly& a, int k);
Poly poly_trim(Poly a);
// prod_i (1 + t^{2 m_i + 1})
Poly exterior_poincare(const std::vector<int>& exponents);
std::string poly_str(const Poly& a);

// Finite-dimensional module over a FiniteGradedLie, weights in the same
// lattice as the Lie algebra.
struct CEModule {
  std::string name;
  std::vector<std::string> labels;
  std::vector<Weight> weights;
  std::size_t lie_dim = 0;
  std::vector<FpVec> action;  // action[a * dim() + m] = x_a . v_m

  std::size_t dim() const { return labels.size(); }
  const FpVec& act(std::size_t a, std::size_t m) const { return action[a * dim() + m]; }
};

class ModuleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Validates the representation axiom and weight additivity exhaustively.
CEModule make_module(const FiniteGradedLie& h, std::string name, std::vector<std::string> labels,
                     std::vector<Weight> weights, std::vector<FpVec> action);
CEModule trivial_module(const FiniteGradedLie& h, const Weight& w);
CEModule dual_module(const FiniteGradedLie& h, const CEModule& V);
CEModule exterior_power(const FiniteGradedLie& h, const CEModule& V, int j);
// Same basis and weights, zero action. Not validated against weights.
CEModule zero_action(const CEModule& V);
// L / S as a module over h by the adjoint action, where h is a subalgebra
// built from L (origins set) and S is an ad(h)-stable subspace spanned by
// basis vectors of L.
CEModule quotient_module(const StructLie& L, const FiniteGradedLie& h, const std::vector<int>& sub);
// Subalgebra spanned by basis vectors of L, graded by height / h.
FiniteGradedLie subalgebra(const StructLie& L, const std::vector<int>& members, std::uint32_t p,
                           std::string name);

struct WeightFilter {
  enum class Kind { All, Zero, Set } kind = Kind::All;
  std::vector<Weight> set;

  static WeightFilter all() { return {}; }
  static WeightFilter zero() { return {Kind::Zero, {}}; }
  static WeightFilter only(std::vector<Weight> w) { return {Kind::Set, std::move(w)}; }
  bool accepts(const Weight& w) const;
  std::string str() const;
};

struct CEBlock {
  Weight weight;
  // cells[q]: cochains v_m (x) xi^S of degree q, keyed m << 32 | S, sorted.
  std::vector<std::vector<std::uint64_t>> cells;
  // d[q]: C^q -> C^{q+1}; rows index degree q+1 cells, columns degree q.
  std::vector<SparseMat> d;
  std::size_t position(int q, std::uint64_t key) const;
};

// Chevalley-Eilenberg cochains Hom(wedge^q h, V), split into weight blocks.
// The differential is
//   d phi(x_0..x_q) = sum_{i<j} (-1)^{i+j} phi([x_i,x_j], ...)
//                   + sum_i (-1)^i x_i . phi(..., x_i omitted, ...).
class CEComplex {
 public:
  const FiniteGradedLie& algebra() const { return h_; }
  const CEModule& module() const { return V_; }
  const Fq& field() const { return h_.field(); }
  int top_degree() const { return static_cast<int>(h_.dim()); }
  const std::vector<CEBlock>& blocks() const { return blocks_; }
  const CEBlock* block(const Weight& w) const;
  const WeightFilter& filter() const { return filter_; }

 private:
  friend CEComplex ce_complex(const FiniteGradedLie&, const CEModule&, const WeightFilter&);
  CEComplex(FiniteGradedLie h, CEModule V) : h_(std::move(h)), V_(std::move(V)) {}
  FiniteGradedLie h_;
  CEModule V_;
  WeightFilter filter_;
  std::vector<CEBlock> blocks_;
};

CEComplex ce_complex(const FiniteGradedLie& h, const CEModule& V,
                     const WeightFilter& filter = WeightFilter::all());

struct CohomologyTable {
  std::string type;
  std::uint32_t p = 0;
  int f = 1;
  std::string filter;
  std::map<std::pair<int, Weight>, long long> dims;  // nonzero entries only

  long long dim(int q, const Weight& w) const;
  Poly poincare() const;
  long long total() const;
  std::string to_json() const;
  std::string to_csv() const;
};

CohomologyTable cohomology_dims(const CEComplex& C);
CheckResult check_d_squared(const CEComplex& C);
// Euler characteristic of cochains equals that of cohomology, block by block.
CheckResult check_euler(const CEComplex& C, const CohomologyTable& H);

CohomologyTable gbar_cohomology(const StructLie& L, std::uint32_t p,
                                const WeightFilter& filter = WeightFilter::zero());

struct KostantReport {
  bool hypothesis_ok = true;
  bool ok = true;
  long long total = 0;
  std::map<int, std::vector<Weight>> computed;
  std::map<int, std::vector<Weight>> expected;
  std::string detail;
};
// H^i(n, k_lambda) has weights {w.0 + lambda : l(w) = i}, one dimension each.
KostantReport kostant_check(const RootSystem& rs, std::uint32_t p, const Weight& lambda);

struct HodgeReport {
  bool hypothesis_ok = true;
  bool ok = true;
  std::vector<std::vector<long long>> dims;      // dims[i][j]
  std::vector<std::vector<long long>> expected;
  std::string detail;
};
// dim H^i(n, wedge^j (g/b)^dual)^T = delta_ij #{w : l(w) = i}.
HodgeReport hodge_dims_check(const RootSystem& rs, std::uint32_t p);

struct SemidirectReport {
  bool ok = true;
  Poly lhs;   // Poincare series of H(gbar), all weights
  Poly rhs;   // sum over i + j of H^i(n, wedge^j (g/n)^dual)
  std::string detail;
};
// zero_action replaces the coadjoint action on (g/n)^dual by zero, which
// should break the comparison.
SemidirectReport semidirect_degeneration_check(const StructLie& L, std::uint32_t p,
                                               bool zero_action_control = false);

struct RingCertificate {
  bool ok = true;
  std::vector<int> generator_degrees;
  std::vector<long long> dims;  // dim H^q of the zero block
  std::string detail;
};
// Weight-zero cohomology with trivial coefficients: finds indecomposable
// classes and checks that products of distinct generators form a basis.
RingCertificate cup_structure(const CEComplex& C);

// Full-rank sublattice of Z^n spanned by the columns of a square matrix.
class Lattice {
 public:
  explicit Lattice(std::vector<std::vector<long long>> matrix);
  static Lattice scaled(std::size_t rank, long long m);
  std::size_t rank() const { return n_; }
  long long index() const;
  bool contains(const Weight& w) const;
  const std::vector<std::vector<long long>>& matrix() const { return M_; }

 private:
  std::size_t n_;
  std::vector<std::vector<long long>> M_;
  __int128 det_ = 0;
  std::vector<std::vector<__int128>> adj_;
};

// f-fold tensor power with weights of factor i scaled by p^i, restricted to
// total weights in the lattice. The table must carry all weights.
CohomologyTable kunneth_twist(const CohomologyTable& table, int f, const Lattice& lattice);

}  // namespace lieval
