#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lieval/rootsys.hpp"

namespace lieval {

struct ZTerm {
  int index;
  long long coeff;
  bool operator==(const ZTerm&) const = default;
};
// Sorted by index, no zero coefficients.
using ZVec = std::vector<ZTerm>;

enum class BasisKind { RootVector, Coroot, Center };

struct LieBasisElement {
  BasisKind kind;
  int index;  // root index, simple-root index, or 0 for the centre
  std::string label;
  Weight weight;
};

class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Split Lie algebra over Z in a Chevalley basis: X_alpha for every root in
// root-system order, then H_i = alpha_i^vee, then optionally a central Z.
class StructLie {
 public:
  const RootSystem& roots() const { return rs_; }
  const std::string& name() const { return name_; }
  bool has_center() const { return center_; }
  std::size_t dim() const { return basis_.size(); }
  const LieBasisElement& basis(std::size_t i) const { return basis_.at(i); }
  const std::vector<LieBasisElement>& basis() const { return basis_; }

  int root_basis(int root_index) const { return root_index; }
  int coroot_basis(int simple_index) const {
    return static_cast<int>(rs_.num_roots()) + simple_index;
  }
  int center_basis() const;

  const ZVec& bracket(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  ZVec bracket(const ZVec& x, const ZVec& y) const;
  // N_{alpha,beta} for root indices; zero when alpha + beta is not a root.
  long long structure_constant(int a, int b) const;

  // Replaces basis weights, e.g. to pass to a different character lattice.
  void set_weights(std::vector<Weight> w, std::string new_name);

 private:
  friend StructLie build_chevalley(const RootSystem&, bool);
  explicit StructLie(RootSystem rs) : rs_(std::move(rs)) {}

  RootSystem rs_;
  std::string name_;
  bool center_ = false;
  std::vector<LieBasisElement> basis_;
  std::vector<ZVec> table_;
  std::vector<long long> n_;  // num_roots^2 structure constants
};

// Signs: N_{alpha,beta} = +(r+1) on extraspecial pairs, the rest follow from
// the standard identities among structure constants. The result is checked
// against |N| = r+1 and the Jacobi identity before returning.
StructLie build_chevalley(const RootSystem& rs, bool with_center = false);
// gl_n: type A_{n-1} plus centre, weights in the basis e_1..e_n.
StructLie build_gl(int n);

// Returns a violating triple of basis indices, or nothing. modulus 0 checks
// over Z, otherwise over F_modulus.
std::optional<std::array<int, 3>> jacobi_violation(const StructLie& L, std::uint32_t modulus = 0);

struct Triangular {
  std::vector<int> n, t, n_minus, b, b_minus;
};
Triangular triangular(const StructLie& L);

// Type A only: integer n x n matrices with X_alpha -> +-E_ab,
// H_i -> E_ii - E_{i+1,i+1}, Z -> identity, forming a Lie homomorphism.
using IntMatrix = std::vector<std::vector<long long>>;
std::vector<IntMatrix> matrix_realization(const StructLie& L);

std::string bracket_table_json(const StructLie& L);

}  // namespace lieval
