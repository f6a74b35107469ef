#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lieval/chevalley.hpp"
#include "lieval/linfp.hpp"
#include "lieval/rational.hpp"

namespace lieval {

struct CheckResult {
  bool ok = true;
  std::string detail;
  explicit operator bool() const { return ok; }
  static CheckResult fail(std::string d) { return {false, std::move(d)}; }
};

struct FpTerm {
  int index;
  Elem coeff;
  bool operator==(const FpTerm&) const = default;
};
using FpVec = std::vector<FpTerm>;

struct GradedBasisElement {
  std::string label;
  int degree_num = 0;  // degree = degree_num / degree_den of the algebra
  Weight weight;
  int origin = -1;     // basis index in the underlying StructLie
  int vpow = 0;        // power of the uniformizer variable
};

// Finite-dimensional positively graded Lie algebra over F_p.
class FiniteGradedLie {
 public:
  FiniteGradedLie(std::string name, std::uint32_t p, int degree_den,
                  std::vector<GradedBasisElement> basis, std::vector<FpVec> table);

  const std::string& name() const { return name_; }
  const Fq& field() const { return field_; }
  std::uint32_t p() const { return field_.p(); }
  int degree_den() const { return den_; }
  std::size_t dim() const { return basis_.size(); }
  const GradedBasisElement& basis(std::size_t i) const { return basis_.at(i); }
  Rational degree(std::size_t i) const { return Rational(basis_[i].degree_num, den_); }

  const FpVec& bracket(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  std::vector<Elem> bracket(const std::vector<Elem>& x, const std::vector<Elem>& y) const;
  // Overwrites [i,j] and sets [j,i] = -[i,j].
  void set_bracket(std::size_t i, std::size_t j, FpVec v);

  // Same algebra with basis element perm[k] moved to position k.
  FiniteGradedLie permuted(const std::vector<int>& perm) const;

  CheckResult check_antisymmetry() const;
  CheckResult check_jacobi() const;
  CheckResult check_grading() const;
  // Length of the lower central series, or nothing if it stabilises above 0.
  std::optional<int> nilpotency_length() const;

 private:
  std::string name_;
  Fq field_;
  int den_;
  std::vector<GradedBasisElement> basis_;
  std::vector<FpVec> table_;
};

// Truncation of the graded Lie algebra  v n^-[v] + v t[v] + n[v]  over F_p,
// graded by deg(X_alpha v^i) = ht(alpha)/(h e) + i/e and deg(H v^i) = i/e.
class GradedLie {
 public:
  const StructLie& algebra() const { return L_; }
  const Fq& field() const { return field_; }
  int e() const { return e_; }
  Elem lambda() const { return lambda_; }
  int coxeter() const { return h_; }
  int degree_den() const { return h_ * e_; }
  int max_num() const { return max_num_; }
  Rational truncation() const { return Rational(max_num_, degree_den()); }

  std::size_t dim() const { return basis_.size(); }
  const GradedBasisElement& basis(std::size_t i) const { return basis_.at(i); }
  // Basis indices of the piece of degree num / degree_den().
  const std::vector<int>& piece(int num) const;
  std::optional<int> index_of(int origin, int vpow) const;

  bool bracket_defined(std::size_t i, std::size_t j) const {
    return basis_[i].degree_num + basis_[j].degree_num <= max_num_;
  }
  // Throws when the result lies beyond the truncation.
  FpVec bracket(std::size_t i, std::size_t j) const;
  // Bracket of coordinate vectors in two pieces, landing in piece a + b.
  std::vector<Elem> bracket_pieces(int a, const std::vector<Elem>& x, int b,
                                   const std::vector<Elem>& y) const;
  // epsilon = multiplication by lambda v^e; nothing beyond the truncation.
  std::optional<int> epsilon(std::size_t i) const;

  std::string to_json() const;

 private:
  friend GradedLie build_tilde_g(const StructLie&, std::uint32_t, int, Elem, Rational);
  GradedLie(StructLie L, Fq F) : L_(std::move(L)), field_(std::move(F)) {}

  StructLie L_;
  Fq field_;
  int e_ = 1;
  Elem lambda_ = 1;
  int h_ = 0;
  int max_num_ = 0;
  std::vector<GradedBasisElement> basis_;
  std::map<std::pair<int, int>, int> index_;
  std::vector<std::vector<int>> pieces_;
};

GradedLie build_tilde_g(const StructLie& L, std::uint32_t p, int e = 1, Elem lambda = 1,
                        Rational truncation = Rational(3));

// Coxeter grading g[i] = sum of root spaces with ht = i mod h, torus in g[0].
std::vector<std::vector<int>> coxeter_grading(const StructLie& L);
// For e = 1: origin of each basis element of gr^{num/h}, an isomorphism onto
// g[num mod h].
std::vector<int> coxeter_grading_iso(const GradedLie& tg, int num);
// Brackets and epsilon are compatible with the maps above.
CheckResult verify_coxeter_iso(const GradedLie& tg);

// n acting on g/n: basis X_alpha (alpha > 0) and classes of b^- with
// [X, B] projected to b^- and [B, B'] = 0.
FiniteGradedLie build_gbar(const StructLie& L, std::uint32_t p);
// Compares gb with the quotient of the truncated algebra by the image of
// epsilon, on representatives of degree in (0, 1].
CheckResult verify_mod_epsilon_iso(const GradedLie& tg, const FiniteGradedLie& gb);

// gl_n model: gr^{i/n} = k^n with
//   [x, y] = x * Shift^i(y) - y * Shift^j(x)   (componentwise products),
// Shift the cyclic left shift and epsilon the identity.
class ShiftModel {
 public:
  ShiftModel(int n, Fq k);
  int n() const { return n_; }
  const Fq& field() const { return k_; }
  std::vector<Elem> bracket(int i, const std::vector<Elem>& x, int j,
                            const std::vector<Elem>& y) const;
  std::vector<Elem> epsilon(const std::vector<Elem>& x) const { return x; }
  // Weight of coordinate j (0-based) of gr^{i/n}: e_j - e_{j+i mod n}.
  Weight weight(int i, int j) const;
  ShiftModel base_change(const Fq& bigger) const;

 private:
  int n_;
  Fq k_;
};

ShiftModel shift_presentation(int n, std::uint32_t p, int f);
// Coordinates of a basis element of piece i of the truncated algebra for
// gl_n, via E_{j, j+i} -> e_j.
std::vector<Elem> shift_coordinates(const GradedLie& tg_gl, int i, std::size_t basis_index);
// Checks brackets, epsilon and weights against the truncated algebra of gl_n.
CheckResult verify_shift_iso(const ShiftModel& model, const GradedLie& tg_gl);

}  // namespace lieval
