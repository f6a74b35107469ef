#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lieval/cohomology.hpp"
#include "lieval/gradedlie.hpp"
#include "lieval/linfp.hpp"

namespace lieval {

// Graded Lie algebra of the congruence filtration on the units of the
// division algebra of invariant 1/n over F_q((t)), q = p^f. Piece i
// (degree i/n, 1 <= i <= truncation) is a copy of k_D = F_{q^n}, with
//   [x, y] = x y^{q^i} - y x^{q^j}   for x in piece i, y in piece j,
// and epsilon the identity from piece i to piece i + n.
class DivisionGradedLie {
 public:
  DivisionGradedLie(int n, std::uint32_t p, int f, int truncation = 0, int frobenius_shift = 0);

  int n() const { return n_; }
  std::uint32_t p() const { return p_; }
  int f() const { return f_; }
  std::uint64_t q() const { return q_; }
  int truncation() const { return trunc_; }
  const Fq& field() const { return kD_; }

  // x^{q^k}
  Elem frob_q(Elem x, long long k) const;
  Elem bracket(int i, Elem x, int j, Elem y) const;
  Elem epsilon(Elem x) const { return x; }
  // Exponent e with t acting on piece i by x -> t^e x, namely 1 - q^i,
  // reduced mod q^n - 1.
  std::uint64_t character_exponent(int i) const;

  CheckResult check_antisymmetry() const;
  // Exhaustive over elements when q^n <= 25, otherwise over F_p-basis triples
  // (the bracket is F_p-bilinear, so basis triples suffice).
  CheckResult check_jacobi() const;
  CheckResult check_epsilon() const;
  bool exhaustive() const { return exhaustive_; }

 private:
  int n_;
  std::uint32_t p_;
  int f_;
  std::uint64_t q_;
  int trunc_;
  int shift_;
  Fq kD_;
  bool exhaustive_;
};

struct BaseChangeReport {
  bool ok = true;
  bool moore_ok = true;
  bool shift_model_ok = true;
  bool exhaustive = true;
  long long pairs_checked = 0;
  std::string witness;
};

// mu_i(x (x) y)_m = x^{q^m} y  sends piece i tensored up to k_D onto k_D^n,
// intertwining the bracket with the shift presentation of the gl_n algebra.
BaseChangeReport verify_base_change(int n, std::uint32_t p, int f, int frobenius_shift = 0);
// The torus character on piece i matches eps_m - eps_{m+i} on coordinate m.
CheckResult verify_character_table(int n, std::uint32_t p, int f);

// (q w - 1) with w e_i = e_{i-1}.
Lattice twist_lattice(int n, std::uint64_t q);

// Twisted weight-zero cohomology of gbar for gl_n. Requires p > n + 1.
CohomologyTable morava_cohomology(int n, std::uint32_t p, int f);
// ((1 + t) prod_{i=1}^{n-1} (1 + t^{2i+1}))^f
Poly morava_prediction(int n, int f);

struct NonsplitWeightReport {
  bool holds = true;
  bool hypothesis_ok = true;
  bool routes_agree = true;
  std::uint64_t tuples_checked = 0;
  std::optional<std::vector<Weight>> witness;
};
// For tuples (lambda_0..lambda_{f-1}) of weights of the exterior algebra of
// gl_n: a trivial torus character on sum p^i lambda_i forces the sum to be 0.
// Triviality is decided both by lattice membership and by the digit sum
// lambda* = sum lambda_{ij} p^{i + j f} mod q^n - 1.
NonsplitWeightReport check_nonsplit_weight_lemma(int n, std::uint32_t p, int f);

}  // namespace lieval
