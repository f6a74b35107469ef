#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lieval/chevalley.hpp"
#include "lieval/gradedlie.hpp"
#include "lieval/rational.hpp"

namespace lieval {

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// n x n matrix over Z / p^N, row-major.
struct PadicMatrix {
  int n = 0;
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> a;

  std::uint64_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
  std::uint64_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  bool operator==(const PadicMatrix&) const = default;
  std::string str() const;
};

// Infinite exactly for the identity matrix.
struct OmegaValue {
  std::optional<Rational> value;
  bool infinite() const { return !value; }
  std::string str() const { return value ? value->str() : "inf"; }
  bool operator==(const OmegaValue&) const = default;
};

struct SymbolVector {
  Rational degree;
  int num = 0;                // degree * h
  std::vector<Elem> coords;   // in the basis piece(num) of the graded Lie algebra
  bool operator==(const SymbolVector&) const = default;
};

struct RootFactor {
  int root;                   // root index
  std::uint64_t param;
};
struct IwahoriFactors {
  std::vector<RootFactor> lower;      // column by column, left to right
  std::vector<std::uint64_t> torus;   // w_k with torus = prod_k alpha_k^vee(w_k)
  std::vector<RootFactor> upper;      // row by row, bottom to top
};

// SL_n over Z_p at precision N, with the graded Lie algebra of type A_{n-1}
// used to read off principal symbols.
class SLn {
 public:
  SLn(int n, std::uint32_t p, int N);

  int n() const { return n_; }
  std::uint32_t p() const { return p_; }
  int precision() const { return N_; }
  std::uint64_t modulus() const { return mod_; }
  int coxeter() const { return n_; }
  const StructLie& lie() const { return L_; }
  const GradedLie& graded() const { return tg_; }
  // (a, b) with X_alpha = sign * E_ab.
  std::pair<int, int> root_position(int root) const { return pos_.at(root); }
  int root_sign(int root) const { return sign_.at(root); }
  std::optional<int> root_at(int a, int b) const;

  PadicMatrix identity() const;
  PadicMatrix from_ints(const std::vector<std::vector<long long>>& rows) const;
  // u_alpha(c p^i); requires i >= 0 for positive and i >= 1 for negative roots.
  PadicMatrix root_element(int root, int i, long long c) const;
  // alpha_k^vee(s) for a unit s.
  PadicMatrix coroot_element(int k, long long s) const;

  PadicMatrix mul(const PadicMatrix& x, const PadicMatrix& y) const;
  PadicMatrix inverse(const PadicMatrix& x) const;
  PadicMatrix power(const PadicMatrix& x, std::uint64_t e) const;
  // x y x^-1 y^-1
  PadicMatrix commutator(const PadicMatrix& x, const PadicMatrix& y) const;
  std::uint64_t det(const PadicMatrix& x) const;
  bool in_I1(const PadicMatrix& x) const;

  std::uint64_t reduce(long long v) const;
  std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t inv_unit(std::uint64_t a) const;
  // p-adic valuation, or nothing for 0 mod p^N.
  std::optional<int> valuation(std::uint64_t v) const;

  IwahoriFactors iwahori_factor(const PadicMatrix& g) const;
  PadicMatrix multiply_back(const IwahoriFactors& f) const;
  OmegaValue omega(const PadicMatrix& g) const;
  // min over entries of v(g_ab - delta_ab) + (b - a) / n
  OmegaValue omega_entrywise(const PadicMatrix& g) const;
  SymbolVector symbol(const PadicMatrix& g) const;

  // Bracket and epsilon in the graded Lie algebra, on symbols.
  SymbolVector bracket(const SymbolVector& x, const SymbolVector& y) const;
  SymbolVector epsilon(const SymbolVector& x) const;
  std::string symbol_str(const SymbolVector& s) const;

 private:
  int n_;
  std::uint32_t p_;
  int N_;
  std::uint64_t mod_;
  StructLie L_;
  GradedLie tg_;
  std::vector<std::pair<int, int>> pos_;
  std::vector<int> sign_;
};

struct MPFailure {
  std::string inputs;
  std::string expected;
  std::string got;
};

struct MPReport {
  std::string op;
  int n = 0;
  std::uint32_t p = 0;
  int N = 0;
  long long trials = 0;
  long long precision_flags = 0;
  std::uint64_t seed = 0;
  std::vector<MPFailure> failures;
  double seconds = 0;

  bool ok() const { return failures.empty(); }
  std::string to_json() const;
};

// Random element of I_1: a product of 1..4 random root and coroot factors.
PadicMatrix random_iwahori_element(const SLn& G, std::mt19937_64& rng);

// omega(u_alpha(c p^i)) = ht(alpha)/n + i and omega(alpha^vee(1 + c p^j)) = j on
// generators, also compared with the entrywise formula. Requires p > n + 1.
MPReport verify_omega_values(int n, std::uint32_t p, int N);
// Symbol of a group commutator against the bracket of symbols, on all pairs
// of generators plus random products. Requires p > n + 1 and N >= 2n + 4.
MPReport verify_symbol_bracket(int n, std::uint32_t p, int N, long long trials, std::uint64_t seed);
// symbol(g^p) = epsilon(symbol(g)). Requires p > n + 1.
MPReport verify_epsilon(int n, std::uint32_t p, int N, long long trials, std::uint64_t seed);
// omega(x y^-1) >= min, omega((x, y)) >= sum, omega(x^p) = omega(x) + 1,
// omega > 1/(p-1). Requires p > n + 1.
MPReport verify_pvaluation_axioms(int n, std::uint32_t p, int N, long long trials, std::uint64_t seed);
// The explicit opposite-root commutator in SL_2, entry by entry.
MPReport verify_sl2_commutator(std::uint32_t p, int N);

}  // namespace lieval
