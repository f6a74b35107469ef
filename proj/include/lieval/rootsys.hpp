#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lieval {

class RootSystemError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation was requested outside the range of primes where it applies.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Integer vector in a fixed lattice basis. For root data this is the basis of
// fundamental weights; for gl_n it is the standard basis e_1..e_n.
struct Weight {
  std::vector<int> coords;

  Weight() = default;
  explicit Weight(std::size_t n) : coords(n, 0) {}
  explicit Weight(std::vector<int> c) : coords(std::move(c)) {}

  std::size_t size() const { return coords.size(); }
  int operator[](std::size_t i) const { return coords[i]; }
  int& operator[](std::size_t i) { return coords[i]; }
  bool is_zero() const;

  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator-() const;
  Weight& operator+=(const Weight& o);
  Weight& operator-=(const Weight& o);
  Weight scaled(long long k) const;

  bool operator==(const Weight& o) const = default;
  auto operator<=>(const Weight& o) const = default;

  std::string str() const;
};

struct Root {
  std::vector<int> coords;  // simple-root coordinates
  int height = 0;
  Weight weight;            // fundamental-weight coordinates
  bool positive() const { return height > 0; }
};

class RootSystem {
 public:
  RootSystem(char type, int rank);
  // Accepts names like "A2", "G2", "b3".
  static RootSystem parse(const std::string& name);

  char type() const { return type_; }
  int rank() const { return rank_; }
  std::string name() const;

  // cartan()[i][j] = <alpha_i^vee, alpha_j>.
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  // Positive roots ordered by height, then with larger simple-root
  // coordinate vectors first (so alpha_1, alpha_2, ... at height one); the
  // negative roots follow in the same order.
  const std::vector<Root>& roots() const { return roots_; }
  const Root& root(std::size_t i) const { return roots_.at(i); }
  std::size_t num_positive() const { return roots_.size() / 2; }
  std::size_t num_roots() const { return roots_.size(); }
  int index_of(const std::vector<int>& simple_coords) const;
  int negative_of(int i) const;
  // Index of alpha_i among roots().
  int simple_root(int i) const;
  // Index of the sum of two roots, or -1.
  int sum_index(int a, int b) const;
  int highest_root() const { return static_cast<int>(num_positive()) - 1; }

  int coxeter_number() const { return coxeter_; }
  const std::vector<int>& exponents() const { return exponents_; }

  // Squared lengths of simple roots, scaled so that short roots have 2.
  const std::vector<int>& simple_lengths() const { return lengths_; }
  int inner(const std::vector<int>& a, const std::vector<int>& b) const;
  int length2(int root_index) const;
  // Coefficients of alpha^vee in the simple coroots.
  std::vector<int> coroot_coeffs(int root_index) const;

  Weight weight_of(const std::vector<int>& simple_coords) const;
  // Simple-root coordinates of a weight; throws if not in the root lattice.
  std::vector<int> to_simple_coords(const Weight& w) const;
  Weight rho() const { return Weight(std::vector<int>(rank_, 1)); }

  // prod_i (1 + t + ... + t^{m_i}).
  std::vector<long long> length_polynomial() const;

 private:
  char type_;
  int rank_;
  std::vector<std::vector<int>> cartan_;
  std::vector<int> lengths_;
  std::vector<Root> roots_;
  std::map<std::vector<int>, int> index_;
  int coxeter_ = 0;
  std::vector<int> exponents_;
};

struct WeylElement {
  // Action on fundamental-weight coordinates: new = matrix * old.
  std::vector<std::vector<int>> matrix;
  std::vector<int> root_perm;  // index of w(alpha) for every root alpha
  int length = 0;

  Weight act(const Weight& w) const;
};

// All of W, rank <= 4. Identity first, then breadth-first in simple
// reflections, which orders elements by length.
std::vector<WeylElement> weyl_group(const RootSystem& rs);
// w.lambda = w(lambda + rho) - rho
Weight dot_action(const WeylElement& w, const Weight& lambda, const RootSystem& rs);

// All distinct sums of subsets of roots: the weights of the exterior algebra
// of the Lie algebra.
std::vector<Weight> exterior_weights(const RootSystem& rs);

struct WeightLemmaReport {
  bool holds = true;
  bool hypothesis_ok = true;
  std::uint64_t tuples_checked = 0;
  std::optional<std::vector<Weight>> witness;
};

// For tuples of weights of the exterior algebra, checks that
// sum_i p^i lambda_i in n X*(T) forces the sum to vanish.
WeightLemmaReport check_weight_lemma(const RootSystem& rs, std::uint32_t p, int f, long long n);

}  // namespace lieval
