#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lieval {

// Field element. For F_{p^m} the value packs the coefficients of the
// polynomial representative in base p: value = sum c_i p^i.
using Elem = std::uint32_t;

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotAComplex : public std::runtime_error {
 public:
  NotAComplex(const std::string& what, std::size_t column)
      : std::runtime_error(what), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

bool is_prime(std::uint64_t n);

// F_{p^m} = F_p[x]/(f) with f the least monic irreducible of degree m,
// ordering candidates by the packed value of their lower coefficients.
class Fq {
 public:
  explicit Fq(std::uint32_t p, unsigned m = 1);

  std::uint32_t p() const { return p_; }
  unsigned degree() const { return m_; }
  std::uint32_t order() const { return q_; }
  bool is_prime_field() const { return m_ == 1; }
  // Coefficients c_0..c_m of the modulus, c_m = 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const;

  Elem add(Elem a, Elem b) const {
    if (m_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_slow(a, b);
  }
  Elem neg(Elem a) const {
    if (m_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_slow(a);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (m_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
    if (a == 0 || b == 0) return 0;
    if (!log_.empty()) {
      std::uint32_t e = log_[a] + log_[b];
      if (e >= q_ - 1) e -= q_ - 1;
      return exp_[e];
    }
    return mul_slow(a, b);
  }
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  // x -> x^(p^k).
  Elem frobenius(Elem x, unsigned k) const;

  std::vector<std::uint32_t> coeffs(Elem x) const;
  Elem from_coeffs(const std::vector<std::uint32_t>& c) const;
  // Smallest generator of the multiplicative group.
  Elem primitive() const { return primitive_; }
  // True when x lies in the subfield of order p^d (d must divide m).
  bool in_subfield(Elem x, unsigned d) const;

  std::string str(Elem x) const;

 private:
  Elem add_slow(Elem a, Elem b) const;
  Elem neg_slow(Elem a) const;
  Elem mul_slow(Elem a, Elem b) const;

  std::uint32_t p_;
  unsigned m_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  Elem primitive_ = 1;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

// Polynomial helpers over F_p, coefficients low to high, trimmed.
namespace fp_poly {
using Poly = std::vector<std::uint32_t>;
Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p);
Poly mod(Poly a, const Poly& f, std::uint32_t p);
Poly gcd(Poly a, Poly b, std::uint32_t p);
bool is_irreducible(const Poly& f, std::uint32_t p);
}  // namespace fp_poly

struct SparseEntry {
  std::uint32_t col;
  Elem val;
  bool operator==(const SparseEntry&) const = default;
};
// Sorted by column, no explicit zeros.
using SparseRow = std::vector<SparseEntry>;

struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  Elem val;
};

// Row-compressed sparse matrix over a finite field.
class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

  // Duplicate positions are summed; zero results are dropped.
  static SparseMat from_triplets(std::size_t rows, std::size_t cols,
                                 std::vector<Triplet> entries, const Fq& F);
  static SparseMat from_dense(const std::vector<std::vector<Elem>>& rows,
                              std::size_t cols);

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;
  const SparseRow& row(std::size_t i) const { return data_[i]; }
  std::vector<Triplet> triplets() const;

  SparseMat transpose() const;
  // this * rhs
  SparseMat multiply(const SparseMat& rhs, const Fq& F) const;
  std::vector<Elem> apply(const std::vector<Elem>& x, const Fq& F) const;
  std::vector<std::vector<Elem>> to_dense() const;

 private:
  std::size_t cols_ = 0;
  std::vector<SparseRow> data_;
};

// Incremental row reduction. Pivot columns are chosen by smallest column
// weight (a static Markowitz count), ties to the lower column. Once the pivot
// rows fill past a threshold the remaining work runs on dense rows.
class Eliminator {
 public:
  Eliminator(std::size_t ncols, const Fq& F,
             std::vector<std::uint32_t> col_weight = {});

  // Reduces the row against the current pivots and keeps the remainder as a
  // new pivot if it is nonzero. Returns whether the rank grew.
  bool insert(const SparseRow& row);
  bool insert_dense(const std::vector<Elem>& row);
  bool in_span(const std::vector<Elem>& row);
  // Remainder of a dense vector after reduction by all pivots.
  std::vector<Elem> reduce(const std::vector<Elem>& row);

  std::size_t rank() const { return pivot_col_.size(); }
  std::size_t cols() const { return ncols_; }
  bool dense_mode() const { return dense_; }
  const std::vector<std::uint32_t>& pivot_columns() const { return pivot_col_; }

  // Basis of the null space of the matrix whose rows were inserted.
  std::vector<std::vector<Elem>> kernel();

 private:
  void reduce_into_acc();
  void switch_to_dense();
  bool finish_row();

  std::size_t ncols_;
  const Fq* F_;
  std::vector<std::uint32_t> col_weight_;
  std::vector<std::int32_t> pivot_of_col_;
  std::vector<std::uint32_t> pivot_col_;
  std::vector<SparseRow> sparse_rows_;
  std::vector<std::vector<Elem>> dense_rows_;
  bool dense_ = false;
  std::size_t total_nnz_ = 0;

  std::vector<Elem> acc_;
  std::vector<std::uint8_t> touched_flag_;
  std::vector<std::uint32_t> touched_;
  std::vector<std::uint8_t> queued_;
};

std::size_t rank(const SparseMat& M, const Fq& F);
std::vector<std::vector<Elem>> kernel_basis(const SparseMat& M, const Fq& F);
// Rank of the span of the given dense vectors.
std::size_t rank_of_vectors(const std::vector<std::vector<Elem>>& vs,
                            std::size_t dim, const Fq& F);

// dim ker(d_out) - rank(d_in), after checking d_out * d_in = 0.
// d_in : C^{q-1} -> C^q, d_out : C^q -> C^{q+1}, matrices act on columns.
std::size_t cohomology_dim(const SparseMat& d_in, const SparseMat& d_out,
                           const Fq& F);

}  // namespace lieval
