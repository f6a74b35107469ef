#include "lieval/linfp.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace lieval {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

namespace fp_poly {

static void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

static std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

Poly mod(Poly a, const Poly& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  std::uint32_t lead_inv = inv_mod(f.back(), p);
  while (a.size() >= f.size()) {
    std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      std::uint64_t t = c * f[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - t) % p);
    }
    trim(a);
  }
  return a;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>(
          (r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  return mod(std::move(r), f, p);
}

Poly gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    std::uint32_t li = inv_mod(a.back(), p);
    for (auto& c : a) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * li % p);
  }
  return a;
}

static Poly powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly r{1};
  base = mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = mulmod(r, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  if (f.size() < 2 || f.back() == 0) return false;
  const std::size_t m = f.size() - 1;
  if (m == 1) return true;
  // Rabin: x^(p^m) = x mod f and gcd(x^(p^(m/d)) - x, f) = 1 for primes d | m.
  std::vector<Poly> frob(m + 1);
  frob[0] = mod(Poly{0, 1}, f, p);
  for (std::size_t k = 1; k <= m; ++k) frob[k] = powmod(frob[k - 1], p, f, p);
  Poly x = mod(Poly{0, 1}, f, p);
  if (frob[m] != x) return false;
  for (std::uint64_t d : prime_factors(m)) {
    Poly g = frob[m / d];
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;
    trim(g);
    Poly gg = gcd(g, f, p);
    if (gg.size() != 1) return false;
  }
  return true;
}

}  // namespace fp_poly

Fq::Fq(std::uint32_t p, unsigned m) : p_(p), m_(m) {
  if (!is_prime(p)) throw FieldError("field characteristic " + std::to_string(p) + " is not prime");
  if (m == 0) throw FieldError("field degree must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < m; ++i) {
    q *= p;
    if (q >= (std::uint64_t{1} << 32)) throw FieldError("field order exceeds 2^32");
  }
  q_ = static_cast<std::uint32_t>(q);

  if (m == 1) {
    modulus_ = {0, 1};
  } else {
    std::uint64_t low_count = q;
    bool found = false;
    for (std::uint64_t low = 0; low < low_count && !found; ++low) {
      fp_poly::Poly f(m + 1, 0);
      std::uint64_t v = low;
      for (unsigned i = 0; i < m; ++i) {
        f[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      f[m] = 1;
      if (fp_poly::is_irreducible(f, p)) {
        modulus_ = f;
        found = true;
      }
    }
    if (!found) throw FieldError("no irreducible polynomial found");
  }

  if (q_ == 2) {
    primitive_ = 1;
  } else {
    auto factors = prime_factors(q_ - 1);
    for (Elem g = 1; g < q_; ++g) {
      bool ok = true;
      for (auto r : factors)
        if (pow(g, (q_ - 1) / r) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        primitive_ = g;
        break;
      }
    }
  }

  if (m > 1 && q_ <= (1u << 20)) {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    Elem x = 1;
    for (std::uint32_t i = 0; i + 1 < q_; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = mul_slow(x, primitive_);
    }
  }
}

Elem Fq::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

Elem Fq::add_slow(Elem a, Elem b) const {
  Elem r = 0, mult = 1;
  for (unsigned i = 0; i < m_; ++i) {
    Elem s = (a % p_ + b % p_) % p_;
    r += s * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return r;
}

Elem Fq::neg_slow(Elem a) const {
  Elem r = 0, mult = 1;
  for (unsigned i = 0; i < m_; ++i) {
    Elem d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * mult;
    a /= p_;
    mult *= p_;
  }
  return r;
}

Elem Fq::mul_slow(Elem a, Elem b) const {
  return from_coeffs(fp_poly::mulmod(coeffs(a), coeffs(b), modulus_, p_));
}

Elem Fq::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Fq::inv(Elem a) const {
  if (a == 0) throw FieldError("inverse of zero");
  if (!log_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, q_ - 2);
}

Elem Fq::frobenius(Elem x, unsigned k) const {
  k %= m_;
  std::uint64_t e = 1;
  for (unsigned i = 0; i < k; ++i) e *= p_;
  return pow(x, e);
}

std::vector<std::uint32_t> Fq::coeffs(Elem x) const {
  std::vector<std::uint32_t> c(m_, 0);
  for (unsigned i = 0; i < m_; ++i) {
    c[i] = x % p_;
    x /= p_;
  }
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

Elem Fq::from_coeffs(const std::vector<std::uint32_t>& c) const {
  if (c.size() > m_) throw FieldError("coefficient vector longer than field degree");
  Elem r = 0, mult = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    r += (c[i] % p_) * mult;
    mult *= p_;
  }
  return r;
}

bool Fq::in_subfield(Elem x, unsigned d) const {
  if (d == 0 || m_ % d != 0) throw FieldError("subfield degree must divide the field degree");
  return frobenius(x, d) == x;
}

std::string Fq::str(Elem x) const {
  if (m_ == 1) return std::to_string(x);
  auto c = coeffs(x);
  if (c.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || c[i] != 1) out += std::to_string(c[i]);
    if (i >= 1) out += "t";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

SparseMat SparseMat::from_triplets(std::size_t rows, std::size_t cols,
                                   std::vector<Triplet> entries, const Fq& F) {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMat M(rows, cols);
  for (std::size_t i = 0; i < entries.size();) {
    const auto& t = entries[i];
    if (t.row >= rows || t.col >= cols) throw std::out_of_range("triplet outside matrix");
    Elem v = 0;
    std::size_t j = i;
    while (j < entries.size() && entries[j].row == t.row && entries[j].col == t.col) {
      v = F.add(v, entries[j].val);
      ++j;
    }
    if (v != 0) M.data_[t.row].push_back({t.col, v});
    i = j;
  }
  return M;
}

SparseMat SparseMat::from_dense(const std::vector<std::vector<Elem>>& rows, std::size_t cols) {
  SparseMat M(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (rows[i][j] != 0) M.data_[i].push_back({static_cast<std::uint32_t>(j), rows[i][j]});
  return M;
}

std::size_t SparseMat::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

std::vector<Triplet> SparseMat::triplets() const {
  std::vector<Triplet> out;
  for (std::size_t i = 0; i < data_.size(); ++i)
    for (const auto& e : data_[i]) out.push_back({static_cast<std::uint32_t>(i), e.col, e.val});
  return out;
}

SparseMat SparseMat::transpose() const {
  SparseMat T(cols_, data_.size());
  for (std::size_t i = 0; i < data_.size(); ++i)
    for (const auto& e : data_[i]) T.data_[e.col].push_back({static_cast<std::uint32_t>(i), e.val});
  return T;
}

SparseMat SparseMat::multiply(const SparseMat& rhs, const Fq& F) const {
  if (cols_ != rhs.rows()) throw std::invalid_argument("matrix dimensions do not compose");
  SparseMat out(rows(), rhs.cols());
  std::vector<Elem> acc(rhs.cols(), 0);
  std::vector<std::uint8_t> flag(rhs.cols(), 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t i = 0; i < rows(); ++i) {
    touched.clear();
    for (const auto& a : data_[i]) {
      for (const auto& b : rhs.data_[a.col]) {
        if (!flag[b.col]) {
          flag[b.col] = 1;
          touched.push_back(b.col);
        }
        acc[b.col] = F.add(acc[b.col], F.mul(a.val, b.val));
      }
    }
    std::sort(touched.begin(), touched.end());
    for (auto c : touched) {
      if (acc[c] != 0) out.data_[i].push_back({c, acc[c]});
      acc[c] = 0;
      flag[c] = 0;
    }
  }
  return out;
}

std::vector<Elem> SparseMat::apply(const std::vector<Elem>& x, const Fq& F) const {
  if (x.size() != cols_) throw std::invalid_argument("vector length does not match matrix");
  std::vector<Elem> y(rows(), 0);
  for (std::size_t i = 0; i < rows(); ++i) {
    Elem s = 0;
    for (const auto& e : data_[i]) s = F.add(s, F.mul(e.val, x[e.col]));
    y[i] = s;
  }
  return y;
}

std::vector<std::vector<Elem>> SparseMat::to_dense() const {
  std::vector<std::vector<Elem>> out(rows(), std::vector<Elem>(cols_, 0));
  for (std::size_t i = 0; i < rows(); ++i)
    for (const auto& e : data_[i]) out[i][e.col] = e.val;
  return out;
}

Eliminator::Eliminator(std::size_t ncols, const Fq& F, std::vector<std::uint32_t> col_weight)
    : ncols_(ncols),
      F_(&F),
      col_weight_(std::move(col_weight)),
      pivot_of_col_(ncols, -1),
      acc_(ncols, 0),
      touched_flag_(ncols, 0) {
  if (col_weight_.empty()) col_weight_.assign(ncols, 0);
  if (col_weight_.size() != ncols) throw std::invalid_argument("column weight length mismatch");
}

void Eliminator::reduce_into_acc() {
  const Fq& F = *F_;
  if (dense_) {
    for (std::size_t k = 0; k < pivot_col_.size(); ++k) {
      Elem a = acc_[pivot_col_[k]];
      if (a == 0) continue;
      Elem na = F.neg(a);
      const auto& pr = dense_rows_[k];
      for (std::size_t c = 0; c < ncols_; ++c)
        if (pr[c] != 0) acc_[c] = F.add(acc_[c], F.mul(na, pr[c]));
    }
    return;
  }
  // Pivot k is zero at the pivot columns of all earlier pivots, so
  // processing pivots in increasing order terminates.
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap;
  if (queued_.size() < pivot_col_.size()) queued_.resize(pivot_col_.size(), 0);
  for (auto c : touched_) {
    std::int32_t k = pivot_of_col_[c];
    if (k >= 0 && acc_[c] != 0 && !queued_[k]) {
      queued_[k] = 1;
      heap.push(static_cast<std::uint32_t>(k));
    }
  }
  while (!heap.empty()) {
    std::uint32_t k = heap.top();
    heap.pop();
    queued_[k] = 0;
    std::uint32_t pc = pivot_col_[k];
    Elem a = acc_[pc];
    if (a == 0) continue;
    Elem na = F.neg(a);
    for (const auto& e : sparse_rows_[k]) {
      if (!touched_flag_[e.col]) {
        touched_flag_[e.col] = 1;
        touched_.push_back(e.col);
      }
      acc_[e.col] = F.add(acc_[e.col], F.mul(na, e.val));
      if (e.col != pc) {
        std::int32_t kk = pivot_of_col_[e.col];
        if (kk >= 0 && acc_[e.col] != 0 && !queued_[kk]) {
          queued_[kk] = 1;
          heap.push(static_cast<std::uint32_t>(kk));
        }
      }
    }
  }
}

bool Eliminator::finish_row() {
  const Fq& F = *F_;
  SparseRow row;
  if (dense_) {
    for (std::size_t c = 0; c < ncols_; ++c)
      if (acc_[c] != 0) row.push_back({static_cast<std::uint32_t>(c), acc_[c]});
    std::fill(acc_.begin(), acc_.end(), 0);
  } else {
    std::sort(touched_.begin(), touched_.end());
    for (auto c : touched_) {
      if (acc_[c] != 0) row.push_back({c, acc_[c]});
      acc_[c] = 0;
      touched_flag_[c] = 0;
    }
    touched_.clear();
  }
  if (row.empty()) return false;

  std::size_t best = 0;
  for (std::size_t i = 1; i < row.size(); ++i)
    if (col_weight_[row[i].col] < col_weight_[row[best].col]) best = i;
  Elem inv = F.inv(row[best].val);
  for (auto& e : row) e.val = F.mul(e.val, inv);
  std::uint32_t pc = row[best].col;
  pivot_of_col_[pc] = static_cast<std::int32_t>(pivot_col_.size());
  pivot_col_.push_back(pc);
  total_nnz_ += row.size();
  if (dense_) {
    std::vector<Elem> d(ncols_, 0);
    for (const auto& e : row) d[e.col] = e.val;
    dense_rows_.push_back(std::move(d));
  } else {
    sparse_rows_.push_back(std::move(row));
    queued_.push_back(0);
    if (ncols_ >= 64 && total_nnz_ * 10 > 3 * pivot_col_.size() * ncols_ && pivot_col_.size() >= 32)
      switch_to_dense();
  }
  return true;
}

void Eliminator::switch_to_dense() {
  dense_rows_.reserve(sparse_rows_.size());
  for (const auto& r : sparse_rows_) {
    std::vector<Elem> d(ncols_, 0);
    for (const auto& e : r) d[e.col] = e.val;
    dense_rows_.push_back(std::move(d));
  }
  sparse_rows_.clear();
  dense_ = true;
}

bool Eliminator::insert(const SparseRow& row) {
  for (const auto& e : row) {
    if (e.col >= ncols_) throw std::out_of_range("row entry outside eliminator width");
    if (!dense_ && !touched_flag_[e.col]) {
      touched_flag_[e.col] = 1;
      touched_.push_back(e.col);
    }
    acc_[e.col] = F_->add(acc_[e.col], e.val);
  }
  reduce_into_acc();
  return finish_row();
}

bool Eliminator::insert_dense(const std::vector<Elem>& row) {
  if (row.size() != ncols_) throw std::invalid_argument("row length mismatch");
  SparseRow s;
  for (std::size_t c = 0; c < ncols_; ++c)
    if (row[c] != 0) s.push_back({static_cast<std::uint32_t>(c), row[c]});
  return insert(s);
}

std::vector<Elem> Eliminator::reduce(const std::vector<Elem>& row) {
  if (row.size() != ncols_) throw std::invalid_argument("row length mismatch");
  for (std::size_t c = 0; c < ncols_; ++c) {
    if (row[c] == 0) continue;
    if (!dense_ && !touched_flag_[c]) {
      touched_flag_[c] = 1;
      touched_.push_back(static_cast<std::uint32_t>(c));
    }
    acc_[c] = row[c];
  }
  reduce_into_acc();
  std::vector<Elem> out(acc_);
  if (dense_) {
    std::fill(acc_.begin(), acc_.end(), 0);
  } else {
    for (auto c : touched_) {
      acc_[c] = 0;
      touched_flag_[c] = 0;
    }
    touched_.clear();
  }
  return out;
}

bool Eliminator::in_span(const std::vector<Elem>& row) {
  auto r = reduce(row);
  return std::all_of(r.begin(), r.end(), [](Elem e) { return e == 0; });
}

std::vector<std::vector<Elem>> Eliminator::kernel() {
  const Fq& F = *F_;
  const std::size_t r = pivot_col_.size();
  // Fully reduce: later pivot rows first, so each subtraction uses a row that
  // is already zero at every other pivot column.
  std::vector<std::vector<Elem>> rows(r);
  for (std::size_t k = 0; k < r; ++k) {
    if (dense_) {
      rows[k] = dense_rows_[k];
    } else {
      rows[k].assign(ncols_, 0);
      for (const auto& e : sparse_rows_[k]) rows[k][e.col] = e.val;
    }
  }
  for (std::size_t kk = r; kk-- > 0;) {
    auto& row = rows[kk];
    for (std::size_t k2 = kk + 1; k2 < r; ++k2) {
      Elem a = row[pivot_col_[k2]];
      if (a == 0) continue;
      Elem na = F.neg(a);
      const auto& other = rows[k2];
      for (std::size_t c = 0; c < ncols_; ++c)
        if (other[c] != 0) row[c] = F.add(row[c], F.mul(na, other[c]));
    }
  }
  std::vector<std::vector<Elem>> basis;
  for (std::size_t f = 0; f < ncols_; ++f) {
    if (pivot_of_col_[f] >= 0) continue;
    std::vector<Elem> v(ncols_, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < r; ++k)
      if (rows[k][f] != 0) v[pivot_col_[k]] = F.neg(rows[k][f]);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

std::vector<std::uint32_t> column_counts(const SparseMat& M) {
  std::vector<std::uint32_t> counts(M.cols(), 0);
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (const auto& e : M.row(i)) ++counts[e.col];
  return counts;
}

std::vector<std::size_t> rows_by_sparsity(const SparseMat& M) {
  std::vector<std::size_t> order(M.rows());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return M.row(a).size() < M.row(b).size();
  });
  return order;
}

}  // namespace

std::size_t rank(const SparseMat& M, const Fq& F) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  // Eliminate along the shorter side.
  if (M.rows() > M.cols() * 2) return rank(M.transpose(), F);
  Eliminator el(M.cols(), F, column_counts(M));
  for (auto i : rows_by_sparsity(M)) {
    el.insert(M.row(i));
    if (el.rank() == M.cols()) break;
  }
  return el.rank();
}

std::vector<std::vector<Elem>> kernel_basis(const SparseMat& M, const Fq& F) {
  Eliminator el(M.cols(), F, column_counts(M));
  for (auto i : rows_by_sparsity(M)) el.insert(M.row(i));
  return el.kernel();
}

std::size_t rank_of_vectors(const std::vector<std::vector<Elem>>& vs, std::size_t dim,
                            const Fq& F) {
  Eliminator el(dim, F);
  for (const auto& v : vs) el.insert_dense(v);
  return el.rank();
}

std::size_t cohomology_dim(const SparseMat& d_in, const SparseMat& d_out, const Fq& F) {
  if (d_in.rows() != d_out.cols())
    throw std::invalid_argument("differentials do not compose: " + std::to_string(d_in.rows()) +
                                " vs " + std::to_string(d_out.cols()));
  SparseMat comp = d_out.multiply(d_in, F);
  if (comp.nnz() != 0) {
    std::size_t first = d_in.cols();
    for (std::size_t i = 0; i < comp.rows(); ++i)
      if (!comp.row(i).empty()) first = std::min<std::size_t>(first, comp.row(i).front().col);
    throw NotAComplex("not a complex: composite differential is nonzero on column " +
                          std::to_string(first),
                      first);
  }
  std::size_t dim = d_out.cols();
  return dim - rank(d_out, F) - rank(d_in, F);
}

}  // namespace lieval
