#include "lieval/chevalley.hpp"

#include <algorithm>
#include <json.hpp>
#include <limits>
#include <map>

#include "lieval/rational.hpp"

namespace lieval {

namespace {

constexpr long long kUnset = std::numeric_limits<long long>::min();

std::string root_label(const Root& r) {
  std::string s = "X[";
  for (std::size_t i = 0; i < r.coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(r.coords[i]);
  }
  return s + "]";
}

ZVec from_dense(const std::vector<long long>& d) {
  ZVec out;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) out.push_back({static_cast<int>(i), d[i]});
  return out;
}

class ConstantSolver {
 public:
  explicit ConstantSolver(const RootSystem& rs)
      : rs_(rs), nr_(static_cast<int>(rs.num_roots())), memo_(nr_ * nr_, kUnset) {}

  long long get(int a, int b) {
    if (a == rs_.negative_of(b)) return 0;
    int s = rs_.sum_index(a, b);
    if (s < 0) return 0;
    long long& slot = memo_[a * nr_ + b];
    if (slot != kUnset) return slot;
    long long val = compute(a, b, s);
    memo_[a * nr_ + b] = val;
    return val;
  }

  // Largest r with beta - r alpha a root.
  int string_length(int a, int b) const {
    int r = 0;
    std::vector<int> c = rs_.root(b).coords;
    for (;;) {
      for (int i = 0; i < rs_.rank(); ++i) c[i] -= rs_.root(a).coords[i];
      if (rs_.index_of(c) < 0) return r;
      ++r;
    }
  }

  std::pair<int, int> extraspecial(int xi) const {
    int np = static_cast<int>(rs_.num_positive());
    for (int a = 0; a < np; ++a) {
      int b = rs_.sum_index(xi, rs_.negative_of(a));
      if (b >= 0 && b < np) return {a, b};
    }
    throw StructureError("no extraspecial pair for root " + std::to_string(xi));
  }

 private:
  bool pos(int i) const { return rs_.root(i).positive(); }
  int len(int i) const { return rs_.length2(i); }

  static long long to_int(const Rational& q) {
    if (!q.is_integer()) throw StructureError("non-integral structure constant");
    return q.num();
  }

  long long compute(int a, int b, int s) {
    if (pos(a) && pos(b)) {
      if (a > b) return -get(b, a);
      auto [g, d] = extraspecial(s);
      if (g == a && d == b) return string_length(a, b) + 1;
      // Four-term identity for alpha + beta - gamma - delta = 0, where
      // (gamma, delta) is the extraspecial pair of alpha + beta.
      Rational acc(0);
      int ng = rs_.negative_of(g), nd = rs_.negative_of(d);
      int s1 = rs_.sum_index(b, ng);
      if (s1 >= 0) acc = acc + Rational(get(b, ng) * get(a, nd), len(s1));
      int s2 = rs_.sum_index(a, ng);
      if (s2 >= 0) acc = acc + Rational(get(ng, a) * get(b, nd), len(s2));
      return to_int(acc * Rational(len(s), get(g, d)));
    }
    if (!pos(a) && !pos(b)) return -get(rs_.negative_of(a), rs_.negative_of(b));
    if (!pos(a)) return -get(b, a);
    // a positive, b negative; gamma = -(alpha + beta) closes the triangle.
    int g = rs_.negative_of(s);
    if (pos(g)) return to_int(Rational(get(g, a) * len(g), len(b)));
    return to_int(Rational(get(b, g) * len(g), len(a)));
  }

  const RootSystem& rs_;
  int nr_;
  std::vector<long long> memo_;
};

}  // namespace

int StructLie::center_basis() const {
  if (!center_) throw StructureError("Lie algebra has no centre");
  return static_cast<int>(rs_.num_roots()) + rs_.rank();
}

long long StructLie::structure_constant(int a, int b) const {
  return n_[a * rs_.num_roots() + b];
}

ZVec StructLie::bracket(const ZVec& x, const ZVec& y) const {
  std::vector<long long> acc(dim(), 0);
  for (const auto& a : x)
    for (const auto& b : y)
      for (const auto& t : bracket(a.index, b.index)) acc[t.index] += a.coeff * b.coeff * t.coeff;
  return from_dense(acc);
}

void StructLie::set_weights(std::vector<Weight> w, std::string new_name) {
  if (w.size() != basis_.size()) throw StructureError("weight list length mismatch");
  for (std::size_t i = 0; i < w.size(); ++i) basis_[i].weight = std::move(w[i]);
  name_ = std::move(new_name);
}

StructLie build_chevalley(const RootSystem& rs, bool with_center) {
  StructLie L(rs);
  L.name_ = rs.name();
  L.center_ = with_center;
  const int nr = static_cast<int>(rs.num_roots());
  const int r = rs.rank();

  for (int i = 0; i < nr; ++i)
    L.basis_.push_back({BasisKind::RootVector, i, root_label(rs.root(i)), rs.root(i).weight});
  for (int i = 0; i < r; ++i)
    L.basis_.push_back({BasisKind::Coroot, i, "H" + std::to_string(i + 1),
                        Weight(static_cast<std::size_t>(r))});
  if (with_center) L.basis_.push_back({BasisKind::Center, 0, "Z", Weight(static_cast<std::size_t>(r))});

  ConstantSolver solver(rs);
  L.n_.assign(static_cast<std::size_t>(nr) * nr, 0);
  for (int a = 0; a < nr; ++a)
    for (int b = 0; b < nr; ++b) {
      long long v = solver.get(a, b);
      L.n_[a * nr + b] = v;
      if (rs.sum_index(a, b) >= 0 && std::llabs(v) != solver.string_length(a, b) + 1)
        throw StructureError("structure constant has wrong magnitude");
    }

  const std::size_t dim = L.basis_.size();
  L.table_.assign(dim * dim, {});
  for (int a = 0; a < nr; ++a) {
    for (int b = 0; b < nr; ++b) {
      ZVec& out = L.table_[a * dim + b];
      if (a == rs.negative_of(b)) {
        auto co = rs.coroot_coeffs(a);
        for (int k = 0; k < r; ++k)
          if (co[k] != 0) out.push_back({L.coroot_basis(k), co[k]});
      } else if (int s = rs.sum_index(a, b); s >= 0) {
        out.push_back({s, L.n_[a * nr + b]});
      }
    }
    for (int k = 0; k < r; ++k) {
      int pairing = rs.root(a).weight[k];
      if (pairing == 0) continue;
      L.table_[L.coroot_basis(k) * dim + a].push_back({a, pairing});
      L.table_[a * dim + L.coroot_basis(k)].push_back({a, -pairing});
    }
  }

  if (auto bad = jacobi_violation(L))
    throw StructureError("Jacobi identity fails on basis triple (" + std::to_string((*bad)[0]) +
                         "," + std::to_string((*bad)[1]) + "," + std::to_string((*bad)[2]) + ")");
  return L;
}

StructLie build_gl(int n) {
  if (n < 2) throw StructureError("gl_n needs n >= 2");
  StructLie L = build_chevalley(RootSystem('A', n - 1), true);
  std::vector<Weight> w;
  for (const auto& b : L.basis()) {
    Weight e(static_cast<std::size_t>(n));
    if (b.kind == BasisKind::RootVector) {
      const auto& c = L.roots().root(b.index).coords;
      for (int j = 0; j < n; ++j) e[j] = (j < n - 1 ? c[j] : 0) - (j > 0 ? c[j - 1] : 0);
    }
    w.push_back(e);
  }
  L.set_weights(std::move(w), "gl" + std::to_string(n));
  return L;
}

std::optional<std::array<int, 3>> jacobi_violation(const StructLie& L, std::uint32_t modulus) {
  const int dim = static_cast<int>(L.dim());
  auto reduce = [modulus](long long v) {
    if (modulus == 0) return v;
    long long m = v % static_cast<long long>(modulus);
    return m < 0 ? m + modulus : m;
  };
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const auto& x = L.bracket(i, j);
      const auto& y = L.bracket(j, i);
      if (x.size() != y.size()) return std::array<int, 3>{i, j, j};
      for (std::size_t k = 0; k < x.size(); ++k)
        if (x[k].index != y[k].index || reduce(x[k].coeff + y[k].coeff) != 0)
          return std::array<int, 3>{i, j, j};
    }
  std::vector<long long> acc(dim, 0);
  auto add_nested = [&](int a, int b, int c) {
    // [a, [b, c]]
    for (const auto& t : L.bracket(b, c))
      for (const auto& u : L.bracket(a, t.index)) acc[u.index] += t.coeff * u.coeff;
  };
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k) {
        std::fill(acc.begin(), acc.end(), 0);
        add_nested(i, j, k);
        add_nested(j, k, i);
        add_nested(k, i, j);
        for (auto v : acc)
          if (reduce(v) != 0) return std::array<int, 3>{i, j, k};
      }
  return std::nullopt;
}

Triangular triangular(const StructLie& L) {
  Triangular T;
  const auto& rs = L.roots();
  for (std::size_t i = 0; i < L.dim(); ++i) {
    const auto& b = L.basis(i);
    int idx = static_cast<int>(i);
    if (b.kind == BasisKind::RootVector) {
      if (rs.root(b.index).positive())
        T.n.push_back(idx);
      else
        T.n_minus.push_back(idx);
    } else {
      T.t.push_back(idx);
    }
  }
  T.b = T.t;
  T.b.insert(T.b.end(), T.n.begin(), T.n.end());
  std::sort(T.b.begin(), T.b.end());
  T.b_minus = T.t;
  T.b_minus.insert(T.b_minus.end(), T.n_minus.begin(), T.n_minus.end());
  std::sort(T.b_minus.begin(), T.b_minus.end());

  auto closed = [&](const std::vector<int>& S) {
    std::vector<bool> in(L.dim(), false);
    for (int s : S) in[s] = true;
    for (int a : S)
      for (int b : S)
        for (const auto& t : L.bracket(a, b))
          if (!in[t.index]) return false;
    return true;
  };
  for (const auto* S : {&T.n, &T.t, &T.n_minus, &T.b, &T.b_minus})
    if (!closed(*S)) throw StructureError("triangular piece is not a subalgebra");
  return T;
}

std::vector<IntMatrix> matrix_realization(const StructLie& L) {
  const auto& rs = L.roots();
  if (rs.type() != 'A') throw StructureError("matrix realization is implemented for type A only");
  const int n = rs.rank() + 1;
  const int np = static_cast<int>(rs.num_positive());
  auto zero = [n] { return IntMatrix(n, std::vector<long long>(n, 0)); };
  auto comm = [n, &zero](const IntMatrix& A, const IntMatrix& B) {
    IntMatrix C = zero();
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j] - B[i][k] * A[k][j];
    return C;
  };

  std::vector<IntMatrix> M(L.dim(), zero());
  ConstantSolver solver(rs);
  for (int i = 0; i < rs.rank(); ++i) {
    M[rs.simple_root(i)][i][i + 1] = 1;
    M[rs.negative_of(rs.simple_root(i))][i + 1][i] = 1;
    auto& H = M[L.coroot_basis(i)];
    H[i][i] = 1;
    H[i + 1][i + 1] = -1;
  }
  if (L.has_center())
    for (int i = 0; i < n; ++i) M[L.center_basis()][i][i] = 1;
  for (int xi = 0; xi < np; ++xi) {
    if (rs.root(xi).height == 1) continue;
    auto [a, b] = solver.extraspecial(xi);
    for (int sign = 0; sign < 2; ++sign) {
      int aa = sign ? rs.negative_of(a) : a;
      int bb = sign ? rs.negative_of(b) : b;
      int target = sign ? rs.negative_of(xi) : xi;
      long long N = L.structure_constant(aa, bb);
      IntMatrix C = comm(M[aa], M[bb]);
      for (auto& row : C)
        for (auto& v : row) {
          if (v % N != 0) throw StructureError("realization is not integral");
          v /= N;
        }
      M[target] = C;
    }
  }
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = 0; j < L.dim(); ++j) {
      IntMatrix expect = zero();
      for (const auto& t : L.bracket(i, j))
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) expect[r][c] += t.coeff * M[t.index][r][c];
      if (comm(M[i], M[j]) != expect) throw StructureError("matrix realization is not a homomorphism");
    }
  return M;
}

std::string bracket_table_json(const StructLie& L) {
  nlohmann::json j;
  j["algebra"] = L.name();
  j["center"] = L.has_center();
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& b : L.basis()) basis.push_back({{"label", b.label}, {"weight", b.weight.coords}});
  j["basis"] = basis;
  nlohmann::json br = nlohmann::json::array();
  for (std::size_t a = 0; a < L.dim(); ++a)
    for (std::size_t b = a + 1; b < L.dim(); ++b) {
      const auto& v = L.bracket(a, b);
      if (v.empty()) continue;
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& t : v) terms.push_back({t.index, t.coeff});
      br.push_back({a, b, terms});
    }
  j["brackets"] = br;
  return j.dump();
}

}  // namespace lieval
