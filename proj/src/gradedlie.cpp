#include "lieval/gradedlie.hpp"

#include <algorithm>
#include <json.hpp>

namespace lieval {

namespace {

void sort_terms(FpVec& v) {
  std::sort(v.begin(), v.end(), [](const FpTerm& a, const FpTerm& b) { return a.index < b.index; });
}

std::string terms_str(const FpVec& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i].coeff) + "*e" + std::to_string(v[i].index);
  }
  return s + "}";
}

int basis_height(const StructLie& L, int idx) {
  const auto& b = L.basis(idx);
  return b.kind == BasisKind::RootVector ? L.roots().root(b.index).height : 0;
}

}  // namespace

FiniteGradedLie::FiniteGradedLie(std::string name, std::uint32_t p, int degree_den,
                                 std::vector<GradedBasisElement> basis, std::vector<FpVec> table)
    : name_(std::move(name)),
      field_(p),
      den_(degree_den),
      basis_(std::move(basis)),
      table_(std::move(table)) {
  if (den_ <= 0) throw std::invalid_argument("degree denominator must be positive");
  if (table_.size() != basis_.size() * basis_.size())
    throw std::invalid_argument("bracket table has wrong size");
  for (auto& v : table_) {
    sort_terms(v);
    for (const auto& t : v)
      if (t.index < 0 || static_cast<std::size_t>(t.index) >= basis_.size() || t.coeff == 0 ||
          t.coeff >= p)
        throw std::invalid_argument("malformed bracket term");
  }
}

std::vector<Elem> FiniteGradedLie::bracket(const std::vector<Elem>& x,
                                           const std::vector<Elem>& y) const {
  std::vector<Elem> out(dim(), 0);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (y[j] == 0) continue;
      Elem c = field_.mul(x[i], y[j]);
      for (const auto& t : bracket(i, j)) out[t.index] = field_.add(out[t.index], field_.mul(c, t.coeff));
    }
  }
  return out;
}

void FiniteGradedLie::set_bracket(std::size_t i, std::size_t j, FpVec v) {
  sort_terms(v);
  FpVec neg = v;
  for (auto& t : neg) t.coeff = field_.neg(t.coeff);
  table_[i * dim() + j] = std::move(v);
  table_[j * dim() + i] = std::move(neg);
}

FiniteGradedLie FiniteGradedLie::permuted(const std::vector<int>& perm) const {
  const std::size_t n = dim();
  if (perm.size() != n) throw std::invalid_argument("permutation length mismatch");
  std::vector<int> inv(n, -1);
  for (std::size_t k = 0; k < n; ++k) inv.at(perm[k]) = static_cast<int>(k);
  std::vector<GradedBasisElement> nb(n);
  for (std::size_t k = 0; k < n; ++k) nb[k] = basis_[perm[k]];
  std::vector<FpVec> nt(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      FpVec v = bracket(perm[a], perm[b]);
      for (auto& t : v) t.index = inv[t.index];
      nt[a * n + b] = std::move(v);
    }
  return FiniteGradedLie(name_, p(), den_, std::move(nb), std::move(nt));
}

CheckResult FiniteGradedLie::check_antisymmetry() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) {
      FpVec neg = bracket(j, i);
      for (auto& t : neg) t.coeff = field_.neg(t.coeff);
      if (bracket(i, j) != neg)
        return CheckResult::fail("antisymmetry fails for " + basis_[i].label + ", " + basis_[j].label);
    }
  return {};
}

CheckResult FiniteGradedLie::check_jacobi() const {
  if (auto r = check_antisymmetry(); !r) return r;
  const std::size_t n = dim();
  std::vector<Elem> acc(n);
  auto nested = [&](std::size_t a, std::size_t b, std::size_t c) {
    for (const auto& t : bracket(b, c))
      for (const auto& u : bracket(a, t.index))
        acc[u.index] = field_.add(acc[u.index], field_.mul(t.coeff, u.coeff));
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        std::fill(acc.begin(), acc.end(), 0);
        nested(i, j, k);
        nested(j, k, i);
        nested(k, i, j);
        if (std::any_of(acc.begin(), acc.end(), [](Elem e) { return e != 0; }))
          return CheckResult::fail("Jacobi identity fails on (" + basis_[i].label + ", " +
                                   basis_[j].label + ", " + basis_[k].label + ")");
      }
  return {};
}

CheckResult FiniteGradedLie::check_grading() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      for (const auto& t : bracket(i, j)) {
        const auto& k = basis_[t.index];
        if (k.degree_num != basis_[i].degree_num + basis_[j].degree_num)
          return CheckResult::fail("degree not additive on " + basis_[i].label + ", " + basis_[j].label);
        if (k.weight != basis_[i].weight + basis_[j].weight)
          return CheckResult::fail("weight not additive on " + basis_[i].label + ", " + basis_[j].label);
      }
  return {};
}

std::optional<int> FiniteGradedLie::nilpotency_length() const {
  std::vector<std::vector<Elem>> current;
  for (std::size_t i = 0; i < dim(); ++i) {
    std::vector<Elem> e(dim(), 0);
    e[i] = 1;
    current.push_back(e);
  }
  int length = 0;
  while (!current.empty()) {
    ++length;
    Eliminator el(dim(), field_);
    std::vector<std::vector<Elem>> next;
    for (std::size_t i = 0; i < dim(); ++i) {
      std::vector<Elem> e(dim(), 0);
      e[i] = 1;
      for (const auto& v : current) {
        auto w = bracket(e, v);
        if (el.insert_dense(w)) next.push_back(w);
      }
    }
    if (next.size() == current.size()) return std::nullopt;
    current = std::move(next);
  }
  return length;
}

GradedLie build_tilde_g(const StructLie& L, std::uint32_t p, int e, Elem lambda, Rational truncation) {
  if (e < 1) throw std::invalid_argument("ramification e must be positive");
  Fq F(p);
  if (lambda % p == 0) throw std::invalid_argument("lambda must be a unit");
  GradedLie tg(L, F);
  tg.e_ = e;
  tg.lambda_ = lambda % p;
  tg.h_ = L.roots().coxeter_number();
  Rational scaled = truncation * Rational(tg.h_ * e);
  if (scaled <= Rational(0)) throw std::invalid_argument("truncation must be positive");
  tg.max_num_ = static_cast<int>(scaled.floor());
  const int h = tg.h_;

  for (int i = 0; h * i - h < tg.max_num_; ++i) {
    for (std::size_t x = 0; x < L.dim(); ++x) {
      const auto& b = L.basis(x);
      int ht = basis_height(L, static_cast<int>(x));
      bool member = (b.kind == BasisKind::RootVector && ht > 0) ? i >= 0 : i >= 1;
      int num = ht + h * i;
      if (!member || num > tg.max_num_) continue;
      std::string label = b.label;
      if (i > 0) label += "*v^" + std::to_string(i);
      tg.basis_.push_back({label, num, b.weight, static_cast<int>(x), i});
    }
  }
  std::stable_sort(tg.basis_.begin(), tg.basis_.end(), [](const auto& a, const auto& b) {
    return a.degree_num != b.degree_num ? a.degree_num < b.degree_num : a.origin < b.origin;
  });
  tg.pieces_.assign(tg.max_num_ + 1, {});
  for (std::size_t k = 0; k < tg.basis_.size(); ++k) {
    const auto& b = tg.basis_[k];
    tg.index_[{b.origin, b.vpow}] = static_cast<int>(k);
    tg.pieces_[b.degree_num].push_back(static_cast<int>(k));
  }
  return tg;
}

const std::vector<int>& GradedLie::piece(int num) const {
  static const std::vector<int> empty;
  if (num < 0 || num > max_num_) return empty;
  return pieces_[num];
}

std::optional<int> GradedLie::index_of(int origin, int vpow) const {
  auto it = index_.find({origin, vpow});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FpVec GradedLie::bracket(std::size_t i, std::size_t j) const {
  if (!bracket_defined(i, j)) throw std::out_of_range("bracket lies beyond the truncation");
  const auto& a = basis_[i];
  const auto& b = basis_[j];
  FpVec out;
  for (const auto& t : L_.bracket(a.origin, b.origin)) {
    auto k = index_of(t.index, a.vpow + b.vpow);
    if (!k) throw std::logic_error("bracket term missing from truncated basis");
    Elem c = field_.from_int(t.coeff);
    if (c != 0) out.push_back({*k, c});
  }
  sort_terms(out);
  return out;
}

std::vector<Elem> GradedLie::bracket_pieces(int a, const std::vector<Elem>& x, int b,
                                            const std::vector<Elem>& y) const {
  if (a + b > max_num_) throw std::out_of_range("bracket lies beyond the truncation");
  const auto& pa = piece(a);
  const auto& pb = piece(b);
  const auto& pc = piece(a + b);
  if (x.size() != pa.size() || y.size() != pb.size()) throw std::invalid_argument("coordinate length mismatch");
  std::vector<Elem> out(pc.size(), 0);
  for (std::size_t s = 0; s < pa.size(); ++s) {
    if (x[s] == 0) continue;
    for (std::size_t t = 0; t < pb.size(); ++t) {
      if (y[t] == 0) continue;
      Elem c = field_.mul(x[s], y[t]);
      for (const auto& term : bracket(pa[s], pb[t])) {
        auto pos = std::find(pc.begin(), pc.end(), term.index) - pc.begin();
        out[pos] = field_.add(out[pos], field_.mul(c, term.coeff));
      }
    }
  }
  return out;
}

std::optional<int> GradedLie::epsilon(std::size_t i) const {
  return index_of(basis_[i].origin, basis_[i].vpow + e_);
}

std::string GradedLie::to_json() const {
  nlohmann::json j;
  j["algebra"] = L_.name();
  j["p"] = field_.p();
  j["e"] = e_;
  j["lambda"] = lambda_;
  j["degree_den"] = degree_den();
  j["truncation"] = truncation().str();
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& b : basis_)
    basis.push_back({{"label", b.label}, {"degree", Rational(b.degree_num, degree_den()).str()},
                     {"weight", b.weight.coords}});
  j["basis"] = basis;
  nlohmann::json br = nlohmann::json::array();
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t b = a + 1; b < dim(); ++b) {
      if (!bracket_defined(a, b)) continue;
      auto v = bracket(a, b);
      if (v.empty()) continue;
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& t : v) terms.push_back({t.index, t.coeff});
      br.push_back({a, b, terms});
    }
  j["brackets"] = br;
  return j.dump();
}

std::vector<std::vector<int>> coxeter_grading(const StructLie& L) {
  const int h = L.roots().coxeter_number();
  std::vector<std::vector<int>> g(h);
  for (std::size_t x = 0; x < L.dim(); ++x) {
    int ht = basis_height(L, static_cast<int>(x));
    g[((ht % h) + h) % h].push_back(static_cast<int>(x));
  }
  return g;
}

std::vector<int> coxeter_grading_iso(const GradedLie& tg, int num) {
  if (tg.e() != 1) throw std::invalid_argument("Coxeter grading comparison needs e = 1");
  std::vector<int> out;
  for (int k : tg.piece(num)) out.push_back(tg.basis(k).origin);
  auto target = coxeter_grading(tg.algebra())[num % tg.coxeter()];
  auto sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != target) throw std::logic_error("graded piece does not match Coxeter piece");
  return out;
}

CheckResult verify_coxeter_iso(const GradedLie& tg) {
  const auto& L = tg.algebra();
  const auto& F = tg.field();
  for (int num = 1; num <= tg.max_num(); ++num) {
    try {
      coxeter_grading_iso(tg, num);
    } catch (const std::logic_error& e) {
      return CheckResult::fail(e.what());
    }
  }
  for (std::size_t i = 0; i < tg.dim(); ++i) {
    for (std::size_t j = 0; j < tg.dim(); ++j) {
      if (!tg.bracket_defined(i, j)) continue;
      FpVec got;
      for (const auto& t : tg.bracket(i, j)) got.push_back({tg.basis(t.index).origin, t.coeff});
      sort_terms(got);
      FpVec expect;
      for (const auto& t : L.bracket(tg.basis(i).origin, tg.basis(j).origin)) {
        Elem c = F.from_int(t.coeff);
        if (c) expect.push_back({t.index, c});
      }
      if (got != expect)
        return CheckResult::fail("bracket of " + tg.basis(i).label + ", " + tg.basis(j).label +
                                 " differs from the Coxeter-graded bracket");
    }
    if (auto k = tg.epsilon(i); k && (tg.basis(*k).origin != tg.basis(i).origin || tg.lambda() != 1))
      return CheckResult::fail("epsilon is not the identity on " + tg.basis(i).label);
  }
  return {};
}

FiniteGradedLie build_gbar(const StructLie& L, std::uint32_t p) {
  Fq F(p);
  Triangular T = triangular(L);
  const int h = L.roots().coxeter_number();
  std::vector<GradedBasisElement> basis;
  std::vector<int> x_index(L.dim(), -1), bar_index(L.dim(), -1);
  for (int x : T.n) {
    x_index[x] = static_cast<int>(basis.size());
    basis.push_back({L.basis(x).label, basis_height(L, x), L.basis(x).weight, x, 0});
  }
  for (int x : T.b_minus) {
    bar_index[x] = static_cast<int>(basis.size());
    basis.push_back({L.basis(x).label + "bar", h + basis_height(L, x), L.basis(x).weight, x, 1});
  }
  const std::size_t n = basis.size();
  std::vector<FpVec> table(n * n);
  auto add = [&](std::size_t i, std::size_t j, const ZVec& v, const std::vector<int>& map) {
    FpVec out, neg;
    for (const auto& t : v) {
      if (map[t.index] < 0) continue;
      Elem c = F.from_int(t.coeff);
      if (c == 0) continue;
      out.push_back({map[t.index], c});
      neg.push_back({map[t.index], F.neg(c)});
    }
    table[i * n + j] = out;
    table[j * n + i] = neg;
  };
  for (int a : T.n) {
    for (int b : T.n)
      if (a < b) add(x_index[a], x_index[b], L.bracket(a, b), x_index);
    for (int b : T.b_minus) add(x_index[a], bar_index[b], L.bracket(a, b), bar_index);
  }
  return FiniteGradedLie("gbar(" + L.name() + ")", p, h, std::move(basis), std::move(table));
}

CheckResult verify_mod_epsilon_iso(const GradedLie& tg, const FiniteGradedLie& gb) {
  const int h = tg.coxeter();
  if (tg.e() != 1) return CheckResult::fail("quotient comparison needs e = 1");
  if (tg.max_num() < 2 * h) return CheckResult::fail("truncation too small to cover one full period");
  if (tg.field().p() != gb.p()) return CheckResult::fail("fields differ");

  std::vector<int> reps;
  for (int num = 1; num <= h; ++num)
    for (int k : tg.piece(num)) reps.push_back(k);
  if (reps.size() != gb.dim())
    return CheckResult::fail("dimension mismatch: " + std::to_string(reps.size()) + " vs " +
                             std::to_string(gb.dim()));
  std::vector<int> to_gb(tg.dim(), -1);
  for (int k : reps) {
    const auto& b = tg.basis(k);
    for (std::size_t g = 0; g < gb.dim(); ++g)
      if (gb.basis(g).origin == b.origin && gb.basis(g).vpow == b.vpow) to_gb[k] = static_cast<int>(g);
    if (to_gb[k] < 0) return CheckResult::fail("no counterpart for " + b.label);
    const auto& g = gb.basis(to_gb[k]);
    if (Rational(g.degree_num, gb.degree_den()) != Rational(b.degree_num, tg.degree_den()) ||
        g.weight != b.weight)
      return CheckResult::fail("degree or weight differs for " + b.label);
  }
  for (int a : reps)
    for (int b : reps) {
      FpVec got;
      for (const auto& t : tg.bracket(a, b))
        if (tg.basis(t.index).degree_num <= h) got.push_back({to_gb[t.index], t.coeff});
      sort_terms(got);
      const FpVec& expect = gb.bracket(to_gb[a], to_gb[b]);
      if (got != expect)
        return CheckResult::fail("bracket of " + tg.basis(a).label + ", " + tg.basis(b).label +
                                 ": quotient gives " + terms_str(got) + ", table gives " +
                                 terms_str(expect));
    }
  return {};
}

ShiftModel::ShiftModel(int n, Fq k) : n_(n), k_(std::move(k)) {
  if (n < 2) throw std::invalid_argument("shift model needs n >= 2");
}

std::vector<Elem> ShiftModel::bracket(int i, const std::vector<Elem>& x, int j,
                                      const std::vector<Elem>& y) const {
  std::vector<Elem> out(n_);
  for (int m = 0; m < n_; ++m) {
    Elem a = k_.mul(x[m], y[(m + i) % n_]);
    Elem b = k_.mul(y[m], x[(m + j) % n_]);
    out[m] = k_.sub(a, b);
  }
  return out;
}

Weight ShiftModel::weight(int i, int j) const {
  Weight w(static_cast<std::size_t>(n_));
  w[j] += 1;
  w[(j + i) % n_] -= 1;
  return w;
}

ShiftModel ShiftModel::base_change(const Fq& bigger) const {
  if (bigger.p() != k_.p() || bigger.degree() % k_.degree() != 0)
    throw std::invalid_argument("base change needs a field extension");
  return ShiftModel(n_, bigger);
}

ShiftModel shift_presentation(int n, std::uint32_t p, int f) {
  if (f < 1) throw std::invalid_argument("f must be positive");
  return ShiftModel(n, Fq(p, static_cast<unsigned>(f)));
}

namespace {

std::vector<Elem> shift_coords_with(const std::vector<IntMatrix>& M, const GradedLie& tg, const Fq& k,
                                    int i, std::size_t idx) {
  const int n = tg.algebra().roots().rank() + 1;
  std::vector<Elem> v(n);
  const auto& X = M[tg.basis(idx).origin];
  for (int j = 0; j < n; ++j) v[j] = k.from_int(X[j][(j + i) % n]);
  return v;
}

}  // namespace

std::vector<Elem> shift_coordinates(const GradedLie& tg_gl, int i, std::size_t basis_index) {
  auto M = matrix_realization(tg_gl.algebra());
  return shift_coords_with(M, tg_gl, tg_gl.field(), i, basis_index);
}

CheckResult verify_shift_iso(const ShiftModel& model, const GradedLie& tg) {
  const auto& L = tg.algebra();
  if (L.roots().type() != 'A' || !L.has_center() || L.roots().rank() + 1 != model.n())
    return CheckResult::fail("shift model compares against gl_n only");
  if (tg.e() != 1) return CheckResult::fail("shift model compares at e = 1");
  if (tg.field().p() != model.field().p()) return CheckResult::fail("characteristics differ");
  const int n = model.n();
  const Fq& k = model.field();
  auto M = matrix_realization(L);

  auto lam = [&](int i, std::size_t idx) { return shift_coords_with(M, tg, k, i, idx); };
  auto lam_vec = [&](int i, const FpVec& v) {
    std::vector<Elem> out(n, 0);
    for (const auto& t : v) {
      auto c = lam(i, t.index);
      for (int m = 0; m < n; ++m) out[m] = k.add(out[m], k.mul(k.from_int(t.coeff), c[m]));
    }
    return out;
  };

  for (int i = 1; i <= tg.max_num(); ++i) {
    const auto& pc = tg.piece(i);
    if (static_cast<int>(pc.size()) != n)
      return CheckResult::fail("piece " + std::to_string(i) + " has dimension " + std::to_string(pc.size()));
    Fq Fp(k.p());
    std::vector<std::vector<Elem>> rows;
    for (int idx : pc) {
      std::vector<Elem> r(n);
      const auto& X = M[tg.basis(idx).origin];
      for (int j = 0; j < n; ++j) r[j] = Fp.from_int(X[j][(j + i) % n]);
      rows.push_back(r);
    }
    if (rank_of_vectors(rows, n, Fp) != static_cast<std::size_t>(n))
      return CheckResult::fail("coordinate map is not bijective on piece " + std::to_string(i));
    for (int idx : pc) {
      auto c = lam(i, idx);
      for (int j = 0; j < n; ++j)
        if (c[j] != 0 && !tg.basis(idx).weight.is_zero() && tg.basis(idx).weight != model.weight(i, j))
          return CheckResult::fail("weight mismatch on " + tg.basis(idx).label);
      if (auto e = tg.epsilon(idx)) {
        if (lam(i + n, *e) != c) return CheckResult::fail("epsilon mismatch on " + tg.basis(idx).label);
      }
    }
  }
  for (int i = 1; i <= tg.max_num(); ++i)
    for (int j = 1; i + j <= tg.max_num(); ++j)
      for (int a : tg.piece(i))
        for (int b : tg.piece(j)) {
          auto lhs = lam_vec(i + j, tg.bracket(a, b));
          auto rhs = model.bracket(i, lam(i, a), j, lam(j, b));
          if (lhs != rhs)
            return CheckResult::fail("bracket mismatch on " + tg.basis(a).label + ", " + tg.basis(b).label);
        }
  return {};
}

}  // namespace lieval
