#include "lieval/coinvariants.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <sstream>

#include "lieval/chevalley.hpp"

namespace lieval {

namespace {

Elem mod_p(long long v, std::uint32_t p) {
  long long r = v % static_cast<long long>(p);
  return static_cast<Elem>(r < 0 ? r + p : r);
}

struct Rref {
  std::vector<std::vector<Elem>> rows;
  std::vector<std::size_t> pivots;
};

// Adds a row to a fully reduced echelon form; returns whether the rank grew.
bool rref_insert(Rref& R, std::vector<Elem> v, const Fq& F) {
  for (std::size_t i = 0; i < R.rows.size(); ++i) {
    Elem c = v[R.pivots[i]];
    if (!c) continue;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (R.rows[i][k]) v[k] = F.sub(v[k], F.mul(c, R.rows[i][k]));
  }
  std::size_t piv = 0;
  while (piv < v.size() && !v[piv]) ++piv;
  if (piv == v.size()) return false;
  Elem inv = F.inv(v[piv]);
  for (auto& x : v) x = F.mul(x, inv);
  for (auto& row : R.rows) {
    Elem c = row[piv];
    if (!c) continue;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (v[k]) row[k] = F.sub(row[k], F.mul(c, v[k]));
  }
  auto pos = std::lower_bound(R.pivots.begin(), R.pivots.end(), piv) - R.pivots.begin();
  R.pivots.insert(R.pivots.begin() + pos, piv);
  R.rows.insert(R.rows.begin() + pos, std::move(v));
  return true;
}

std::vector<Elem> to_vector(const GradedPoly& f, const std::map<Monomial, std::size_t>& index, std::size_t n) {
  std::vector<Elem> v(n, 0);
  for (const auto& [m, c] : f.terms()) {
    auto it = index.find(m);
    if (it == index.end()) throw std::logic_error("polynomial is not homogeneous of the expected degree");
    v[it->second] = c;
  }
  return v;
}

GradedPoly from_vector(const std::vector<Elem>& v, const std::vector<Monomial>& mons, std::size_t r,
                       std::uint32_t p) {
  GradedPoly f(r, p);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) f.add_term(mons[i], v[i]);
  return f;
}

std::map<Monomial, std::size_t> index_of(const std::vector<Monomial>& mons) {
  std::map<Monomial, std::size_t> idx;
  for (std::size_t i = 0; i < mons.size(); ++i) idx[mons[i]] = i;
  return idx;
}

}  // namespace

GradedPoly GradedPoly::variable(std::size_t nvars, std::uint32_t p, std::size_t i) {
  GradedPoly f(nvars, p);
  Monomial m(nvars, 0);
  m.at(i) = 1;
  f.add_term(m, 1);
  return f;
}

GradedPoly GradedPoly::constant(std::size_t nvars, std::uint32_t p, Elem c) {
  GradedPoly f(nvars, p);
  f.add_term(Monomial(nvars, 0), c % p);
  return f;
}

Elem GradedPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void GradedPoly::add_term(const Monomial& m, Elem c) {
  if (m.size() != n_) throw std::invalid_argument("monomial has the wrong number of variables");
  c %= p_;
  if (!c) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second = static_cast<Elem>((static_cast<std::uint64_t>(it->second) + c) % p_);
    if (!it->second) terms_.erase(it);
  }
}

int GradedPoly::degree(int weight) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
  return d < 0 ? -1 : weight * d;
}

bool GradedPoly::homogeneous() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int e = std::accumulate(m.begin(), m.end(), 0);
    if (d >= 0 && e != d) return false;
    d = e;
  }
  return true;
}

GradedPoly GradedPoly::operator+(const GradedPoly& o) const {
  GradedPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

GradedPoly GradedPoly::operator-(const GradedPoly& o) const { return *this + o.scaled(p_ - 1); }

GradedPoly GradedPoly::operator*(const GradedPoly& o) const {
  GradedPoly r(n_, p_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      Monomial m(n_);
      for (std::size_t i = 0; i < n_; ++i) m[i] = a[i] + b[i];
      r.add_term(m, static_cast<Elem>(static_cast<std::uint64_t>(ca) * cb % p_));
    }
  return r;
}

GradedPoly GradedPoly::scaled(Elem c) const {
  GradedPoly r(n_, p_);
  for (const auto& [m, x] : terms_) r.add_term(m, static_cast<Elem>(static_cast<std::uint64_t>(x) * c % p_));
  return r;
}

GradedPoly GradedPoly::substitute(const std::vector<std::vector<Elem>>& forms) const {
  std::vector<GradedPoly> lin;
  for (std::size_t i = 0; i < n_; ++i) {
    GradedPoly l(n_, p_);
    for (std::size_t j = 0; j < n_; ++j) {
      Monomial m(n_, 0);
      m[j] = 1;
      l.add_term(m, forms.at(i).at(j));
    }
    lin.push_back(std::move(l));
  }
  std::map<std::pair<std::size_t, int>, GradedPoly> powers;
  std::function<const GradedPoly&(std::size_t, int)> power = [&](std::size_t i, int e) -> const GradedPoly& {
    auto key = std::make_pair(i, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    GradedPoly v = e == 0 ? constant(n_, p_, 1) : power(i, e - 1) * lin[i];
    return powers.emplace(key, std::move(v)).first->second;
  };
  GradedPoly r(n_, p_);
  for (const auto& [m, c] : terms_) {
    GradedPoly t = constant(n_, p_, c);
    for (std::size_t i = 0; i < n_; ++i)
      if (m[i]) t = t * power(i, m[i]);
    r = r + t;
  }
  return r;
}

std::string GradedPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!s.empty()) s += " + ";
    std::string mon;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!it->first[i]) continue;
      if (!mon.empty()) mon += "*";
      mon += "x" + std::to_string(i + 1);
      if (it->first[i] > 1) mon += "^" + std::to_string(it->first[i]);
    }
    if (mon.empty())
      s += std::to_string(it->second);
    else
      s += (it->second == 1 ? "" : std::to_string(it->second) + "*") + mon;
  }
  return s;
}

std::vector<Monomial> monomials(std::size_t r, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  if (r == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial m(r, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == r) {
      m[i] = left;
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[i] = e;
      rec(i + 1, left - e);
    }
  };
  rec(0, d);
  return out;
}

std::vector<std::vector<std::vector<Elem>>> simple_reflection_forms(const RootSystem& rs, std::uint32_t p) {
  const std::size_t r = rs.rank();
  const auto& A = rs.cartan();
  std::vector<std::vector<std::vector<Elem>>> out;
  for (std::size_t k = 0; k < r; ++k) {
    std::vector<std::vector<Elem>> forms(r, std::vector<Elem>(r, 0));
    for (std::size_t i = 0; i < r; ++i) forms[i][i] = 1;
    // s_k(omega_k) = omega_k - alpha_k, alpha_k = sum_j A[j][k] omega_j
    for (std::size_t j = 0; j < r; ++j) forms[k][j] = mod_p((j == k) - A[j][k], p);
    out.push_back(std::move(forms));
  }
  return out;
}

std::vector<std::vector<Elem>> weyl_forms(const WeylElement& w, std::uint32_t p) {
  const std::size_t r = w.matrix.size();
  std::vector<std::vector<Elem>> forms(r, std::vector<Elem>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) forms[i][j] = mod_p(w.matrix[j][i], p);
  return forms;
}

std::vector<GradedPoly> fundamental_invariants(const RootSystem& rs, std::uint32_t p) {
  const int h = rs.coxeter_number();
  if (static_cast<int>(p) <= h)
    throw HypothesisError("fundamental invariants require p > h (h = " + std::to_string(h) + ", p = " +
                          std::to_string(p) + ")");
  const std::size_t r = rs.rank();
  Fq F(p);
  auto reflections = simple_reflection_forms(rs, p);
  std::vector<GradedPoly> gens;

  for (int d = 1; d <= h; ++d) {
    auto mons = monomials(r, d);
    if (mons.size() > 20000) throw std::invalid_argument("enumeration limit: too many monomials");
    auto idx = index_of(mons);
    const std::size_t N = mons.size();
    std::vector<Triplet> trip;
    for (std::size_t k = 0; k < reflections.size(); ++k)
      for (std::size_t j = 0; j < N; ++j) {
        GradedPoly f(r, p);
        f.add_term(mons[j], 1);
        GradedPoly image = f.substitute(reflections[k]);
        for (const auto& [m, c] : image.terms())
          trip.push_back({static_cast<std::uint32_t>(k * N + idx.at(m)), static_cast<std::uint32_t>(j), c});
        trip.push_back({static_cast<std::uint32_t>(k * N + j), static_cast<std::uint32_t>(j), p - 1});
      }
    SparseMat S = SparseMat::from_triplets(reflections.size() * N, N, std::move(trip), F);
    Rref invariants;
    for (auto& v : kernel_basis(S, F)) rref_insert(invariants, std::move(v), F);

    Rref span;
    // products of earlier generators landing in degree d
    std::function<void(std::size_t, int, GradedPoly)> products = [&](std::size_t from, int left, GradedPoly acc) {
      if (left == 0) {
        rref_insert(span, to_vector(acc, idx, N), F);
        return;
      }
      for (std::size_t g = from; g < gens.size(); ++g) {
        int dg = gens[g].degree();
        if (dg <= left) products(g, left - dg, acc * gens[g]);
      }
    };
    if (!gens.empty()) products(0, d, GradedPoly::constant(r, p, 1));
    for (const auto& v : invariants.rows)
      if (rref_insert(span, v, F)) gens.push_back(from_vector(v, mons, r, p));
  }

  std::vector<int> found, expected;
  for (const auto& g : gens) found.push_back(g.degree());
  for (int m : rs.exponents()) expected.push_back(m + 1);
  std::sort(expected.begin(), expected.end());
  if (found != expected) {
    std::ostringstream msg;
    msg << "invariant search failed for " << rs.name() << " at p = " << p << ": degrees";
    for (int x : found) msg << " " << x;
    msg << ", expected";
    for (int x : expected) msg << " " << x;
    throw std::runtime_error(msg.str());
  }
  return gens;
}

std::vector<int> exponents_from_invariants(const RootSystem& rs, std::uint32_t p) {
  std::vector<int> ex;
  for (const auto& g : fundamental_invariants(rs, p)) ex.push_back(g.degree() - 1);
  std::vector<int> heights = rs.exponents();
  std::sort(heights.begin(), heights.end());
  if (ex != heights) throw std::runtime_error("exponent mismatch between invariant degrees and heights");
  return ex;
}

KoszulComplex koszul_complex(std::size_t nvars, std::uint32_t p, std::vector<GradedPoly> delta, int max_internal) {
  KoszulComplex K;
  K.nvars = nvars;
  K.p = p;
  K.delta = std::move(delta);
  K.max_internal = max_internal;
  const std::size_t s = K.delta.size();
  if (s > 20) throw std::invalid_argument("enumeration limit: Koszul sequence longer than 20");
  std::vector<int> deg(s);
  for (std::size_t k = 0; k < s; ++k) {
    if (!K.delta[k].homogeneous() || K.delta[k].is_zero())
      throw std::invalid_argument("Koszul sequence entries must be nonzero and homogeneous");
    deg[k] = K.delta[k].degree();
  }
  Fq F(p);
  K.cells.assign(max_internal + 1, std::vector<std::vector<std::pair<Monomial, std::uint32_t>>>(s + 1));
  K.d.assign(max_internal + 1, std::vector<SparseMat>(s + 1));
  for (int D = 0; D <= max_internal; ++D) {
    for (std::uint32_t S = 0; S < (std::uint32_t{1} << s); ++S) {
      int sd = 0;
      for (std::size_t k = 0; k < s; ++k)
        if (S >> k & 1) sd += deg[k];
      for (auto& m : monomials(nvars, D - sd)) K.cells[D][std::popcount(S)].emplace_back(std::move(m), S);
    }
    for (std::size_t j = 0; j <= s; ++j) std::sort(K.cells[D][j].begin(), K.cells[D][j].end());
    for (std::size_t j = 1; j <= s; ++j) {
      const auto& src = K.cells[D][j];
      const auto& dst = K.cells[D][j - 1];
      std::vector<Triplet> trip;
      for (std::size_t col = 0; col < src.size(); ++col) {
        const auto& [m, S] = src[col];
        for (std::size_t k = 0; k < s; ++k) {
          if (!(S >> k & 1)) continue;
          bool neg = std::popcount(S & ((std::uint32_t{1} << k) - 1)) & 1;
          std::uint32_t R = S & ~(std::uint32_t{1} << k);
          for (const auto& [dm, c] : K.delta[k].terms()) {
            Monomial prod(nvars);
            for (std::size_t i = 0; i < nvars; ++i) prod[i] = m[i] + dm[i];
            auto key = std::make_pair(prod, R);
            auto it = std::lower_bound(dst.begin(), dst.end(), key);
            trip.push_back({static_cast<std::uint32_t>(it - dst.begin()), static_cast<std::uint32_t>(col),
                            neg ? F.neg(c) : c});
          }
        }
      }
      K.d[D][j] = SparseMat::from_triplets(dst.size(), src.size(), std::move(trip), F);
    }
    K.d[D][0] = SparseMat(0, K.cells[D][0].size());
  }
  return K;
}

CheckResult check_koszul_d_squared(const KoszulComplex& K) {
  Fq F(K.p);
  for (int D = 0; D <= K.max_internal; ++D)
    for (std::size_t j = 2; j < K.d[D].size(); ++j)
      if (K.d[D][j - 1].multiply(K.d[D][j], F).nnz())
        return CheckResult::fail("Koszul d^2 != 0 in internal degree " + std::to_string(D));
  return {};
}

KoszulHomology koszul_homology(const KoszulComplex& K) {
  Fq F(K.p);
  KoszulHomology H;
  const std::size_t s = K.delta.size();
  H.dims.assign(K.max_internal + 1, std::vector<long long>(s + 1, 0));
  for (int D = 0; D <= K.max_internal; ++D) {
    std::vector<long long> rk(s + 2, 0);
    for (std::size_t j = 1; j <= s; ++j) rk[j] = static_cast<long long>(rank(K.d[D][j], F));
    for (std::size_t j = 0; j <= s; ++j) {
      H.dims[D][j] = static_cast<long long>(K.cells[D][j].size()) - rk[j] - rk[j + 1];
      if (j > 0 && H.dims[D][j] && H.first_higher.first < 0) H.first_higher = {D, static_cast<int>(j)};
    }
  }
  return H;
}

QuotientAlgebra::QuotientAlgebra(std::size_t nvars, std::uint32_t p, std::vector<GradedPoly> gens)
    : n_(nvars), F_(p), gens_(std::move(gens)) {
  int limit = 1;
  for (const auto& g : gens_) {
    if (!g.homogeneous() || g.is_zero() || g.degree() < 1)
      throw std::invalid_argument("ideal generators must be nonzero homogeneous of positive degree");
    limit += g.degree() - 1;
  }
  for (int d = 0; d <= limit; ++d) {
    Level L;
    L.monomials = monomials(n_, d);
    if (L.monomials.size() > 20000) throw std::invalid_argument("enumeration limit: too many monomials");
    L.index = index_of(L.monomials);
    Rref R;
    for (const auto& g : gens_)
      for (const auto& m : monomials(n_, d - g.degree())) {
        GradedPoly mono(n_, p);
        mono.add_term(m, 1);
        rref_insert(R, to_vector(mono * g, L.index, L.monomials.size()), F_);
      }
    L.rref = std::move(R.rows);
    L.pivots = std::move(R.pivots);
    for (std::size_t c = 0, k = 0; c < L.monomials.size(); ++c) {
      if (k < L.pivots.size() && L.pivots[k] == c) {
        ++k;
        continue;
      }
      L.basis.push_back(L.monomials[c]);
      L.basis_cols.push_back(c);
    }
    levels_.push_back(std::move(L));
  }
  if (!levels_.back().basis.empty()) throw std::invalid_argument("quotient is not finite-dimensional");
  while (levels_.size() > 1 && levels_.back().basis.empty()) levels_.pop_back();
}

std::size_t QuotientAlgebra::dim(int d) const {
  if (d < 0 || d > top_degree()) return 0;
  return levels_[d].basis.size();
}

std::size_t QuotientAlgebra::total_dim() const {
  std::size_t t = 0;
  for (const auto& L : levels_) t += L.basis.size();
  return t;
}

Poly QuotientAlgebra::poincare() const {
  Poly r;
  for (const auto& L : levels_) r.push_back(static_cast<long long>(L.basis.size()));
  return poly_trim(r);
}

std::vector<Elem> QuotientAlgebra::normal_form(const GradedPoly& f, int d) const {
  if (d < 0 || d > top_degree()) {
    if (!f.is_zero() && f.degree() != d) throw std::invalid_argument("polynomial has the wrong degree");
    return {};
  }
  const Level& L = levels_[d];
  std::vector<Elem> v = to_vector(f, L.index, L.monomials.size());
  for (std::size_t i = 0; i < L.rref.size(); ++i) {
    Elem c = v[L.pivots[i]];
    if (!c) continue;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (L.rref[i][k]) v[k] = F_.sub(v[k], F_.mul(c, L.rref[i][k]));
  }
  std::vector<Elem> out;
  for (auto c : L.basis_cols) out.push_back(v[c]);
  return out;
}

CoinvariantAlgebra coinvariant_algebra(const RootSystem& rs, std::uint32_t p) {
  auto inv = fundamental_invariants(rs, p);
  QuotientAlgebra Q(rs.rank(), p, inv);
  int top = 0;
  for (const auto& g : inv) top += g.degree();
  KoszulHomology H = koszul_homology(koszul_complex(rs.rank(), p, inv, top));
  if (!H.concentrated())
    throw std::runtime_error("regularity failure: Koszul homology in internal degree " +
                             std::to_string(H.first_higher.first) + ", exterior degree " +
                             std::to_string(H.first_higher.second));
  return {std::move(inv), std::move(Q), std::move(H)};
}

CohomologyTable e1_dga_homology(const RootSystem& rs, std::uint32_t p) {
  CoinvariantAlgebra A = coinvariant_algebra(rs, p);
  const QuotientAlgebra& Q = A.quotient;
  const Fq& F = Q.field();
  const std::size_t r = rs.rank();
  const int top = 2 * Q.top_degree() + static_cast<int>(r);

  struct Cell {
    int e;
    std::size_t b;
    std::uint32_t S;
    auto operator<=>(const Cell&) const = default;
  };
  std::vector<std::vector<Cell>> cells(top + 1);
  for (int e = 0; e <= Q.top_degree(); ++e)
    for (std::size_t b = 0; b < Q.dim(e); ++b)
      for (std::uint32_t S = 0; S < (std::uint32_t{1} << r); ++S) cells[2 * e + std::popcount(S)].push_back({e, b, S});

  std::vector<long long> rk(top + 2, 0);
  for (int t = 0; t < top; ++t) {
    const auto& dst = cells[t + 1];
    std::vector<Triplet> trip;
    for (std::size_t col = 0; col < cells[t].size(); ++col) {
      const Cell& c = cells[t][col];
      for (std::size_t k = 0; k < r; ++k) {
        if (!(c.S >> k & 1)) continue;
        bool neg = std::popcount(c.S & ((std::uint32_t{1} << k) - 1)) & 1;
        GradedPoly prod(r, p);
        Monomial m = Q.basis(c.e)[c.b];
        ++m[k];
        prod.add_term(m, 1);
        auto nf = Q.normal_form(prod, c.e + 1);
        std::uint32_t R = c.S & ~(std::uint32_t{1} << k);
        for (std::size_t b = 0; b < nf.size(); ++b) {
          if (!nf[b]) continue;
          auto it = std::lower_bound(dst.begin(), dst.end(), Cell{c.e + 1, b, R});
          trip.push_back({static_cast<std::uint32_t>(it - dst.begin()), static_cast<std::uint32_t>(col),
                          neg ? F.neg(nf[b]) : nf[b]});
        }
      }
    }
    rk[t] = static_cast<long long>(rank(SparseMat::from_triplets(dst.size(), cells[t].size(), std::move(trip), F), F));
  }
  CohomologyTable T;
  T.type = rs.name();
  T.p = p;
  T.filter = "zero";
  for (int t = 0; t <= top; ++t) {
    long long d = static_cast<long long>(cells[t].size()) - rk[t] - (t > 0 ? rk[t - 1] : 0);
    if (d) T.dims[{t, Weight(r)}] = d;
  }
  return T;
}

CrossValidation cross_validate(const RootSystem& rs, std::uint32_t p) {
  CrossValidation cv;
  cv.hypothesis_ok = static_cast<int>(p) > rs.coxeter_number() + 1;
  cv.ce = gbar_cohomology(build_chevalley(rs), p, WeightFilter::zero());
  cv.ce.type = rs.name();
  try {
    cv.e1 = e1_dga_homology(rs, p);
  } catch (const std::exception& e) {
    cv.detail = std::string("dga route unavailable: ") + e.what();
    return cv;
  }
  cv.agree = cv.ce.dims == cv.e1.dims;
  if (!cv.agree)
    cv.detail = "Chevalley-Eilenberg " + poly_str(cv.ce.poincare()) + " vs dga " + poly_str(cv.e1.poincare());
  return cv;
}

}  // namespace lieval
