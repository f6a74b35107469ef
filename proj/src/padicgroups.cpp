#include "lieval/padicgroups.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <json.hpp>
#include <sstream>

namespace lieval {

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (std::uint64_t{1} << 62) / b) throw std::invalid_argument("p^N does not fit in 62 bits");
    r *= b;
  }
  return r;
}

}  // namespace

std::string PadicMatrix::str() const {
  std::string s = "[";
  for (int i = 0; i < n; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < n; ++j) s += (j ? "," : "") + std::to_string(at(i, j));
    s += "]";
  }
  return s + "]";
}

SLn::SLn(int n, std::uint32_t p, int N)
    : n_(n),
      p_(p),
      N_(N),
      mod_(0),
      L_(build_chevalley(RootSystem::parse("A" + std::to_string(n - 1)))),
      tg_(build_tilde_g(L_, p, 1, 1, Rational(N))) {
  if (n < 2) throw std::invalid_argument("SL_n needs n >= 2");
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (N < 2) throw std::invalid_argument("precision N must be at least 2");
  mod_ = ipow(p, N);
  auto mats = matrix_realization(L_);
  const auto& rs = L_.roots();
  for (std::size_t r = 0; r < rs.num_roots(); ++r) {
    const auto& M = mats[L_.root_basis(static_cast<int>(r))];
    bool found = false;
    for (int a = 0; a < n && !found; ++a)
      for (int b = 0; b < n && !found; ++b)
        if (M[a][b] != 0) {
          pos_.push_back({a, b});
          sign_.push_back(M[a][b] > 0 ? 1 : -1);
          found = true;
        }
  }
}

std::optional<int> SLn::root_at(int a, int b) const {
  for (std::size_t r = 0; r < pos_.size(); ++r)
    if (pos_[r] == std::make_pair(a, b)) return static_cast<int>(r);
  return std::nullopt;
}

std::uint64_t SLn::reduce(long long v) const {
  long long m = static_cast<long long>(mod_);
  long long r = v % m;
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

std::uint64_t SLn::mulmod(std::uint64_t a, std::uint64_t b) const {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % mod_);
}

std::uint64_t SLn::inv_unit(std::uint64_t a) const {
  if (a % p_ == 0) throw std::invalid_argument("not a unit");
  __int128 t = 0, nt = 1, r = mod_, nr = a % mod_;
  while (nr != 0) {
    __int128 q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (t < 0) t += mod_;
  return static_cast<std::uint64_t>(t);
}

std::optional<int> SLn::valuation(std::uint64_t v) const {
  v %= mod_;
  if (v == 0) return std::nullopt;
  int k = 0;
  while (v % p_ == 0) {
    v /= p_;
    ++k;
  }
  return k;
}

PadicMatrix SLn::identity() const {
  PadicMatrix I{n_, mod_, std::vector<std::uint64_t>(static_cast<std::size_t>(n_) * n_, 0)};
  for (int i = 0; i < n_; ++i) I.at(i, i) = 1;
  return I;
}

PadicMatrix SLn::from_ints(const std::vector<std::vector<long long>>& rows) const {
  PadicMatrix M = identity();
  if (rows.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("matrix size mismatch");
  for (int i = 0; i < n_; ++i) {
    if (rows[i].size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("matrix size mismatch");
    for (int j = 0; j < n_; ++j) M.at(i, j) = reduce(rows[i][j]);
  }
  return M;
}

PadicMatrix SLn::root_element(int root, int i, long long c) const {
  const auto& rt = L_.roots().root(root);
  if (i < (rt.positive() ? 0 : 1))
    throw std::invalid_argument("root element u_alpha(c p^" + std::to_string(i) +
                                ") is not in the pro-p Iwahori subgroup");
  PadicMatrix M = identity();
  auto [a, b] = pos_.at(root);
  M.at(a, b) = mulmod(reduce(c * sign_[root]), ipow(p_, std::min(i, N_)) % mod_);
  return M;
}

PadicMatrix SLn::coroot_element(int k, long long s) const {
  if (k < 0 || k >= n_ - 1) throw std::out_of_range("coroot index out of range");
  std::uint64_t u = reduce(s);
  PadicMatrix M = identity();
  M.at(k, k) = u;
  M.at(k + 1, k + 1) = inv_unit(u);
  return M;
}

PadicMatrix SLn::mul(const PadicMatrix& x, const PadicMatrix& y) const {
  PadicMatrix r{n_, mod_, std::vector<std::uint64_t>(x.a.size(), 0)};
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      std::uint64_t xik = x.at(i, k);
      if (!xik) continue;
      for (int j = 0; j < n_; ++j) {
        std::uint64_t s = r.at(i, j) + mulmod(xik, y.at(k, j));
        r.at(i, j) = s >= mod_ ? s - mod_ : s;
      }
    }
  return r;
}

PadicMatrix SLn::inverse(const PadicMatrix& x) const {
  PadicMatrix A = x, R = identity();
  for (int c = 0; c < n_; ++c) {
    int piv = c;
    while (piv < n_ && A.at(piv, c) % p_ == 0) ++piv;
    if (piv == n_) throw std::invalid_argument("matrix is not invertible over Z_p");
    for (int j = 0; j < n_; ++j) {
      std::swap(A.at(piv, j), A.at(c, j));
      std::swap(R.at(piv, j), R.at(c, j));
    }
    std::uint64_t inv = inv_unit(A.at(c, c));
    for (int j = 0; j < n_; ++j) {
      A.at(c, j) = mulmod(A.at(c, j), inv);
      R.at(c, j) = mulmod(R.at(c, j), inv);
    }
    for (int i = 0; i < n_; ++i) {
      if (i == c || A.at(i, c) == 0) continue;
      std::uint64_t f = A.at(i, c);
      for (int j = 0; j < n_; ++j) {
        A.at(i, j) = (A.at(i, j) + mod_ - mulmod(f, A.at(c, j))) % mod_;
        R.at(i, j) = (R.at(i, j) + mod_ - mulmod(f, R.at(c, j))) % mod_;
      }
    }
  }
  return R;
}

PadicMatrix SLn::power(const PadicMatrix& x, std::uint64_t e) const {
  PadicMatrix r = identity(), b = x;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

PadicMatrix SLn::commutator(const PadicMatrix& x, const PadicMatrix& y) const {
  return mul(mul(x, y), mul(inverse(x), inverse(y)));
}

std::uint64_t SLn::det(const PadicMatrix& x) const {
  // Expansion by permutations; n is small.
  std::vector<int> perm(n_);
  for (int i = 0; i < n_; ++i) perm[i] = i;
  std::uint64_t total = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) inversions += perm[i] > perm[j];
    std::uint64_t t = 1;
    for (int i = 0; i < n_; ++i) t = mulmod(t, x.at(i, perm[i]));
    total = (total + (inversions % 2 ? mod_ - t : t)) % mod_;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

bool SLn::in_I1(const PadicMatrix& x) const {
  for (int i = 0; i < n_; ++i) {
    if (x.at(i, i) % p_ != 1 % p_) return false;
    for (int j = 0; j < i; ++j)
      if (x.at(i, j) % p_ != 0) return false;
  }
  return true;
}

IwahoriFactors SLn::iwahori_factor(const PadicMatrix& g) const {
  if (!in_I1(g)) throw std::invalid_argument("matrix is not in the pro-p Iwahori subgroup");
  PadicMatrix A = g;
  std::vector<std::vector<std::uint64_t>> Lm(n_, std::vector<std::uint64_t>(n_, 0)), Um = Lm;
  std::vector<std::uint64_t> D(n_);
  for (int k = 0; k < n_; ++k) {
    D[k] = A.at(k, k);
    std::uint64_t inv = inv_unit(D[k]);
    for (int i = k + 1; i < n_; ++i) Lm[i][k] = mulmod(A.at(i, k), inv);
    for (int j = k + 1; j < n_; ++j) Um[k][j] = mulmod(A.at(k, j), inv);
    for (int i = k + 1; i < n_; ++i)
      for (int j = k + 1; j < n_; ++j)
        A.at(i, j) = (A.at(i, j) + mod_ - mulmod(Lm[i][k], A.at(k, j))) % mod_;
  }
  IwahoriFactors f;
  for (int j = 0; j < n_; ++j)
    for (int i = j + 1; i < n_; ++i) {
      int r = *root_at(i, j);
      f.lower.push_back({r, sign_[r] > 0 ? Lm[i][j] : reduce(-static_cast<long long>(Lm[i][j]))});
    }
  std::uint64_t w = 1;
  for (int k = 0; k + 1 < n_; ++k) {
    w = mulmod(w, D[k]);
    f.torus.push_back(w);
  }
  for (int i = n_ - 1; i >= 0; --i)
    for (int j = i + 1; j < n_; ++j) {
      int r = *root_at(i, j);
      f.upper.push_back({r, sign_[r] > 0 ? Um[i][j] : reduce(-static_cast<long long>(Um[i][j]))});
    }
  return f;
}

PadicMatrix SLn::multiply_back(const IwahoriFactors& f) const {
  auto u = [&](const RootFactor& rf) {
    PadicMatrix M = identity();
    auto [a, b] = pos_.at(rf.root);
    M.at(a, b) = sign_[rf.root] > 0 ? rf.param % mod_ : reduce(-static_cast<long long>(rf.param % mod_));
    return M;
  };
  PadicMatrix g = identity();
  for (const auto& rf : f.lower) g = mul(g, u(rf));
  for (std::size_t k = 0; k < f.torus.size(); ++k) g = mul(g, coroot_element(static_cast<int>(k), f.torus[k]));
  for (const auto& rf : f.upper) g = mul(g, u(rf));
  return g;
}

namespace {

struct Candidate {
  Rational omega;
  int origin;  // basis index in the StructLie
  int vpow;
  Elem lead;
};

}  // namespace

static std::vector<Candidate> omega_candidates(const SLn& G, const IwahoriFactors& f) {
  std::vector<Candidate> out;
  const auto& rs = G.lie().roots();
  const std::uint32_t p = G.p();
  auto leading = [&](std::uint64_t v, int k) {
    for (int i = 0; i < k; ++i) v /= p;
    return static_cast<Elem>(v % p);
  };
  auto add_root = [&](const RootFactor& rf) {
    auto v = G.valuation(rf.param);
    if (!v) return;
    out.push_back({Rational(rs.root(rf.root).height, G.n()) + Rational(*v), G.lie().root_basis(rf.root), *v,
                   leading(rf.param, *v)});
  };
  for (const auto& rf : f.lower) add_root(rf);
  for (const auto& rf : f.upper) add_root(rf);
  for (std::size_t k = 0; k < f.torus.size(); ++k) {
    std::uint64_t t = (f.torus[k] + G.modulus() - 1) % G.modulus();
    auto v = G.valuation(t);
    if (!v) continue;
    out.push_back({Rational(*v), G.lie().coroot_basis(static_cast<int>(k)), *v, leading(t, *v)});
  }
  return out;
}

OmegaValue SLn::omega(const PadicMatrix& g) const {
  auto cands = omega_candidates(*this, iwahori_factor(g));
  if (cands.empty()) return {};
  Rational m = cands[0].omega;
  for (const auto& c : cands) m = std::min(m, c.omega);
  if (m > Rational(N_ - 1))
    throw PrecisionError("precision exhausted: omega exceeds N - 1 = " + std::to_string(N_ - 1));
  return {m};
}

OmegaValue SLn::omega_entrywise(const PadicMatrix& g) const {
  if (!in_I1(g)) throw std::invalid_argument("matrix is not in the pro-p Iwahori subgroup");
  std::optional<Rational> m;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      std::uint64_t e = a == b ? (g.at(a, b) + mod_ - 1) % mod_ : g.at(a, b);
      auto v = valuation(e);
      if (!v) continue;
      Rational w = Rational(*v) + Rational(b - a, n_);
      if (!m || w < *m) m = w;
    }
  if (m && *m > Rational(N_ - 1))
    throw PrecisionError("precision exhausted: omega exceeds N - 1 = " + std::to_string(N_ - 1));
  return {m};
}

SymbolVector SLn::symbol(const PadicMatrix& g) const {
  auto cands = omega_candidates(*this, iwahori_factor(g));
  OmegaValue om = omega(g);
  if (om.infinite()) throw std::invalid_argument("the identity has no principal symbol");
  SymbolVector s;
  s.degree = *om.value;
  s.num = static_cast<int>((s.degree * Rational(n_)).num());
  const auto& piece = tg_.piece(s.num);
  s.coords.assign(piece.size(), 0);
  for (const auto& c : cands) {
    if (c.omega != s.degree) continue;
    auto k = tg_.index_of(c.origin, c.vpow);
    if (!k) throw PrecisionError("symbol lies beyond the graded truncation");
    auto pos = std::find(piece.begin(), piece.end(), *k) - piece.begin();
    s.coords[pos] = tg_.field().add(s.coords[pos], c.lead);
  }
  return s;
}

SymbolVector SLn::bracket(const SymbolVector& x, const SymbolVector& y) const {
  SymbolVector s;
  s.num = x.num + y.num;
  s.degree = Rational(s.num, n_);
  s.coords = tg_.bracket_pieces(x.num, x.coords, y.num, y.coords);
  return s;
}

SymbolVector SLn::epsilon(const SymbolVector& x) const {
  SymbolVector s;
  s.num = x.num + n_;
  s.degree = Rational(s.num, n_);
  const auto& from = tg_.piece(x.num);
  const auto& to = tg_.piece(s.num);
  if (to.empty() && !from.empty()) throw PrecisionError("epsilon lies beyond the graded truncation");
  s.coords.assign(to.size(), 0);
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (!x.coords[i]) continue;
    auto k = tg_.epsilon(from[i]);
    if (!k) throw PrecisionError("epsilon lies beyond the graded truncation");
    auto pos = std::find(to.begin(), to.end(), *k) - to.begin();
    s.coords[pos] = tg_.field().mul(x.coords[i], tg_.lambda());
  }
  return s;
}

std::string SLn::symbol_str(const SymbolVector& s) const {
  std::string out;
  const auto& piece = tg_.piece(s.num);
  for (std::size_t i = 0; i < s.coords.size(); ++i) {
    if (!s.coords[i]) continue;
    if (!out.empty()) out += " + ";
    if (s.coords[i] != 1) out += std::to_string(s.coords[i]) + "*";
    out += tg_.basis(piece[i]).label;
  }
  return (out.empty() ? "0" : out) + " @ " + s.degree.str();
}

std::string MPReport::to_json() const {
  nlohmann::ordered_json j;
  j["op"] = op;
  j["params"] = {{"n", n}, {"p", p}, {"N", N}};
  j["trials"] = trials;
  nlohmann::ordered_json f = nlohmann::ordered_json::array();
  for (const auto& x : failures) f.push_back({{"inputs", x.inputs}, {"expected", x.expected}, {"got", x.got}});
  j["failures"] = f;
  j["precision_flags"] = precision_flags;
  j["seed"] = seed;
  return j.dump();
}

PadicMatrix random_iwahori_element(const SLn& G, std::mt19937_64& rng) {
  const int nroots = static_cast<int>(G.lie().roots().num_roots());
  const long long p = G.p();
  std::uniform_int_distribution<int> count(1, 4), kind(0, nroots + G.n() - 2), step(0, 1);
  std::uniform_int_distribution<long long> unit(1, p - 1), digit(0, p - 1);
  PadicMatrix g = G.identity();
  int k = count(rng);
  for (int t = 0; t < k; ++t) {
    int x = kind(rng);
    long long c = unit(rng) + p * digit(rng);
    if (x < nroots) {
      int i = step(rng) + (G.lie().roots().root(x).positive() ? 0 : 1);
      g = G.mul(g, G.root_element(x, i, c));
    } else {
      int j = step(rng) + 1;
      long long s = 1 + c * (j == 1 ? p : p * p);
      g = G.mul(g, G.coroot_element(x - nroots, s));
    }
  }
  return g;
}

namespace {

void require_hypothesis(int n, std::uint32_t p) {
  if (static_cast<long long>(p) <= n + 1)
    throw HypothesisError("requires p > h + 1 = " + std::to_string(n + 1) + " for SL_" + std::to_string(n) +
                          " (p = " + std::to_string(p) + ")");
}

// Root and coroot generators with small, distinct omega.
std::vector<std::pair<std::string, PadicMatrix>> generators(const SLn& G) {
  std::vector<std::pair<std::string, PadicMatrix>> out;
  const auto& rs = G.lie().roots();
  const long long p = G.p();
  for (std::size_t r = 0; r < rs.num_roots(); ++r) {
    int lo = rs.root(r).positive() ? 0 : 1;
    for (int i = lo; i <= lo + 1; ++i)
      for (long long c : {1LL, 2LL})
        out.push_back({"u" + G.lie().basis(r).label + "(" + std::to_string(c) + "p^" + std::to_string(i) + ")",
                       G.root_element(static_cast<int>(r), i, c)});
  }
  for (int k = 0; k + 1 < G.n(); ++k)
    for (int j = 1; j <= 2; ++j)
      for (long long c : {1LL, 2LL}) {
        long long s = 1 + c * (j == 1 ? p : p * p);
        out.push_back({"H" + std::to_string(k + 1) + "(" + std::to_string(s) + ")", G.coroot_element(k, s)});
      }
  return out;
}

void check_commutator(const SLn& G, const PadicMatrix& x, const PadicMatrix& y, const std::string& desc,
                      MPReport& rep) {
  ++rep.trials;
  try {
    SymbolVector sx = G.symbol(x), sy = G.symbol(y);
    SymbolVector expected = G.bracket(sx, sy);
    PadicMatrix c = G.commutator(x, y);
    OmegaValue oc = G.omega(c);
    bool nonzero = std::any_of(expected.coords.begin(), expected.coords.end(), [](Elem e) { return e != 0; });
    if (nonzero) {
      if (oc.infinite() || *oc.value != expected.degree) {
        rep.failures.push_back({desc, "omega " + expected.degree.str(), "omega " + oc.str()});
        return;
      }
      SymbolVector got = G.symbol(c);
      if (got != expected) rep.failures.push_back({desc, G.symbol_str(expected), G.symbol_str(got)});
    } else if (!oc.infinite() && *oc.value <= expected.degree) {
      rep.failures.push_back({desc, "omega > " + expected.degree.str(), "omega " + oc.str()});
    }
  } catch (const PrecisionError&) {
    ++rep.precision_flags;
  }
}

MPReport start(const std::string& op, int n, std::uint32_t p, int N, std::uint64_t seed) {
  MPReport rep;
  rep.op = op;
  rep.n = n;
  rep.p = p;
  rep.N = N;
  rep.seed = seed;
  return rep;
}

}  // namespace

MPReport verify_sl2_commutator(std::uint32_t p, int N) {
  auto t0 = std::chrono::steady_clock::now();
  MPReport rep = start("sl2-commutator", 2, p, N, 0);
  SLn G(2, p, N);
  int pos = *G.root_at(0, 1), neg = *G.root_at(1, 0);
  const long long P = p;
  for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 1}, {1, 1}, {0, 2}, {1, 2}}) {
    ++rep.trials;
    long long a = 1, b = 1;
    for (int k = 0; k < i; ++k) a *= P;
    for (int k = 0; k < j; ++k) b *= P;
    PadicMatrix x = G.root_element(pos, i, 1), y = G.root_element(neg, j, 1);
    // root_element applies the realization sign; undo it to get the matrix parameters
    long long sa = G.root_sign(pos), sb = G.root_sign(neg);
    long long A = sa * a, B = sb * b;
    PadicMatrix expected = G.from_ints({{1 + A * B + A * A * B * B, -A * A * B}, {A * B * B, 1 - A * B}});
    PadicMatrix got = G.commutator(x, y);
    std::string desc = "(u_alpha(p^" + std::to_string(i) + "), u_-alpha(p^" + std::to_string(j) + "))";
    if (got != expected) {
      rep.failures.push_back({desc, expected.str(), got.str()});
      continue;
    }
    SymbolVector s = G.symbol(got);
    SymbolVector want = G.bracket(G.symbol(x), G.symbol(y));
    if (s != want) rep.failures.push_back({desc + " symbol", G.symbol_str(want), G.symbol_str(s)});
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

MPReport verify_omega_values(int n, std::uint32_t p, int N) {
  require_hypothesis(n, p);
  auto t0 = std::chrono::steady_clock::now();
  MPReport rep = start("omega-values", n, p, N, 0);
  SLn G(n, p, N);
  const auto& rs = G.lie().roots();
  auto check = [&](const PadicMatrix& g, const Rational& want, const std::string& desc) {
    ++rep.trials;
    try {
      OmegaValue o = G.omega(g), e = G.omega_entrywise(g);
      if (o.infinite() || *o.value != want) rep.failures.push_back({desc, want.str(), o.str()});
      else if (e != o) rep.failures.push_back({desc + " entrywise", o.str(), e.str()});
    } catch (const PrecisionError&) {
      ++rep.precision_flags;
    }
  };
  for (std::size_t r = 0; r < rs.num_roots(); ++r) {
    int ht = rs.root(r).height;
    int lo = ht > 0 ? 0 : 1;
    for (int i = lo; i <= lo + 2; ++i)
      for (long long c = 1; c < static_cast<long long>(p); ++c)
        check(G.root_element(static_cast<int>(r), i, c), Rational(ht, n) + Rational(i),
              "u" + G.lie().basis(r).label + "(" + std::to_string(c) + "p^" + std::to_string(i) + ")");
  }
  long long pj = 1;
  for (int j = 1; j <= 3; ++j) {
    pj *= p;
    for (int k = 0; k + 1 < n; ++k)
      for (long long c = 1; c < static_cast<long long>(p); ++c)
        check(G.coroot_element(k, 1 + c * pj), Rational(j),
              "H" + std::to_string(k + 1) + "(1 + " + std::to_string(c) + "p^" + std::to_string(j) + ")");
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

MPReport verify_symbol_bracket(int n, std::uint32_t p, int N, long long trials, std::uint64_t seed) {
  require_hypothesis(n, p);
  if (N < 2 * n + 4) throw HypothesisError("requires N >= 2h + 4 = " + std::to_string(2 * n + 4));
  auto t0 = std::chrono::steady_clock::now();
  MPReport rep = start("symbol-bracket", n, p, N, seed);
  SLn G(n, p, N);
  auto gens = generators(G);
  for (const auto& [dx, x] : gens)
    for (const auto& [dy, y] : gens) check_commutator(G, x, y, "(" + dx + ", " + dy + ")", rep);
  std::mt19937_64 rng(seed);
  for (long long t = 0; t < trials; ++t) {
    PadicMatrix x = random_iwahori_element(G, rng), y = random_iwahori_element(G, rng);
    if (x == G.identity() || y == G.identity()) continue;
    check_commutator(G, x, y, "x = " + x.str() + ", y = " + y.str(), rep);
  }
  if (n == 2) {
    MPReport sl2 = verify_sl2_commutator(p, N);
    rep.trials += sl2.trials;
    rep.failures.insert(rep.failures.end(), sl2.failures.begin(), sl2.failures.end());
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

MPReport verify_epsilon(int n, std::uint32_t p, int N, long long trials, std::uint64_t seed) {
  require_hypothesis(n, p);
  auto t0 = std::chrono::steady_clock::now();
  MPReport rep = start("epsilon", n, p, N, seed);
  SLn G(n, p, N);
  auto check = [&](const PadicMatrix& g, const std::string& desc) {
    ++rep.trials;
    try {
      SymbolVector s = G.symbol(g);
      PadicMatrix gp = G.power(g, p);
      OmegaValue o = G.omega(gp);
      Rational want = s.degree + Rational(1);
      if (o.infinite() || *o.value != want) {
        rep.failures.push_back({desc, "omega " + want.str(), "omega " + o.str()});
        return;
      }
      SymbolVector expected = G.epsilon(s), got = G.symbol(gp);
      if (got != expected) rep.failures.push_back({desc, G.symbol_str(expected), G.symbol_str(got)});
    } catch (const PrecisionError&) {
      ++rep.precision_flags;
    }
  };
  for (const auto& [d, g] : generators(G)) check(g, d);
  std::mt19937_64 rng(seed);
  for (long long t = 0; t < trials; ++t) {
    PadicMatrix g = random_iwahori_element(G, rng);
    if (g == G.identity()) continue;
    check(g, g.str());
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

MPReport verify_pvaluation_axioms(int n, std::uint32_t p, int N, long long trials, std::uint64_t seed) {
  require_hypothesis(n, p);
  auto t0 = std::chrono::steady_clock::now();
  MPReport rep = start("p-valuation", n, p, N, seed);
  SLn G(n, p, N);
  const Rational floor_bound(1, static_cast<std::int64_t>(p) - 1);

  {
    // equality case of the commutator axiom
    ++rep.trials;
    PadicMatrix x = G.root_element(*G.root_at(0, 1), 0, 1), y = G.root_element(*G.root_at(1, 0), 1, 1);
    OmegaValue oc = G.omega(G.commutator(x, y));
    Rational sum = *G.omega(x).value + *G.omega(y).value;
    if (oc.infinite() || *oc.value != sum)
      rep.failures.push_back({"opposite-root pair", "omega " + sum.str(), "omega " + oc.str()});
  }

  std::mt19937_64 rng(seed);
  for (long long t = 0; t < trials; ++t) {
    PadicMatrix x = random_iwahori_element(G, rng), y = random_iwahori_element(G, rng);
    if (x == G.identity() || y == G.identity()) continue;
    ++rep.trials;
    std::string desc = "x = " + x.str() + ", y = " + y.str();
    try {
      OmegaValue ox = G.omega(x), oy = G.omega(y);
      Rational mn = std::min(*ox.value, *oy.value), sum = *ox.value + *oy.value;
      OmegaValue q = G.omega(G.mul(x, G.inverse(y)));
      if (!q.infinite() && *q.value < mn) rep.failures.push_back({desc + " [x y^-1]", ">= " + mn.str(), q.str()});
      OmegaValue c = G.omega(G.commutator(x, y));
      if (!c.infinite() && *c.value < sum)
        rep.failures.push_back({desc + " [commutator]", ">= " + sum.str(), c.str()});
      OmegaValue xp = G.omega(G.power(x, p));
      Rational want = *ox.value + Rational(1);
      if (xp.infinite() || *xp.value != want) rep.failures.push_back({desc + " [x^p]", want.str(), xp.str()});
      if (!(*ox.value > floor_bound))
        rep.failures.push_back({desc + " [lower bound]", "> " + floor_bound.str(), ox.str()});
    } catch (const PrecisionError&) {
      ++rep.precision_flags;
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace lieval
