#include "lieval/morava.hpp"

#include <algorithm>
#include <set>

#include "lieval/chevalley.hpp"

namespace lieval {

namespace {

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Elements of k_D spanning it over F_p: the monomials 1, T, T^2, ...
std::vector<Elem> fp_basis(const Fq& F) {
  std::vector<Elem> b;
  for (unsigned i = 0; i < F.degree(); ++i) {
    std::vector<std::uint32_t> c(i + 1, 0);
    c[i] = 1;
    b.push_back(F.from_coeffs(c));
  }
  return b;
}

}  // namespace

DivisionGradedLie::DivisionGradedLie(int n, std::uint32_t p, int f, int truncation, int frobenius_shift)
    : n_(n),
      p_(p),
      f_(f),
      q_(0),
      trunc_(truncation > 0 ? truncation : 2 * n + 2),
      shift_(frobenius_shift),
      kD_(p, static_cast<unsigned>(n * f)) {
  if (n < 1 || f < 1) throw std::invalid_argument("n and f must be positive");
  q_ = upow(p, f);
  exhaustive_ = kD_.order() <= 25;
}

Elem DivisionGradedLie::frob_q(Elem x, long long k) const {
  long long m = static_cast<long long>(n_);
  long long r = ((k % m) + m) % m;
  return kD_.frobenius(x, static_cast<unsigned>(r * f_));
}

Elem DivisionGradedLie::bracket(int i, Elem x, int j, Elem y) const {
  if (i < 1 || j < 1 || i + j > trunc_) throw std::out_of_range("bracket lies beyond the truncation");
  return kD_.sub(kD_.mul(x, frob_q(y, i + shift_)), kD_.mul(y, frob_q(x, j + shift_)));
}

std::uint64_t DivisionGradedLie::character_exponent(int i) const {
  std::uint64_t order = kD_.order() - 1;
  std::uint64_t qi = 1;
  for (int k = 0; k < i; ++k) qi = qi * q_ % order;
  return (1 + order - qi) % order;
}

CheckResult DivisionGradedLie::check_antisymmetry() const {
  auto elems = exhaustive_ ? std::vector<Elem>() : fp_basis(kD_);
  if (exhaustive_)
    for (Elem x = 0; x < kD_.order(); ++x) elems.push_back(x);
  for (int i = 1; i < trunc_; ++i)
    for (int j = 1; i + j <= trunc_; ++j)
      for (Elem x : elems)
        for (Elem y : elems)
          if (bracket(i, x, j, y) != kD_.neg(bracket(j, y, i, x)))
            return CheckResult::fail("antisymmetry fails at degrees " + std::to_string(i) + ", " + std::to_string(j));
  return {};
}

CheckResult DivisionGradedLie::check_jacobi() const {
  auto elems = exhaustive_ ? std::vector<Elem>() : fp_basis(kD_);
  if (exhaustive_)
    for (Elem x = 0; x < kD_.order(); ++x) elems.push_back(x);
  for (int i = 1; i <= trunc_; ++i)
    for (int j = 1; i + j < trunc_; ++j)
      for (int k = 1; i + j + k <= trunc_; ++k)
        for (Elem x : elems)
          for (Elem y : elems)
            for (Elem z : elems) {
              Elem a = bracket(i + j, bracket(i, x, j, y), k, z);
              Elem b = bracket(j + k, bracket(j, y, k, z), i, x);
              Elem c = bracket(k + i, bracket(k, z, i, x), j, y);
              if (kD_.add(kD_.add(a, b), c) != 0)
                return CheckResult::fail("Jacobi fails at degrees " + std::to_string(i) + ", " + std::to_string(j) +
                                         ", " + std::to_string(k));
            }
  return {};
}

CheckResult DivisionGradedLie::check_epsilon() const {
  auto elems = fp_basis(kD_);
  for (int i = 1; i + n_ < trunc_; ++i)
    for (int j = 1; i + j + n_ <= trunc_; ++j)
      for (Elem x : elems)
        for (Elem y : elems)
          if (bracket(i + n_, epsilon(x), j, y) != epsilon(bracket(i, x, j, y)))
            return CheckResult::fail("epsilon does not commute with the bracket at degrees " + std::to_string(i) +
                                     ", " + std::to_string(j));
  return {};
}

BaseChangeReport verify_base_change(int n, std::uint32_t p, int f, int frobenius_shift) {
  BaseChangeReport rep;
  DivisionGradedLie D(n, p, f, n + 1, frobenius_shift);
  const Fq& K = D.field();
  const std::uint64_t q = D.q();

  // k = F_q inside k_D as the fixed field of x -> x^q
  std::vector<Elem> small;
  for (Elem x = 0; x < K.order(); ++x)
    if (D.frob_q(x, 1) == x) small.push_back(x);
  if (small.size() != q) {
    rep.ok = rep.moore_ok = false;
    rep.witness = "fixed field of x -> x^q has " + std::to_string(small.size()) + " elements";
    return rep;
  }

  // Moore matrix of 1, theta, ..., theta^{n-1}: nonzero determinant means
  // these form a k-basis, so mu is an isomorphism.
  {
    Elem theta = K.primitive();
    std::vector<std::vector<Elem>> M(n, std::vector<Elem>(n));
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m) M[m][l] = D.frob_q(K.pow(theta, l), m);
    int rank = 0;
    for (int c = 0; c < n && rank < n; ++c) {
      int piv = rank;
      while (piv < n && !M[piv][c]) ++piv;
      if (piv == n) continue;
      std::swap(M[piv], M[rank]);
      Elem inv = K.inv(M[rank][c]);
      for (int r = 0; r < n; ++r) {
        if (r == rank || !M[r][c]) continue;
        Elem fct = K.mul(M[r][c], inv);
        for (int k = 0; k < n; ++k) M[r][k] = K.sub(M[r][k], K.mul(fct, M[rank][k]));
      }
      ++rank;
    }
    rep.moore_ok = rank == n;
    if (!rep.moore_ok) {
      rep.ok = false;
      rep.witness = "Moore determinant vanishes";
      return rep;
    }
  }

  auto mu = [&](Elem x, Elem a) {
    std::vector<Elem> v(n);
    for (int m = 0; m < n; ++m) v[m] = K.mul(D.frob_q(x, m), a);
    return v;
  };

  ShiftModel model(n, K);
  rep.exhaustive = K.order() <= 625;
  std::vector<Elem> elems;
  if (rep.exhaustive)
    for (Elem x = 0; x < K.order(); ++x) elems.push_back(x);
  else
    elems = fp_basis(K);
  std::vector<Elem> scalars = {1, K.primitive()};

  // mu is balanced over k
  for (Elem c : small)
    for (Elem x : elems)
      if (mu(K.mul(c, x), 1) != mu(x, c)) {
        rep.ok = false;
        rep.witness = "mu is not k-balanced at x = " + K.str(x);
        return rep;
      }

  for (int i = 1; i <= n; ++i)
    for (int j = 1; i + j <= n + 1; ++j)
      for (Elem a : scalars)
        for (Elem b : scalars)
          for (Elem x : elems)
            for (Elem y : elems) {
              ++rep.pairs_checked;
              auto lhs = mu(D.bracket(i, x, j, y), K.mul(a, b));
              auto rhs = model.bracket(i, mu(x, a), j, mu(y, b));
              if (lhs != rhs) {
                rep.ok = false;
                rep.witness = "degrees (" + std::to_string(i) + ", " + std::to_string(j) + "), x = " + K.str(x) +
                              ", y = " + K.str(y);
                return rep;
              }
            }

  // the shift presentation itself against the truncated algebra of gl_n
  auto iso = verify_shift_iso(ShiftModel(n, Fq(p)), build_tilde_g(build_gl(n), p));
  rep.shift_model_ok = iso.ok;
  if (!iso.ok) {
    rep.ok = false;
    rep.witness = "shift presentation: " + iso.detail;
  }
  return rep;
}

CheckResult verify_character_table(int n, std::uint32_t p, int f) {
  DivisionGradedLie D(n, p, f);
  const Fq& K = D.field();
  const std::uint64_t order = K.order() - 1;
  std::vector<Elem> ts = {K.primitive(), K.pow(K.primitive(), 7 % order)};
  std::vector<Elem> xs = fp_basis(K);
  for (int i = 1; i <= n; ++i)
    for (Elem t : ts)
      for (Elem x : xs) {
        Elem acted = K.mul(K.pow(t, D.character_exponent(i)), x);
        for (int m = 0; m < n; ++m) {
          // eps_m - eps_{m+i} evaluated at the torus point (t^{q^0}, ..., t^{q^{n-1}})
          Elem weight_value = K.mul(D.frob_q(t, m), K.inv(D.frob_q(t, m + i)));
          if (D.frob_q(acted, m) != K.mul(weight_value, D.frob_q(x, m)))
            return CheckResult::fail("character mismatch on piece " + std::to_string(i) + ", coordinate " +
                                     std::to_string(m));
        }
      }
  return {};
}

Lattice twist_lattice(int n, std::uint64_t q) {
  std::vector<std::vector<long long>> M(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) {
    M[i][i] -= 1;
    M[(i + n - 1) % n][i] += static_cast<long long>(q);
  }
  return Lattice(M);
}

CohomologyTable morava_cohomology(int n, std::uint32_t p, int f) {
  if (static_cast<long long>(p) <= n + 1)
    throw HypothesisError("requires p > n + 1 = " + std::to_string(n + 1) + " (p = " + std::to_string(p) + ")");
  CohomologyTable base = gbar_cohomology(build_gl(n), p, WeightFilter::all());
  CohomologyTable out = kunneth_twist(base, f, twist_lattice(n, upow(p, f)));
  out.type = "D(n=" + std::to_string(n) + ")";
  return out;
}

Poly morava_prediction(int n, int f) {
  Poly one{1, 1};
  for (int i = 1; i < n; ++i) {
    Poly g(2 * i + 2, 0);
    g[0] = 1;
    g[2 * i + 1] = 1;
    one = poly_mul(one, g);
  }
  return poly_pow(one, f);
}

NonsplitWeightReport check_nonsplit_weight_lemma(int n, std::uint32_t p, int f) {
  if (n < 1 || f < 1) throw std::invalid_argument("n and f must be positive");
  NonsplitWeightReport rep;
  rep.hypothesis_ok = static_cast<long long>(n) < static_cast<long long>(p) - 1;

  std::set<std::vector<int>> sums{std::vector<int>(n, 0)};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      std::set<std::vector<int>> next = sums;
      for (auto v : sums) {
        ++v[a];
        --v[b];
        next.insert(v);
      }
      sums = std::move(next);
    }
  std::vector<std::vector<int>> weights(sums.begin(), sums.end());
  double total = 1;
  for (int i = 0; i < f; ++i) total *= static_cast<double>(weights.size());
  if (total > 5e7) throw std::invalid_argument("enumeration limit: too many weight tuples");

  const std::uint64_t q = upow(p, f);
  const __int128 order = static_cast<__int128>(upow(q, n)) - 1;
  Lattice lat = twist_lattice(n, q);
  std::vector<long long> pw(f, 1);
  for (int i = 1; i < f; ++i) pw[i] = pw[i - 1] * p;
  std::vector<__int128> qpow(n, 1);
  for (int j = 1; j < n; ++j) qpow[j] = qpow[j - 1] * q;

  std::vector<std::size_t> idx(f, 0);
  for (;;) {
    Weight sum(static_cast<std::size_t>(n));
    __int128 star = 0;
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < n; ++j) {
        sum[j] += static_cast<int>(pw[i] * weights[idx[i]][j]);
        star += static_cast<__int128>(weights[idx[i]][j]) * pw[i] * qpow[j];
      }
    ++rep.tuples_checked;
    bool trivial_lattice = lat.contains(sum);
    bool trivial_digits = star % order == 0;
    if (trivial_lattice != trivial_digits) rep.routes_agree = false;
    if ((trivial_lattice || trivial_digits) && !sum.is_zero()) {
      rep.holds = false;
      if (!rep.witness) {
        std::vector<Weight> w;
        for (int i = 0; i < f; ++i) w.emplace_back(weights[idx[i]]);
        rep.witness = w;
      }
    }
    int k = 0;
    while (k < f && ++idx[k] == weights.size()) idx[k++] = 0;
    if (k == f) break;
  }
  return rep;
}

}  // namespace lieval
