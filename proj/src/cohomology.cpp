#include "lieval/cohomology.hpp"

#include <algorithm>
#include <bit>
#include <json.hpp>
#include <sstream>

#include "lieval/parallel.hpp"

namespace lieval {

Poly poly_trim(Poly a) {
  while (a.size() > 1 && a.back() == 0) a.pop_back();
  if (a.empty()) a.push_back(0);
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {0};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return poly_trim(r);
}

Poly poly_pow(const Poly& a, int k) {
  Poly r{1};
  for (int i = 0; i < k; ++i) r = poly_mul(r, a);
  return r;
}

Poly exterior_poincare(const std::vector<int>& exponents) {
  Poly r{1};
  for (int m : exponents) {
    Poly f(2 * m + 2, 0);
    f[0] = 1;
    f[2 * m + 1] = 1;
    r = poly_mul(r, f);
  }
  return r;
}

std::string poly_str(const Poly& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (i == 0 || a[i] != 1) s += std::to_string(a[i]);
    if (i >= 1) s += "t";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

namespace {

int parity_below(std::uint64_t mask, int bit) {
  return std::popcount(mask & ((std::uint64_t{1} << bit) - 1)) & 1;
}

void add_term(FpVec& v, int index, Elem c, const Fq& F) {
  for (auto& t : v)
    if (t.index == index) {
      t.coeff = F.add(t.coeff, c);
      return;
    }
  v.push_back({index, c});
}

FpVec normalize(FpVec v) {
  std::sort(v.begin(), v.end(), [](const FpTerm& a, const FpTerm& b) { return a.index < b.index; });
  FpVec out;
  for (const auto& t : v)
    if (t.coeff != 0) out.push_back(t);
  return out;
}

}  // namespace

CEModule make_module(const FiniteGradedLie& h, std::string name, std::vector<std::string> labels,
                     std::vector<Weight> weights, std::vector<FpVec> action) {
  CEModule V{std::move(name), std::move(labels), std::move(weights), h.dim(), {}};
  const std::size_t n = V.dim();
  if (V.weights.size() != n) throw ModuleError("weight list length mismatch");
  if (action.size() != h.dim() * n) throw ModuleError("action table has wrong size");
  for (auto& v : action) v = normalize(std::move(v));
  V.action = std::move(action);
  const Fq& F = h.field();

  for (std::size_t a = 0; a < h.dim(); ++a)
    for (std::size_t m = 0; m < n; ++m)
      for (const auto& t : V.act(a, m))
        if (V.weights[t.index] != V.weights[m] + h.basis(a).weight)
          throw ModuleError("module " + V.name + ": weight not additive for " + h.basis(a).label +
                            " on " + V.labels[m]);

  std::vector<Elem> lhs(n), rhs(n);
  for (std::size_t a = 0; a < h.dim(); ++a)
    for (std::size_t b = 0; b < h.dim(); ++b)
      for (std::size_t m = 0; m < n; ++m) {
        std::fill(lhs.begin(), lhs.end(), 0);
        std::fill(rhs.begin(), rhs.end(), 0);
        for (const auto& t : h.bracket(a, b))
          for (const auto& u : V.act(t.index, m)) lhs[u.index] = F.add(lhs[u.index], F.mul(t.coeff, u.coeff));
        for (const auto& t : V.act(b, m))
          for (const auto& u : V.act(a, t.index)) rhs[u.index] = F.add(rhs[u.index], F.mul(t.coeff, u.coeff));
        for (const auto& t : V.act(a, m))
          for (const auto& u : V.act(b, t.index)) rhs[u.index] = F.sub(rhs[u.index], F.mul(t.coeff, u.coeff));
        if (lhs != rhs)
          throw ModuleError("module " + V.name + " is not a representation: fails on " + h.basis(a).label +
                            ", " + h.basis(b).label + ", " + V.labels[m]);
      }
  return V;
}

CEModule trivial_module(const FiniteGradedLie& h, const Weight& w) {
  return make_module(h, "k" + w.str(), {"1"}, {w}, std::vector<FpVec>(h.dim()));
}

CEModule dual_module(const FiniteGradedLie& h, const CEModule& V) {
  const std::size_t n = V.dim();
  const Fq& F = h.field();
  std::vector<FpVec> action(h.dim() * n);
  for (std::size_t a = 0; a < h.dim(); ++a)
    for (std::size_t m = 0; m < n; ++m)
      for (const auto& t : V.act(a, m)) action[a * n + t.index].push_back({static_cast<int>(m), F.neg(t.coeff)});
  std::vector<std::string> labels;
  std::vector<Weight> weights;
  for (std::size_t m = 0; m < n; ++m) {
    labels.push_back(V.labels[m] + "*");
    weights.push_back(-V.weights[m]);
  }
  return make_module(h, V.name + "^dual", std::move(labels), std::move(weights), std::move(action));
}

CEModule exterior_power(const FiniteGradedLie& h, const CEModule& V, int j) {
  const std::size_t n = V.dim();
  if (n > 30) throw ModuleError("exterior power of a module of dimension above 30");
  if (j < 0 || static_cast<std::size_t>(j) > n) throw ModuleError("exterior degree out of range");
  const Fq& F = h.field();
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask)
    if (std::popcount(mask) == j) masks.push_back(mask);
  std::map<std::uint32_t, int> index;
  for (std::size_t i = 0; i < masks.size(); ++i) index[masks[i]] = static_cast<int>(i);

  std::vector<std::string> labels;
  std::vector<Weight> weights;
  for (auto mask : masks) {
    std::string lab;
    Weight w(h.dim() ? h.basis(0).weight.size() : V.weights.at(0).size());
    if (!V.weights.empty()) w = Weight(V.weights[0].size());
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) {
        if (!lab.empty()) lab += "^";
        lab += V.labels[i];
        w += V.weights[i];
      }
    labels.push_back(lab.empty() ? "1" : lab);
    weights.push_back(w);
  }
  std::vector<FpVec> action(h.dim() * masks.size());
  for (std::size_t a = 0; a < h.dim(); ++a)
    for (std::size_t s = 0; s < masks.size(); ++s) {
      FpVec out;
      const std::uint32_t mask = masks[s];
      for (std::size_t k = 0; k < n; ++k) {
        if (!(mask >> k & 1)) continue;
        std::uint32_t rest = mask & ~(std::uint32_t{1} << k);
        for (const auto& t : V.act(a, k)) {
          int m = t.index;
          if (rest >> m & 1) continue;
          // v_m takes the slot of v_k; sorting passes the factors between them.
          std::uint32_t lo = static_cast<std::uint32_t>(std::min<std::size_t>(k, m));
          std::uint32_t hi = static_cast<std::uint32_t>(std::max<std::size_t>(k, m));
          std::uint32_t between = rest & ((std::uint32_t{1} << hi) - 1) & ~((std::uint32_t{2} << lo) - 1);
          Elem c = std::popcount(between) & 1 ? F.neg(t.coeff) : t.coeff;
          add_term(out, index[rest | (std::uint32_t{1} << m)], c, F);
        }
      }
      action[a * masks.size() + s] = std::move(out);
    }
  return make_module(h, "wedge^" + std::to_string(j) + "(" + V.name + ")", std::move(labels),
                     std::move(weights), std::move(action));
}

CEModule zero_action(const CEModule& V) {
  CEModule Z = V;
  Z.name = V.name + "[zero action]";
  for (auto& v : Z.action) v.clear();
  return Z;
}

FiniteGradedLie subalgebra(const StructLie& L, const std::vector<int>& members, std::uint32_t p,
                           std::string name) {
  Fq F(p);
  std::vector<int> pos(L.dim(), -1);
  std::vector<GradedBasisElement> basis;
  for (int x : members) {
    pos.at(x) = static_cast<int>(basis.size());
    const auto& b = L.basis(x);
    int ht = b.kind == BasisKind::RootVector ? L.roots().root(b.index).height : 0;
    basis.push_back({b.label, ht, b.weight, x, 0});
  }
  const std::size_t n = basis.size();
  std::vector<FpVec> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (const auto& t : L.bracket(members[a], members[b])) {
        if (pos[t.index] < 0) throw ModuleError("members do not span a subalgebra");
        Elem c = F.from_int(t.coeff);
        if (c) table[a * n + b].push_back({pos[t.index], c});
      }
  return FiniteGradedLie(std::move(name), p, L.roots().coxeter_number(), std::move(basis), std::move(table));
}

CEModule quotient_module(const StructLie& L, const FiniteGradedLie& h, const std::vector<int>& sub) {
  const Fq& F = h.field();
  std::vector<bool> in_sub(L.dim(), false);
  for (int s : sub) in_sub.at(s) = true;
  std::vector<int> Q, qpos(L.dim(), -1);
  for (std::size_t x = 0; x < L.dim(); ++x)
    if (!in_sub[x]) {
      qpos[x] = static_cast<int>(Q.size());
      Q.push_back(static_cast<int>(x));
    }
  std::vector<std::string> labels;
  std::vector<Weight> weights;
  for (int x : Q) {
    labels.push_back(L.basis(x).label);
    weights.push_back(L.basis(x).weight);
  }
  std::vector<FpVec> action(h.dim() * Q.size());
  for (std::size_t a = 0; a < h.dim(); ++a) {
    int oa = h.basis(a).origin;
    if (oa < 0) throw ModuleError("acting algebra is not built from the structure table");
    for (std::size_t q = 0; q < Q.size(); ++q)
      for (const auto& t : L.bracket(oa, Q[q])) {
        if (qpos[t.index] < 0) continue;
        Elem c = F.from_int(t.coeff);
        if (c) action[a * Q.size() + q].push_back({qpos[t.index], c});
      }
  }
  return make_module(h, L.name() + "/sub", std::move(labels), std::move(weights), std::move(action));
}

bool WeightFilter::accepts(const Weight& w) const {
  switch (kind) {
    case Kind::All: return true;
    case Kind::Zero: return w.is_zero();
    case Kind::Set: return std::find(set.begin(), set.end(), w) != set.end();
  }
  return false;
}

std::string WeightFilter::str() const {
  switch (kind) {
    case Kind::All: return "all";
    case Kind::Zero: return "zero";
    case Kind::Set: {
      std::string s = "{";
      for (std::size_t i = 0; i < set.size(); ++i) s += (i ? "," : "") + set[i].str();
      return s + "}";
    }
  }
  return "";
}

std::size_t CEBlock::position(int q, std::uint64_t key) const {
  const auto& c = cells.at(q);
  auto it = std::lower_bound(c.begin(), c.end(), key);
  if (it == c.end() || *it != key) throw std::out_of_range("cochain not in block");
  return static_cast<std::size_t>(it - c.begin());
}

const CEBlock* CEComplex::block(const Weight& w) const {
  for (const auto& b : blocks_)
    if (b.weight == w) return &b;
  return nullptr;
}

CEComplex ce_complex(const FiniteGradedLie& h, const CEModule& V, const WeightFilter& filter) {
  const int n = static_cast<int>(h.dim());
  if (V.lie_dim != h.dim()) throw ModuleError("module is over a different Lie algebra");
  if (n > 20) throw std::invalid_argument("cochain enumeration limit: Lie algebra dimension above 20");
  const std::uint64_t nmasks = std::uint64_t{1} << n;
  const std::size_t M = V.dim();
  if (M * nmasks > (std::uint64_t{1} << 26))
    throw std::invalid_argument("cochain enumeration limit: too many cochains");
  CEComplex C(h, V);
  C.filter_ = filter;
  const Fq& F = h.field();

  std::size_t wdim = V.weights.empty() ? 0 : V.weights[0].size();
  std::vector<Weight> subset_weight(nmasks, Weight(wdim));
  for (std::uint64_t mask = 1; mask < nmasks; ++mask) {
    int low = std::countr_zero(mask);
    subset_weight[mask] = subset_weight[mask & (mask - 1)] + h.basis(low).weight;
  }

  std::map<Weight, std::vector<std::vector<std::uint64_t>>> cells;
  for (std::size_t m = 0; m < M; ++m)
    for (std::uint64_t mask = 0; mask < nmasks; ++mask) {
      Weight w = V.weights[m] - subset_weight[mask];
      if (!filter.accepts(w)) continue;
      auto& c = cells[w];
      if (c.empty()) c.resize(n + 1);
      c[std::popcount(mask)].push_back((static_cast<std::uint64_t>(m) << 32) | mask);
    }
  for (auto& [w, c] : cells) C.blocks_.push_back({w, std::move(c), {}});

  // rev[k]: pairs a < b with x_k in [x_a, x_b].
  struct Pair {
    int a, b;
    Elem c;
  };
  std::vector<std::vector<Pair>> rev(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (const auto& t : h.bracket(a, b)) rev[t.index].push_back({a, b, t.coeff});

  parallel_for(C.blocks_.size(), [&](std::size_t bi) {
    CEBlock& blk = C.blocks_[bi];
    blk.d.resize(n + 1);
    for (int q = 0; q <= n; ++q) {
      const auto& src = blk.cells[q];
      if (q == n) {
        blk.d[q] = SparseMat(0, src.size());
        continue;
      }
      const auto& dst = blk.cells[q + 1];
      std::vector<Triplet> trip;
      auto emit = [&](std::uint64_t key, std::uint32_t col, Elem c) {
        auto it = std::lower_bound(dst.begin(), dst.end(), key);
        if (it == dst.end() || *it != key) throw std::logic_error("differential leaves its weight block");
        trip.push_back({static_cast<std::uint32_t>(it - dst.begin()), col, c});
      };
      for (std::uint32_t col = 0; col < src.size(); ++col) {
        const std::uint64_t m = src[col] >> 32;
        const std::uint64_t S = src[col] & 0xffffffffu;
        for (int a = 0; a < n; ++a) {
          if (S >> a & 1) continue;
          std::uint64_t T = S | (std::uint64_t{1} << a);
          bool neg = parity_below(T, a);
          for (const auto& t : V.act(a, m))
            emit((static_cast<std::uint64_t>(t.index) << 32) | T, col, neg ? F.neg(t.coeff) : t.coeff);
        }
        for (int k = 0; k < n; ++k) {
          if (!(S >> k & 1)) continue;
          std::uint64_t R = S & ~(std::uint64_t{1} << k);
          int sk = parity_below(S, k);
          for (const auto& pr : rev[k]) {
            if ((R >> pr.a & 1) || (R >> pr.b & 1)) continue;
            std::uint64_t T = R | (std::uint64_t{1} << pr.a) | (std::uint64_t{1} << pr.b);
            int sign = sk ^ parity_below(T, pr.a) ^ parity_below(T, pr.b);
            emit((m << 32) | T, col, sign ? F.neg(pr.c) : pr.c);
          }
        }
      }
      blk.d[q] = SparseMat::from_triplets(dst.size(), src.size(), std::move(trip), F);
    }
  });
  return C;
}

long long CohomologyTable::dim(int q, const Weight& w) const {
  auto it = dims.find({q, w});
  return it == dims.end() ? 0 : it->second;
}

Poly CohomologyTable::poincare() const {
  Poly r{0};
  for (const auto& [key, d] : dims) {
    if (static_cast<std::size_t>(key.first) >= r.size()) r.resize(key.first + 1, 0);
    r[key.first] += d;
  }
  return poly_trim(r);
}

long long CohomologyTable::total() const {
  long long s = 0;
  for (const auto& [key, d] : dims) s += d;
  return s;
}

std::string CohomologyTable::to_json() const {
  nlohmann::ordered_json j;
  j["type"] = type;
  j["p"] = p;
  j["f"] = f;
  j["filter"] = filter;
  nlohmann::ordered_json d = nlohmann::ordered_json::array();
  for (const auto& [key, v] : dims) d.push_back({key.first, key.second.coords, v});
  j["dims"] = d;
  j["poincare"] = poincare();
  return j.dump();
}

std::string CohomologyTable::to_csv() const {
  std::ostringstream out;
  out << "degree,weight,dim\n";
  for (const auto& [key, v] : dims) {
    out << key.first << ",";
    for (std::size_t i = 0; i < key.second.size(); ++i) out << (i ? ";" : "") << key.second[i];
    out << "," << v << "\n";
  }
  return out.str();
}

CohomologyTable cohomology_dims(const CEComplex& C) {
  const int n = C.top_degree();
  const auto& blocks = C.blocks();
  std::vector<std::vector<long long>> ranks(blocks.size(), std::vector<long long>(n + 1, 0));
  parallel_for(blocks.size() * (n + 1), [&](std::size_t task) {
    std::size_t b = task / (n + 1);
    int q = static_cast<int>(task % (n + 1));
    ranks[b][q] = static_cast<long long>(rank(blocks[b].d[q], C.field()));
  });
  CohomologyTable T;
  T.type = C.algebra().name();
  T.p = C.field().p();
  T.filter = C.filter().str();
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int q = 0; q <= n; ++q) {
      long long d = static_cast<long long>(blocks[b].cells[q].size()) - ranks[b][q] -
                    (q > 0 ? ranks[b][q - 1] : 0);
      if (d < 0) throw std::logic_error("negative cohomology dimension");
      if (d) T.dims[{q, blocks[b].weight}] = d;
    }
  return T;
}

CheckResult check_d_squared(const CEComplex& C) {
  for (const auto& blk : C.blocks())
    for (int q = 0; q + 1 <= C.top_degree(); ++q) {
      SparseMat comp = blk.d[q + 1].multiply(blk.d[q], C.field());
      if (comp.nnz() != 0)
        return CheckResult::fail("d^2 != 0 in weight " + blk.weight.str() + " degree " + std::to_string(q));
    }
  return {};
}

CheckResult check_euler(const CEComplex& C, const CohomologyTable& H) {
  for (const auto& blk : C.blocks()) {
    long long chain = 0, coh = 0;
    for (int q = 0; q <= C.top_degree(); ++q) {
      long long sign = q % 2 ? -1 : 1;
      chain += sign * static_cast<long long>(blk.cells[q].size());
      coh += sign * H.dim(q, blk.weight);
    }
    if (chain != coh) return CheckResult::fail("Euler characteristic mismatch in weight " + blk.weight.str());
  }
  return {};
}

CohomologyTable gbar_cohomology(const StructLie& L, std::uint32_t p, const WeightFilter& filter) {
  FiniteGradedLie gb = build_gbar(L, p);
  Weight zero(gb.basis(0).weight.size());
  CEComplex C = ce_complex(gb, trivial_module(gb, zero), filter);
  CohomologyTable T = cohomology_dims(C);
  T.type = L.name();
  return T;
}

KostantReport kostant_check(const RootSystem& rs, std::uint32_t p, const Weight& lambda) {
  KostantReport rep;
  rep.hypothesis_ok = static_cast<int>(p) >= rs.coxeter_number() - 1;
  StructLie L = build_chevalley(rs);
  FiniteGradedLie n = subalgebra(L, triangular(L).n, p, "n(" + rs.name() + ")");
  CEComplex C = ce_complex(n, trivial_module(n, lambda));
  CohomologyTable H = cohomology_dims(C);
  for (const auto& [key, d] : H.dims) {
    for (long long k = 0; k < d; ++k) rep.computed[key.first].push_back(key.second);
    rep.total += d;
  }
  for (const auto& w : weyl_group(rs)) rep.expected[w.length].push_back(dot_action(w, Weight(rs.rank()), rs) + lambda);
  for (auto& [q, v] : rep.computed) std::sort(v.begin(), v.end());
  for (auto& [q, v] : rep.expected) std::sort(v.begin(), v.end());
  rep.ok = rep.computed == rep.expected;
  if (!rep.ok) {
    for (const auto& [q, v] : rep.expected) {
      auto it = rep.computed.find(q);
      if (it == rep.computed.end() || it->second != v) {
        rep.detail = "degree " + std::to_string(q) + " weights differ";
        break;
      }
    }
    if (rep.detail.empty()) rep.detail = "extra cohomology outside the expected degrees";
  }
  return rep;
}

HodgeReport hodge_dims_check(const RootSystem& rs, std::uint32_t p) {
  HodgeReport rep;
  rep.hypothesis_ok = static_cast<int>(p) > rs.coxeter_number();
  StructLie L = build_chevalley(rs);
  Triangular T = triangular(L);
  FiniteGradedLie n = subalgebra(L, T.n, p, "n(" + rs.name() + ")");
  CEModule dual = dual_module(n, quotient_module(L, n, T.b));
  const int N = static_cast<int>(rs.num_positive());
  std::vector<long long> lengths(N + 1, 0);
  for (const auto& w : weyl_group(rs)) ++lengths[w.length];
  rep.dims.assign(N + 1, std::vector<long long>(N + 1, 0));
  rep.expected = rep.dims;
  Weight zero(rs.rank());
  for (int j = 0; j <= N; ++j) {
    CEComplex C = ce_complex(n, exterior_power(n, dual, j), WeightFilter::zero());
    CohomologyTable H = cohomology_dims(C);
    for (int i = 0; i <= N; ++i) {
      rep.dims[i][j] = H.dim(i, zero);
      rep.expected[i][j] = i == j ? lengths[i] : 0;
      if (rep.dims[i][j] != rep.expected[i][j] && rep.ok) {
        rep.ok = false;
        rep.detail = "H^" + std::to_string(i) + " with wedge^" + std::to_string(j) + " has dimension " +
                     std::to_string(rep.dims[i][j]) + ", expected " + std::to_string(rep.expected[i][j]);
      }
    }
  }
  return rep;
}

SemidirectReport semidirect_degeneration_check(const StructLie& L, std::uint32_t p,
                                               bool zero_action_control) {
  SemidirectReport rep;
  CohomologyTable lhs = gbar_cohomology(L, p, WeightFilter::all());
  rep.lhs = lhs.poincare();

  Triangular T = triangular(L);
  FiniteGradedLie n = subalgebra(L, T.n, p, "n(" + L.name() + ")");
  CEModule dual = dual_module(n, quotient_module(L, n, T.n));
  std::map<std::pair<int, Weight>, long long> rhs_dims;
  for (int j = 0; j <= static_cast<int>(dual.dim()); ++j) {
    CEModule E = exterior_power(n, dual, j);
    if (zero_action_control) E = zero_action(E);
    CohomologyTable H = cohomology_dims(ce_complex(n, E));
    for (const auto& [key, d] : H.dims) rhs_dims[{key.first + j, key.second}] += d;
  }
  Poly rhs{0};
  for (const auto& [key, d] : rhs_dims) {
    if (static_cast<std::size_t>(key.first) >= rhs.size()) rhs.resize(key.first + 1, 0);
    rhs[key.first] += d;
  }
  rep.rhs = poly_trim(rhs);
  rep.ok = rep.lhs == rep.rhs && lhs.dims == rhs_dims;
  if (!rep.ok)
    rep.detail = rep.lhs == rep.rhs ? "weight decompositions differ"
                                    : "Poincare series " + poly_str(rep.lhs) + " vs " + poly_str(rep.rhs);
  return rep;
}

RingCertificate cup_structure(const CEComplex& C) {
  RingCertificate cert;
  const auto& V = C.module();
  if (V.dim() != 1 || !V.weights[0].is_zero())
    throw std::invalid_argument("cup products need trivial coefficients");
  for (const auto& a : V.action)
    if (!a.empty()) throw std::invalid_argument("cup products need trivial coefficients");
  const CEBlock* blk = C.block(V.weights[0]);
  if (!blk) throw std::invalid_argument("complex has no weight-zero block");
  const Fq& F = C.field();
  const int n = C.top_degree();

  auto wedge = [&](int qa, const std::vector<Elem>& u, int qb, const std::vector<Elem>& v) {
    std::vector<Elem> out(blk->cells[qa + qb].size(), 0);
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (!u[i]) continue;
      std::uint64_t S = blk->cells[qa][i] & 0xffffffffu;
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (!v[j]) continue;
        std::uint64_t T = blk->cells[qb][j] & 0xffffffffu;
        if (S & T) continue;
        int sign = 0;
        for (std::uint64_t t = T; t; t &= t - 1) sign ^= std::popcount(S >> std::countr_zero(t)) & 1;
        Elem c = F.mul(u[i], v[j]);
        std::size_t pos = blk->position(qa + qb, S | T);
        out[pos] = F.add(out[pos], sign ? F.neg(c) : c);
      }
    }
    return out;
  };

  std::vector<std::vector<std::vector<Elem>>> boundaries(n + 1), reps(n + 1);
  cert.dims.assign(n + 1, 0);
  for (int q = 0; q <= n; ++q) {
    const std::size_t N = blk->cells[q].size();
    if (q > 0) {
      SparseMat Dt = blk->d[q - 1].transpose();
      for (std::size_t r = 0; r < Dt.rows(); ++r) {
        std::vector<Elem> v(N, 0);
        for (const auto& e : Dt.row(r)) v[e.col] = e.val;
        boundaries[q].push_back(std::move(v));
      }
    }
    Eliminator el(N, F);
    for (const auto& b : boundaries[q]) el.insert_dense(b);
    for (auto& z : kernel_basis(blk->d[q], F))
      if (el.insert_dense(z)) reps[q].push_back(std::move(z));
    cert.dims[q] = static_cast<long long>(reps[q].size());
  }

  struct Gen {
    int degree;
    std::vector<Elem> rep;
  };
  std::vector<Gen> gens;
  for (int q = 1; q <= n; ++q) {
    Eliminator el(blk->cells[q].size(), F);
    for (const auto& b : boundaries[q]) el.insert_dense(b);
    for (int a = 1; a < q; ++a)
      for (const auto& u : reps[a])
        for (const auto& v : reps[q - a]) el.insert_dense(wedge(a, u, q - a, v));
    for (const auto& z : reps[q])
      if (el.insert_dense(z)) {
        gens.push_back({q, z});
        cert.generator_degrees.push_back(q);
      }
  }
  if (gens.size() > 16) {
    cert.ok = false;
    cert.detail = "too many indecomposable classes";
    return cert;
  }

  std::vector<std::vector<std::vector<Elem>>> products(n + 1);
  for (std::uint32_t subset = 0; subset < (std::uint32_t{1} << gens.size()); ++subset) {
    int q = 0;
    std::vector<Elem> prod{1};
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (!(subset >> g & 1)) continue;
      if (q + gens[g].degree > n) {
        q = -1;
        break;
      }
      prod = wedge(q, prod, gens[g].degree, gens[g].rep);
      q += gens[g].degree;
    }
    if (q < 0) {
      cert.ok = false;
      cert.detail = "a product of generators exceeds the top degree";
      return cert;
    }
    auto image = blk->d[q].apply(prod, F);
    if (std::any_of(image.begin(), image.end(), [](Elem e) { return e != 0; })) {
      cert.ok = false;
      cert.detail = "product of cocycles is not a cocycle";
      return cert;
    }
    products[q].push_back(std::move(prod));
  }
  for (int q = 0; q <= n; ++q) {
    Eliminator el(blk->cells[q].size(), F);
    for (const auto& b : boundaries[q]) el.insert_dense(b);
    for (const auto& pr : products[q])
      if (!el.insert_dense(pr)) {
        cert.ok = false;
        cert.detail = "not an exterior algebra: products of generators are dependent in degree " +
                      std::to_string(q);
        return cert;
      }
    if (static_cast<long long>(products[q].size()) != cert.dims[q]) {
      cert.ok = false;
      cert.detail = "not an exterior algebra: products of generators do not span degree " + std::to_string(q);
      return cert;
    }
  }
  return cert;
}

namespace {

__int128 det_bareiss(std::vector<std::vector<__int128>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  __int128 sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[s], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

Lattice::Lattice(std::vector<std::vector<long long>> M) : n_(M.size()), M_(std::move(M)) {
  for (const auto& row : M_)
    if (row.size() != n_) throw std::invalid_argument("lattice matrix must be square");
  std::vector<std::vector<__int128>> A(n_, std::vector<__int128>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) A[i][j] = M_[i][j];
  det_ = det_bareiss(A);
  if (det_ == 0) throw std::invalid_argument("lattice not full-rank");
  adj_.assign(n_, std::vector<__int128>(n_, 0));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      std::vector<std::vector<__int128>> minor;
      for (std::size_t r = 0; r < n_; ++r) {
        if (r == i) continue;
        std::vector<__int128> row;
        for (std::size_t c = 0; c < n_; ++c)
          if (c != j) row.push_back(A[r][c]);
        minor.push_back(row);
      }
      __int128 d = det_bareiss(minor);
      adj_[j][i] = (i + j) % 2 ? -d : d;
    }
}

Lattice Lattice::scaled(std::size_t rank, long long m) {
  std::vector<std::vector<long long>> M(rank, std::vector<long long>(rank, 0));
  for (std::size_t i = 0; i < rank; ++i) M[i][i] = m;
  return Lattice(M);
}

long long Lattice::index() const { return static_cast<long long>(det_ < 0 ? -det_ : det_); }

bool Lattice::contains(const Weight& w) const {
  if (w.size() != n_) throw std::invalid_argument("weight rank does not match lattice");
  for (std::size_t j = 0; j < n_; ++j) {
    __int128 s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += adj_[j][i] * w[i];
    if (s % det_ != 0) return false;
  }
  return true;
}

CohomologyTable kunneth_twist(const CohomologyTable& table, int f, const Lattice& lattice) {
  if (f < 1) throw std::invalid_argument("f must be positive");
  if (table.filter != "all") throw std::invalid_argument("twisting needs the table for all weights");
  std::vector<std::pair<std::pair<int, Weight>, long long>> entries(table.dims.begin(), table.dims.end());
  double budget = 1;
  for (int i = 0; i < f; ++i) budget *= static_cast<double>(entries.size());
  if (budget > 5e7) throw std::invalid_argument("enumeration limit: tensor power too large");

  CohomologyTable out;
  out.type = table.type;
  out.p = table.p;
  out.f = f;
  out.filter = "lattice";
  if (entries.empty()) return out;
  const std::size_t r = entries[0].first.second.size();
  std::vector<long long> pw(f, 1);
  for (int i = 1; i < f; ++i) pw[i] = pw[i - 1] * table.p;

  std::vector<std::size_t> idx(f, 0);
  for (;;) {
    int q = 0;
    long long d = 1;
    Weight w(r);
    for (int i = 0; i < f; ++i) {
      const auto& e = entries[idx[i]];
      q += e.first.first;
      d *= e.second;
      w += e.first.second.scaled(pw[i]);
    }
    if (lattice.contains(w)) out.dims[{q, w}] += d;
    int k = 0;
    while (k < f && ++idx[k] == entries.size()) idx[k++] = 0;
    if (k == f) break;
  }
  return out;
}

}  // namespace lieval
