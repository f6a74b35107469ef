#include "lieval/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>

#include "lieval/rational.hpp"

namespace lieval {

bool Weight::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](int c) { return c == 0; });
}

Weight Weight::operator+(const Weight& o) const {
  Weight r(*this);
  r += o;
  return r;
}

Weight Weight::operator-(const Weight& o) const {
  Weight r(*this);
  r -= o;
  return r;
}

Weight Weight::operator-() const {
  Weight r(*this);
  for (auto& c : r.coords) c = -c;
  return r;
}

Weight& Weight::operator+=(const Weight& o) {
  if (o.size() != size()) throw std::invalid_argument("weight rank mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords[i] += o.coords[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& o) {
  if (o.size() != size()) throw std::invalid_argument("weight rank mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

Weight Weight::scaled(long long k) const {
  Weight r(*this);
  for (auto& c : r.coords) c = static_cast<int>(c * k);
  return r;
}

std::string Weight::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) s += ",";
    s += std::to_string(coords[i]);
  }
  return s + ")";
}

namespace {

std::vector<std::vector<int>> build_cartan(char type, int r) {
  std::vector<std::vector<int>> A(r, std::vector<int>(r, 0));
  for (int i = 0; i < r; ++i) A[i][i] = 2;
  auto link = [&](int i, int j) { A[i][j] = A[j][i] = -1; };
  switch (type) {
    case 'A':
      for (int i = 0; i + 1 < r; ++i) link(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < r; ++i) link(i, i + 1);
      A[r - 1][r - 2] = -2;
      break;
    case 'C':
      for (int i = 0; i + 1 < r; ++i) link(i, i + 1);
      A[r - 2][r - 1] = -2;
      break;
    case 'D':
      for (int i = 0; i + 2 < r; ++i) link(i, i + 1);
      link(r - 3, r - 1);
      break;
    case 'E':
      link(0, 2);
      link(2, 3);
      link(1, 3);
      for (int i = 3; i + 1 < r; ++i) link(i, i + 1);
      break;
    case 'F':
      link(0, 1);
      link(1, 2);
      link(2, 3);
      A[2][1] = -2;
      break;
    case 'G':
      link(0, 1);
      A[0][1] = -3;
      break;
    default:
      throw RootSystemError(std::string("unknown Cartan type ") + type);
  }
  return A;
}

void validate_type(char type, int r) {
  if (r < 1 || r > 8) throw RootSystemError("rank must lie in 1..8");
  bool ok = false;
  switch (type) {
    case 'A': ok = r >= 1; break;
    case 'B': ok = r >= 2; break;
    case 'C': ok = r >= 2; break;
    case 'D': ok = r >= 4; break;
    case 'E': ok = r >= 6 && r <= 8; break;
    case 'F': ok = r == 4; break;
    case 'G': ok = r == 2; break;
    default: ok = false;
  }
  if (!ok)
    throw RootSystemError(std::string("no root system of type ") + type + std::to_string(r));
}

}  // namespace

RootSystem::RootSystem(char type, int rank)
    : type_(static_cast<char>(std::toupper(static_cast<unsigned char>(type)))), rank_(rank) {
  validate_type(type_, rank_);
  cartan_ = build_cartan(type_, rank_);
  const int r = rank_;

  // Symmetrizer: A_ij L_i = A_ji L_j, connected diagram.
  std::vector<Rational> L(r, Rational(0));
  L[0] = Rational(1);
  std::deque<int> queue{0};
  std::vector<bool> seen(r, false);
  seen[0] = true;
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int j = 0; j < r; ++j) {
      if (j == i || cartan_[i][j] == 0 || seen[j]) continue;
      L[j] = L[i] * Rational(cartan_[i][j], cartan_[j][i]);
      seen[j] = true;
      queue.push_back(j);
    }
  }
  Rational mn = *std::min_element(L.begin(), L.end());
  lengths_.resize(r);
  for (int i = 0; i < r; ++i) {
    Rational v = L[i] / mn * Rational(2);
    if (!v.is_integer()) throw RootSystemError("non-integral symmetrizer");
    lengths_[i] = static_cast<int>(v.num());
  }

  // Positive roots: close the simple roots under simple reflections,
  // keeping positive images only.
  std::set<std::vector<int>> pos;
  std::deque<std::vector<int>> work;
  for (int i = 0; i < r; ++i) {
    std::vector<int> e(r, 0);
    e[i] = 1;
    pos.insert(e);
    work.push_back(e);
  }
  while (!work.empty()) {
    auto b = work.front();
    work.pop_front();
    for (int i = 0; i < r; ++i) {
      int pair = 0;
      for (int j = 0; j < r; ++j) pair += cartan_[i][j] * b[j];
      auto c = b;
      c[i] -= pair;
      bool positive = std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
      bool nonzero = std::any_of(c.begin(), c.end(), [](int x) { return x != 0; });
      if (positive && nonzero && !pos.count(c)) {
        pos.insert(c);
        work.push_back(c);
      }
    }
  }
  std::vector<std::vector<int>> plist(pos.begin(), pos.end());
  auto height = [](const std::vector<int>& c) { return std::accumulate(c.begin(), c.end(), 0); };
  std::sort(plist.begin(), plist.end(), [&](const auto& a, const auto& b) {
    int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  for (const auto& c : plist) roots_.push_back({c, height(c), weight_of(c)});
  for (const auto& c : plist) {
    std::vector<int> n(c);
    for (auto& x : n) x = -x;
    roots_.push_back({n, -height(c), weight_of(n)});
  }
  for (std::size_t i = 0; i < roots_.size(); ++i) index_[roots_[i].coords] = static_cast<int>(i);

  coxeter_ = roots_[num_positive() - 1].height + 1;
  if (static_cast<int>(num_positive()) * 2 != rank_ * coxeter_)
    throw RootSystemError("root count does not match rank times Coxeter number");

  // Number of positive roots of height i equals #{j : m_j >= i}.
  std::vector<int> count(coxeter_ + 1, 0);
  for (std::size_t i = 0; i < num_positive(); ++i) ++count[roots_[i].height];
  for (int m = 1; m < coxeter_; ++m)
    for (int k = 0; k < count[m] - count[m + 1]; ++k) exponents_.push_back(m);
  if (static_cast<int>(exponents_.size()) != rank_ || exponents_.front() != 1 ||
      exponents_.back() != coxeter_ - 1)
    throw RootSystemError("exponent extraction failed");
}

RootSystem RootSystem::parse(const std::string& name) {
  if (name.size() < 2) throw RootSystemError("cannot parse root system '" + name + "'");
  char t = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  int r = 0;
  try {
    std::size_t used = 0;
    r = std::stoi(name.substr(1), &used);
    if (used != name.size() - 1) throw RootSystemError("trailing characters");
  } catch (const std::exception&) {
    throw RootSystemError("cannot parse root system '" + name + "'");
  }
  return RootSystem(t, r);
}

std::string RootSystem::name() const { return std::string(1, type_) + std::to_string(rank_); }

int RootSystem::index_of(const std::vector<int>& c) const {
  auto it = index_.find(c);
  return it == index_.end() ? -1 : it->second;
}

int RootSystem::negative_of(int i) const {
  int n = static_cast<int>(num_positive());
  return i < n ? i + n : i - n;
}

int RootSystem::simple_root(int i) const {
  std::vector<int> e(rank_, 0);
  e.at(i) = 1;
  return index_of(e);
}

int RootSystem::sum_index(int a, int b) const {
  std::vector<int> c(rank_);
  for (int i = 0; i < rank_; ++i) c[i] = roots_[a].coords[i] + roots_[b].coords[i];
  return index_of(c);
}

int RootSystem::inner(const std::vector<int>& a, const std::vector<int>& b) const {
  // (alpha_i, alpha_j) = A_ij L_i / 2
  long long s2 = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      s2 += static_cast<long long>(a[i]) * b[j] * cartan_[i][j] * lengths_[i];
  return static_cast<int>(s2 / 2);
}

int RootSystem::length2(int i) const { return inner(roots_[i].coords, roots_[i].coords); }

std::vector<int> RootSystem::coroot_coeffs(int idx) const {
  const auto& c = roots_[idx].coords;
  int l = length2(idx);
  std::vector<int> out(rank_);
  for (int j = 0; j < rank_; ++j) {
    int num = c[j] * lengths_[j];
    if (num % l != 0) throw RootSystemError("non-integral coroot");
    out[j] = num / l;
  }
  return out;
}

Weight RootSystem::weight_of(const std::vector<int>& c) const {
  Weight w(static_cast<std::size_t>(rank_));
  for (int i = 0; i < rank_; ++i) {
    int s = 0;
    for (int j = 0; j < rank_; ++j) s += cartan_[i][j] * c[j];
    w[i] = s;
  }
  return w;
}

std::vector<int> RootSystem::to_simple_coords(const Weight& w) const {
  // Solve cartan * c = w by fraction-free Gaussian elimination.
  const int r = rank_;
  std::vector<std::vector<Rational>> M(r, std::vector<Rational>(r + 1));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) M[i][j] = Rational(cartan_[i][j]);
    M[i][r] = Rational(w[i]);
  }
  for (int col = 0; col < r; ++col) {
    int piv = col;
    while (M[piv][col] == Rational(0)) ++piv;
    std::swap(M[piv], M[col]);
    for (int i = 0; i < r; ++i) {
      if (i == col || M[i][col] == Rational(0)) continue;
      Rational f = M[i][col] / M[col][col];
      for (int j = col; j <= r; ++j) M[i][j] = M[i][j] - f * M[col][j];
    }
  }
  std::vector<int> c(r);
  for (int i = 0; i < r; ++i) {
    Rational v = M[i][r] / M[i][i];
    if (!v.is_integer()) throw RootSystemError("weight " + w.str() + " is not in the root lattice");
    c[i] = static_cast<int>(v.num());
  }
  return c;
}

std::vector<long long> RootSystem::length_polynomial() const {
  std::vector<long long> poly{1};
  for (int m : exponents_) {
    std::vector<long long> next(poly.size() + m, 0);
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (int k = 0; k <= m; ++k) next[i + k] += poly[i];
    poly = std::move(next);
  }
  return poly;
}

Weight WeylElement::act(const Weight& w) const {
  Weight out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    int s = 0;
    for (std::size_t j = 0; j < w.size(); ++j) s += matrix[i][j] * w[j];
    out[i] = s;
  }
  return out;
}

std::vector<WeylElement> weyl_group(const RootSystem& rs) {
  const int r = rs.rank();
  if (r > 4) throw RootSystemError("enumeration limit: Weyl group enumeration needs rank <= 4");
  const auto& A = rs.cartan();

  // s_i(lambda)_j = lambda_j - lambda_i A_ji
  std::vector<std::vector<std::vector<int>>> simple(r);
  for (int i = 0; i < r; ++i) {
    auto S = std::vector<std::vector<int>>(r, std::vector<int>(r, 0));
    for (int j = 0; j < r; ++j) S[j][j] = 1;
    for (int j = 0; j < r; ++j) S[j][i] -= A[j][i];
    simple[i] = S;
  }
  auto mult = [r](const auto& X, const auto& Y) {
    std::vector<std::vector<int>> Z(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < r; ++k)
        if (X[i][k])
          for (int j = 0; j < r; ++j) Z[i][j] += X[i][k] * Y[k][j];
    return Z;
  };

  std::map<std::vector<std::vector<int>>, std::size_t> seen;
  std::vector<WeylElement> out;
  std::vector<std::vector<int>> id(r, std::vector<int>(r, 0));
  for (int i = 0; i < r; ++i) id[i][i] = 1;
  std::deque<std::vector<std::vector<int>>> queue{id};
  seen[id] = 0;
  out.push_back({id, {}, 0});
  while (!queue.empty()) {
    auto w = queue.front();
    queue.pop_front();
    for (int i = 0; i < r; ++i) {
      auto sw = mult(simple[i], w);
      if (seen.count(sw)) continue;
      seen[sw] = out.size();
      out.push_back({sw, {}, 0});
      queue.push_back(sw);
    }
  }

  std::map<Weight, int> by_weight;
  for (std::size_t i = 0; i < rs.num_roots(); ++i) by_weight[rs.root(i).weight] = static_cast<int>(i);
  for (auto& w : out) {
    w.root_perm.resize(rs.num_roots());
    w.length = 0;
    for (std::size_t i = 0; i < rs.num_roots(); ++i) {
      auto it = by_weight.find(w.act(rs.root(i).weight));
      if (it == by_weight.end()) throw RootSystemError("Weyl element does not preserve roots");
      w.root_perm[i] = it->second;
      if (i < rs.num_positive() && !rs.root(it->second).positive()) ++w.length;
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const WeylElement& a, const WeylElement& b) { return a.length < b.length; });
  return out;
}

Weight dot_action(const WeylElement& w, const Weight& lambda, const RootSystem& rs) {
  return w.act(lambda + rs.rho()) - rs.rho();
}

std::vector<Weight> exterior_weights(const RootSystem& rs) {
  std::set<Weight> sums{Weight(static_cast<std::size_t>(rs.rank()))};
  for (const auto& root : rs.roots()) {
    std::vector<Weight> add;
    add.reserve(sums.size());
    for (const auto& s : sums) add.push_back(s + root.weight);
    sums.insert(add.begin(), add.end());
    if (sums.size() > 5'000'000) throw RootSystemError("enumeration limit: too many exterior weights");
  }
  return {sums.begin(), sums.end()};
}

WeightLemmaReport check_weight_lemma(const RootSystem& rs, std::uint32_t p, int f, long long n) {
  if (f < 1) throw RootSystemError("f must be positive");
  if (n < 1) throw RootSystemError("lattice scale must be positive");
  WeightLemmaReport rep;
  long long bound = 0, pk = 1;
  for (int i = 0; i < f; ++i) {
    bound += pk;
    pk *= p;
  }
  rep.hypothesis_ok = n > static_cast<long long>(rs.coxeter_number()) * bound;

  auto weights = exterior_weights(rs);
  double total = 1;
  for (int i = 0; i < f; ++i) total *= static_cast<double>(weights.size());
  if (total > 2e8) throw RootSystemError("enumeration limit: too many weight tuples");

  const std::size_t r = static_cast<std::size_t>(rs.rank());
  std::vector<std::size_t> idx(f, 0);
  std::vector<long long> powers(f);
  powers[0] = 1;
  for (int i = 1; i < f; ++i) powers[i] = powers[i - 1] * p;
  std::vector<long long> sum(r);
  for (;;) {
    std::fill(sum.begin(), sum.end(), 0);
    for (int i = 0; i < f; ++i)
      for (std::size_t j = 0; j < r; ++j) sum[j] += powers[i] * weights[idx[i]][j];
    ++rep.tuples_checked;
    bool in_lattice = true, zero = true;
    for (auto s : sum) {
      if (s % n != 0) in_lattice = false;
      if (s != 0) zero = false;
    }
    if (in_lattice && !zero) {
      rep.holds = false;
      if (!rep.witness) {
        std::vector<Weight> w;
        for (int i = 0; i < f; ++i) w.push_back(weights[idx[i]]);
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
