// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "lieval/chevalley.hpp"
#include "lieval/coinvariants.hpp"
#include "lieval/cohomology.hpp"
#include "lieval/gradedlie.hpp"
#include "lieval/morava.hpp"
#include "lieval/padicgroups.hpp"
#include "lieval/rootsys.hpp"

using namespace lieval;

namespace {

struct Case {
  const char* type;
  std::uint32_t p;
};
const std::vector<Case> kMain = {{"A1", 5}, {"A2", 5}, {"A3", 7}, {"B2", 7}, {"G2", 11}};

// Collects a verdict and a short note per sub-check.
struct Verdict {
  bool ok = true;
  std::vector<std::string> notes;
  void check(bool cond, const std::string& note) {
    if (!cond) ok = false;
    notes.push_back((cond ? "" : "FAILED ") + note);
  }
};

Weight zero_of(const FiniteGradedLie& h) { return Weight(h.basis(0).weight.size()); }

Verdict main_table() {
  Verdict v;
  for (const auto& c : kMain) {
    RootSystem rs = RootSystem::parse(c.type);
    Poly got = poly_trim(gbar_cohomology(build_chevalley(rs), c.p).poincare());
    v.check(got == exterior_poincare(rs.exponents()), std::string(c.type) + " " + poly_str(got));
  }
  return v;
}

Verdict ring_structure() {
  Verdict v;
  for (const auto& c : kMain) {
    RootSystem rs = RootSystem::parse(c.type);
    FiniteGradedLie gb = build_gbar(build_chevalley(rs), c.p);
    RingCertificate cert = cup_structure(ce_complex(gb, trivial_module(gb, zero_of(gb)), WeightFilter::zero()));
    std::vector<int> want, got = cert.generator_degrees;
    for (int m : rs.exponents()) want.push_back(2 * m + 1);
    std::sort(got.begin(), got.end());
    std::string s;
    for (int d : got) s += (s.empty() ? "" : ",") + std::to_string(d);
    v.check(cert.ok && got == want, std::string(c.type) + " {" + s + "}");
  }
  return v;
}

Verdict cross_validation() {
  Verdict v;
  for (const auto& c : kMain) {
    CrossValidation cv = cross_validate(RootSystem::parse(c.type), c.p);
    v.check(cv.hypothesis_ok && cv.agree, std::string(c.type) + (cv.agree ? " agree" : " " + cv.detail));
  }
  return v;
}

Verdict kostant() {
  Verdict v;
  for (const auto& c : std::vector<Case>{{"A1", 5}, {"A2", 5}, {"A3", 5}, {"A4", 7}, {"B2", 5}, {"B3", 7},
                                        {"C3", 7}, {"D4", 7}, {"G2", 7}}) {
    RootSystem rs = RootSystem::parse(c.type);
    KostantReport r = kostant_check(rs, c.p, Weight(static_cast<std::size_t>(rs.rank())));
    long long order = static_cast<long long>(weyl_group(rs).size());
    v.check(r.hypothesis_ok && r.ok && r.total == order, std::string(c.type) + " " + std::to_string(r.total));
  }
  return v;
}

Verdict hodge_and_chow() {
  Verdict v;
  for (auto [type, p, order] : std::vector<std::tuple<const char*, std::uint32_t, long long>>{
           {"A2", 5, 6}, {"B2", 5, 8}, {"G2", 7, 12}}) {
    RootSystem rs = RootSystem::parse(type);
    HodgeReport h = hodge_dims_check(rs, p);
    CoinvariantAlgebra A = coinvariant_algebra(rs, p);
    bool chow = poly_trim(A.quotient.poincare()) == poly_trim(rs.length_polynomial()) &&
                static_cast<long long>(A.quotient.total_dim()) == order;
    v.check(h.ok && chow, std::string(type) + " hodge " + (h.ok ? "ok" : h.detail) + ", chow total " +
                              std::to_string(A.quotient.total_dim()));
  }
  return v;
}

Verdict semidirect() {
  Verdict v;
  for (const char* type : {"A1", "A2"}) {
    SemidirectReport r = semidirect_degeneration_check(build_chevalley(RootSystem::parse(type)), 5);
    v.check(r.ok, std::string(type) + " " + poly_str(r.lhs));
  }
  return v;
}

Verdict moy_prasad() {
  Verdict v;
  for (int n : {2, 3})
    for (std::uint32_t p : {5u, 7u}) {
      std::vector<MPReport> reps = {verify_omega_values(n, p, 12), verify_pvaluation_axioms(n, p, 12, 1000, 11),
                                    verify_symbol_bracket(n, p, 12, 500, 12), verify_epsilon(n, p, 12, 1000, 13)};
      bool ok = true;
      long long trials = 0, flags = 0;
      for (const auto& r : reps) {
        ok = ok && r.ok();
        trials += r.trials;
        flags += r.precision_flags;
      }
      // at least 1000 random elements for the p-valuation axioms
      ok = ok && reps[1].trials >= 1000;
      v.check(ok, "SL" + std::to_string(n) + " p=" + std::to_string(p) + " " + std::to_string(trials) + " trials, " +
                      std::to_string(flags) + " flags");
    }
  MPReport sl2 = verify_sl2_commutator(5, 12);
  v.check(sl2.ok(), "explicit SL2 commutator");
  return v;
}

Verdict morava() {
  Verdict v;
  for (int f : {1, 2}) {
    Poly got = poly_trim(morava_cohomology(2, 5, f).poincare());
    v.check(got == poly_pow({1, 1, 0, 1, 1}, f), "n=2 f=" + std::to_string(f) + " " + poly_str(got));
  }
  BaseChangeReport bc = verify_base_change(2, 5, 1);
  v.check(bc.ok && bc.exhaustive, "base change over F25 (" + std::to_string(bc.pairs_checked) + " pairs)");
  Poly got = poly_trim(morava_cohomology(3, 7, 1).poincare());
  v.check(got == poly_mul({1, 1}, exterior_poincare({1, 2})), "n=3 p=7 " + poly_str(got));
  return v;
}

Verdict weight_lemmas() {
  Verdict v;
  for (const auto& c : std::vector<Case>{{"A1", 5}, {"A2", 5}, {"A2", 7}}) {
    WeightLemmaReport r = check_weight_lemma(RootSystem::parse(c.type), c.p, 1, c.p - 1);
    v.check(r.hypothesis_ok && r.holds, std::string(c.type) + " p=" + std::to_string(c.p));
  }
  for (int n : {2, 3}) {
    NonsplitWeightReport r = check_nonsplit_weight_lemma(n, 5, 1);
    v.check(r.hypothesis_ok && r.holds && r.routes_agree, "nonsplit n=" + std::to_string(n));
  }
  return v;
}

bool epsilon_linear(const GradedLie& tg) {
  for (std::size_t i = 0; i < tg.dim(); ++i)
    for (std::size_t j = 0; j < tg.dim(); ++j) {
      auto ei = tg.epsilon(i);
      if (!ei || !tg.bracket_defined(*ei, j)) continue;
      FpVec rhs;
      for (const auto& t : tg.bracket(i, j)) {
        auto et = tg.epsilon(t.index);
        if (!et) return false;
        rhs.push_back({*et, t.coeff});
      }
      std::sort(rhs.begin(), rhs.end(), [](const FpTerm& a, const FpTerm& b) { return a.index < b.index; });
      if (tg.bracket(*ei, j) != rhs) return false;
    }
  return true;
}

Verdict structural() {
  Verdict v;
  bool jac = true;
  for (const char* t : {"A3", "B3", "C3", "D4", "G2", "F4"}) {
    StructLie L = build_chevalley(RootSystem::parse(t));
    jac = jac && !jacobi_violation(L) && !jacobi_violation(L, 5);
  }
  jac = jac && !jacobi_violation(build_gl(3));
  v.check(jac, "Jacobi over Z and F5");

  bool dsq = true, grading = true, eps = true, order = true;
  for (const auto& c : std::vector<Case>{{"A2", 5}, {"B2", 7}, {"G2", 11}}) {
    StructLie L = build_chevalley(RootSystem::parse(c.type));
    FiniteGradedLie gb = build_gbar(L, c.p);
    grading = grading && gb.check_grading().ok && gb.check_jacobi().ok;
    CEComplex C = ce_complex(gb, trivial_module(gb, zero_of(gb)), WeightFilter::all());
    dsq = dsq && check_d_squared(C).ok;
    eps = eps && epsilon_linear(build_tilde_g(L, c.p)) && epsilon_linear(build_tilde_g(L, c.p, 2));
    CohomologyTable ref = cohomology_dims(C);
    std::vector<int> perm(gb.dim());
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(c.p);
    std::shuffle(perm.begin(), perm.end(), rng);
    FiniteGradedLie q = gb.permuted(perm);
    order = order && cohomology_dims(ce_complex(q, trivial_module(q, zero_of(q)), WeightFilter::all())).dims == ref.dims;
  }
  v.check(dsq, "d^2 = 0 on all blocks");
  v.check(grading, "grading and weights additive");
  v.check(eps, "epsilon-linear");
  v.check(order, "basis-order invariant");

  StructLie g2 = build_chevalley(RootSystem('G', 2));
  bool det = gbar_cohomology(g2, 11).to_json() == gbar_cohomology(g2, 11).to_json() &&
             verify_epsilon(3, 7, 12, 200, 5).to_json() == verify_epsilon(3, 7, 12, 200, 5).to_json();
  v.check(det, "byte-identical reruns");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"main-theorem dimension table", main_table},
      {"ring structure", ring_structure},
      {"oracle cross-validation", cross_validation},
      {"Kostant", kostant},
      {"Hodge/Chow dimensions", hodge_and_chow},
      {"semidirect degeneration", semidirect},
      {"Moy-Prasad group-level suite", moy_prasad},
      {"Morava", morava},
      {"weight lemmas", weight_lemmas},
      {"structural properties", structural},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.ok = false;
      v.notes.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line << (v.ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << " [";
    for (std::size_t k = 0; k < v.notes.size(); ++k) line << (k ? "; " : "") << v.notes[k];
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", secs);
    line << "] (" << buf << " s)";
    std::cout << line.str() << std::endl;
    failed += !v.ok;
  }
  std::cout << (failed ? "FAILED " + std::to_string(failed) + " of " : "PASSED all ")
            << criteria.size() << " criteria" << std::endl;
  return failed ? 1 : 0;
}
