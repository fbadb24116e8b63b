#pragma once

// Seeded randomized properties, shared by the property test suite and the
// acceptance run. Monomial cases are checked against oracle.hpp; binomial
// cases against containments that hold for every ideal.

#include <burch/analysis.hpp>

#include "oracle.hpp"

#include <functional>
#include <string>
#include <vector>

namespace props {

using namespace burch;

constexpr std::uint64_t kSeed = 20261018;

struct Outcome {
  explicit Outcome(std::string n) : name(std::move(n)) {}

  std::string name;
  int cases = 0;      // inputs that exercised the property
  int failures = 0;
  std::vector<std::string> messages;  // first few failures

  void check(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    if (messages.size() < 5) messages.push_back(what);
  }
};

inline RingPtr xyz() { return make_ring(32003, {"x", "y", "z"}); }

inline Ideal random_ideal(detail::Sampler& s, const RingPtr& R, int max_degree, int max_gens, int binomials) {
  FuzzConfig cfg;
  cfg.max_degree = max_degree;
  cfg.max_gens = max_gens;
  cfg.binomial_percent = binomials;
  for (;;) {
    Ideal I = s.ideal(R, cfg);
    if (!I.is_zero() && !I.is_unit()) return I;
  }
}

inline bool proper(const Ideal& a) { return !a.is_zero() && !a.is_unit(); }

// (a) ideal operations and BI_N on monomial ideals
inline Outcome monomial_operations(int trials = 200) {
  Outcome o("monomial operations match oracle");
  auto R = xyz();
  std::mt19937_64 rng(kSeed);
  for (int trial = 0; trial < trials; ++trial) {
    auto a = oracle::random_ideal(rng, 3, 4, 4);
    auto b = oracle::random_ideal(rng, 3, 4, 4);
    Ideal I = oracle::to_ideal(R, a), N = oracle::to_ideal(R, b);
    std::string tag = to_string(I) + " / " + to_string(N);
    ++o.cases;
    o.check(oracle::same(colon(I, N), oracle::colon(a, b)), "colon " + tag);
    o.check(oracle::same(intersect(I, N), oracle::intersect(a, b)), "intersect " + tag);
    o.check(oracle::same(sum(I, N), oracle::sum(a, b)), "sum " + tag);
    o.check(oracle::same(product(I, N), oracle::product(a, b)), "product " + tag);
    auto g = I.gens();
    g.insert(g.end(), N.gens().begin(), N.gens().end());
    o.check(minimal_generators(Ideal(R, g)).size() == oracle::sum(a, b).gens.size(), "mingens " + tag);
    o.check(oracle::same(bi_n(I, N), oracle::bi_n(a, b)), "bi_n " + tag);

    auto ref = oracle::burch_n(a, b);
    auto got = burch_n(I, N);
    if (N == Ideal::maximal(R) && !is_depth_zero(I))
      o.check(got == 0, "positive-depth convention " + tag);
    else if (ref)
      o.check(got.is_finite() && got.value() == *ref, "burch_n " + tag);
    else
      o.check(got.is_infinite(), "burch_n infinite " + tag);
  }
  return o;
}

// (b) BI^{j+1} ⊆ BI^j, and 𝔫² ⊆ BI ⊆ 𝔫 for depth zero
inline Outcome chain_monotone(int trials = 200) {
  Outcome o("chain monotone, n^2 in BI in n");
  auto R = xyz();
  detail::Sampler s(kSeed + 1);
  auto n = Ideal::maximal(R);
  auto n2 = power(n, 2);
  for (int trial = 0; trial < trials; ++trial) {
    Ideal I = random_ideal(s, R, 3, 4, trial % 2 ? 50 : 0);
    std::string tag = to_string(I);
    auto c = bi_chain(I, 8);
    for (int j = 1; j <= c.length(); ++j)
      o.check(c.bi(j - 1).contains(c.bi(j)), "BI^" + std::to_string(j) + " not in BI^" + std::to_string(j - 1) + " " + tag);
    Ideal B = bi_n(I, n);
    o.check(B.contains(n2), "n^2 not in BI " + tag);
    if (is_depth_zero(I)) {
      ++o.cases;
      o.check(n.contains(B), "BI not in n " + tag);
    }
  }
  return o;
}

// (c) Burch_N(I) > 0 implies Burch_{(I:N)}(I) > 0
inline Outcome positivity_to_colon(int trials = 300) {
  Outcome o("Burch_N > 0 implies Burch_(I:N) > 0");
  auto R = xyz();
  detail::Sampler s(kSeed + 2);
  for (int trial = 0; trial < trials; ++trial) {
    Ideal I = random_ideal(s, R, 3, 4, trial % 3 ? 0 : 50);
    Ideal N = random_ideal(s, R, 2, 3, 0);
    Ideal C = colon(I, N);
    if (!proper(C) || !burch_n(I, N).positive()) continue;
    ++o.cases;
    o.check(burch_n(I, C).positive(), to_string(I) + " / " + to_string(N));
  }
  return o;
}

// (d) complexes with entries in 𝔪, exact in low degrees against dense algebra
inline Outcome resolutions_exact(int trials = 80) {
  Outcome o("resolutions exact and minimal");
  auto R = xyz();
  auto m = Ideal::maximal(R);
  std::mt19937_64 rng(kSeed + 3);
  for (int trial = 0; trial < trials; ++trial) {
    auto a = oracle::random_ideal(rng, 3, 3, 4);
    auto b = oracle::random_ideal(rng, 3, 2, 3);
    Ideal I = oracle::to_ideal(R, a), N = oracle::to_ideal(R, b);
    std::string tag = to_string(I) + " / " + to_string(N);
    auto res = resolve(I, PresentedModule::of_ideal(N), 4);
    o.check(check_complex(res), "not a complex " + tag);
    for (int j = std::max(1, res.first()); j <= res.last(); ++j)
      o.check(m.contains(entry_ideal(res.A(j), I)), "unit entry in A_" + std::to_string(j) + " " + tag);
    for (int j = res.first(); j < res.last(); ++j) {
      const auto& A = res.A(j);
      if (A.cols() == 0) continue;
      int lo = *std::min_element(A.source().twists.begin(), A.source().twists.end());
      for (int d = lo; d <= lo + 2; ++d) {
        ++o.cases;
        o.check(oracle::exact_in_degree(A, res.A(j + 1), a, d),
                "not exact at step " + std::to_string(j) + " degree " + std::to_string(d) + " " + tag);
      }
    }
  }
  return o;
}

// (e) 𝔫 J' ⊆ BI_N(I) ⊆ J' with J' = (I : (I : N))
inline Outcome double_colon_sandwich(int trials = 300) {
  Outcome o("nJ' in BI_N in J'");
  auto R = xyz();
  detail::Sampler s(kSeed + 4);
  auto n = Ideal::maximal(R);
  for (int trial = 0; trial < trials; ++trial) {
    Ideal I = random_ideal(s, R, 3, 4, trial % 2 ? 60 : 0);
    Ideal N = random_ideal(s, R, 2, 3, trial % 4 == 1 ? 50 : 0);
    std::string tag = to_string(I) + " / " + to_string(N);
    Ideal J = double_colon(I, N);
    Ideal B = bi_n(I, N);
    ++o.cases;
    o.check(J.contains(B), "BI_N not in J' " + tag);
    o.check(B.contains(product(n, J)), "nJ' not in BI_N " + tag);
  }
  return o;
}

// (f) whenever a column triggers column duality, the even and odd steps hold
inline Outcome column_duality(int trials = 80) {
  Outcome o("column duality when triggered");
  auto R = xyz();
  detail::Sampler s(kSeed + 5);
  // random ideals in three variables rarely have depth zero; adding the cubes forces it
  auto cubes = Ideal::from_strings(R, {"x^3", "y^3", "z^3"});
  for (int trial = 0; trial < trials; ++trial) {
    Ideal I = sum(random_ideal(s, R, 3, 3, trial % 2 ? 50 : 0), cubes);
    if (I.is_unit()) continue;
    auto res = resolve(I, PresentedModule::of_ideal(Ideal::maximal(R)), 6);
    auto t = detail::find_column_trigger(I, res);
    if (!t) continue;
    ++o.cases;
    Report r = verify_dual2(I, res, t->N, t->m, t->c);
    o.check(r.preconditions_met() && r.conclusion == Conclusion::VERIFIED, to_string(I) + ": " + to_json(r).dump());
  }
  return o;
}

inline std::vector<std::function<Outcome()>> all() {
  return {[] { return monomial_operations(); }, [] { return chain_monotone(); },  [] { return positivity_to_colon(); },
          [] { return resolutions_exact(); },   [] { return double_colon_sandwich(); }, [] { return column_duality(); }};
}

}  // namespace props
