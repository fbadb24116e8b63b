#pragma once

// Checks of the periodicity results on finite resolution prefixes, plus a
// seeded random campaign over small monomial and binomial ideals.

#include <burch/invariants.hpp>
#include <burch/report.hpp>
#include <burch/resolution.hpp>

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace burch {

inline constexpr int kDefaultWindow = 4;
// explicit bound in the gb >= 2 periodicity argument: D_v ⊇ BI^bd for v >= 6
inline constexpr int kBig1Onset = 6;
// offset in the untwisting argument: D_v ⊇ N for v >= j + 5
inline constexpr int kTwistOffset = 5;

namespace detail {

/// Entry ideals E_j (each containing I) for every matrix of the prefix.
inline std::vector<Ideal> entry_ideals(const Resolution& res) {
  std::vector<Ideal> out;
  for (int j = res.first(); j <= res.last(); ++j) out.push_back(entry_ideal(res.A(j), res.ideal()));
  return out;
}

inline Json ideals_mod_json(const std::vector<Ideal>& v, const Ideal& I) {
  Json a = Json::array();
  for (const auto& e : v) a.push_back(ideal_mod_json(e, I));
  return a;
}

inline bool has_unit_entry(const GradedMatrix& a) {
  for (const auto& col : a.columns())
    for (const auto& e : col)
      if (!e.is_zero() && e.constant_coef() != 0) return true;
  return false;
}

inline std::string ideal_str(const Ideal& a, const Ideal& I) {
  return to_string(Ideal(a.ring(), minimal_generators_mod(a, I)));
}

}  // namespace detail

/// Eventual constancy or 2-periodicity of the entry ideals over the last
/// `window` steps.
inline Report periodicity_report(const Resolution& res, int window = kDefaultWindow) {
  Report rep;
  rep.subject = Subject::PERIODICITY;
  rep.prefix_length = res.size();
  const Ideal& I = res.ideal();
  auto E = detail::entry_ideals(res);
  rep.require("prefix has at least window + 2 matrices", res.size() >= window + 2,
              std::to_string(res.size()) + " matrices, window " + std::to_string(window));
  rep.data["first_index"] = res.first();
  rep.data["entry_ideals"] = detail::ideals_mod_json(E, I);
  const int n = static_cast<int>(E.size());
  if (!rep.preconditions_met()) return rep;
  int run1 = 1;
  while (run1 < n && E[static_cast<std::size_t>(n - 1 - run1)] == E[static_cast<std::size_t>(n - 1)]) ++run1;
  if (run1 >= window) {
    rep.conclusion = Conclusion::VERIFIED;
    rep.data["period"] = 1;
    rep.data["onset"] = res.first() + n - run1;
    rep.data["stable_ideal"] = ideal_mod_json(E.back(), I);
    return rep;
  }
  int run2 = 2;
  while (run2 < n && E[static_cast<std::size_t>(n - 1 - run2)] == E[static_cast<std::size_t>(n - 1 - run2 + 2)]) ++run2;
  if (run2 >= window) {
    rep.conclusion = Conclusion::VERIFIED;
    rep.data["period"] = 2;
    rep.data["onset"] = res.first() + n - run2;
    rep.data["stable_ideals"] = Json::array({ideal_mod_json(E[static_cast<std::size_t>(n - 2)], I),
                                             ideal_mod_json(E.back(), I)});
    return rep;
  }
  rep.data["note"] = "no constant or 2-periodic tail in the window";
  return rep;
}

/// D_m = E_m + E_{m+1} stabilizes at some BI^q with q <= bd(I), when gb(I) >= 2.
inline Report verify_big1(const Ideal& I, const PresentedModule& M, int steps = 8, int window = kDefaultWindow,
                          int max_iter = 50) {
  Report rep;
  rep.subject = Subject::BIG1;
  BurchChain chain = bi_chain(I, max_iter);
  bool gb2 = chain.gb.is_infinite() || chain.gb.value() >= 2;
  rep.require("gb(I) >= 2", gb2, chain.gb.str());
  rep.data["gb"] = to_json(chain.gb);
  rep.data["bd"] = chain.bd;
  rep.data["chain_status"] = to_string(chain.status);
  Resolution res = resolve(I, M, steps);
  rep.prefix_length = res.size();
  bool nonfree = !res.terminated_at().has_value();
  rep.require("M has no finite resolution in the prefix", nonfree,
              nonfree ? "" : "F ends at " + std::to_string(*res.terminated_at()));
  auto E = detail::entry_ideals(res);
  std::vector<Ideal> D;
  for (std::size_t k = 0; k + 1 < E.size(); ++k) D.push_back(sum(E[k], E[k + 1]));
  rep.data["first_index"] = res.first();
  rep.data["sums"] = detail::ideals_mod_json(D, I);
  if (!rep.preconditions_met()) return rep;

  // chain ideals BI^0..BI^bd, each taken modulo I
  std::vector<Ideal> targets;
  for (int q = 0; q <= chain.bd && q <= chain.length(); ++q) targets.push_back(sum(chain.bi(q), I));
  const Ideal& floor_ideal = targets.back();
  Json fails = Json::array();
  for (std::size_t k = 0; k < D.size(); ++k) {
    int v = res.first() + static_cast<int>(k);
    if (v >= kBig1Onset && !D[k].contains(floor_ideal)) fails.push_back(v);
  }
  if (!fails.empty()) {
    rep.data["containment_failures"] = fails;
    rep.data["note"] = "D_v does not contain BI^bd for some v >= 6";
    rep.conclusion = Conclusion::FALSIFIED;
    return rep;
  }
  const int n = static_cast<int>(D.size());
  if (n < window) {
    rep.data["note"] = "prefix shorter than window";
    return rep;
  }
  int run = 1;
  while (run < n && D[static_cast<std::size_t>(n - 1 - run)] == D.back()) ++run;
  if (run < window) {
    rep.data["note"] = "tail not constant";
    return rep;
  }
  rep.data["onset"] = res.first() + n - run;
  rep.data["stable_ideal"] = ideal_mod_json(D.back(), I);
  for (int q = 0; q < static_cast<int>(targets.size()); ++q) {
    if (D.back() == targets[static_cast<std::size_t>(q)]) {
      rep.data["q"] = q;
      rep.conclusion = Conclusion::VERIFIED;
      return rep;
    }
  }
  rep.data["note"] = "constant tail is not BI^q for q <= bd";
  return rep;
}

/// Column-wise duality: if I_1(c_m) ⊄ BI_N(I) and I_1(c_m) ⊆ N then N ⊆ E_{m+2a}
/// for a >= 1; realizers x* of column entries lie in E_{m+2a-1}.
inline Report verify_dual2(const Ideal& I, const Resolution& res, const Ideal& N, int m, int c) {
  Report rep;
  rep.subject = Subject::DUAL2;
  rep.prefix_length = res.size();
  rep.data["m"] = m;
  rep.data["column"] = c;
  if (!res.has(m) || c < 0 || c >= res.A(m).cols()) {
    rep.require("valid column", false, "A_" + std::to_string(m) + " column " + std::to_string(c));
    return rep;
  }
  Ideal col = column_ideal(res.A(m), c, I);
  Ideal NI = sum(N, I);
  Ideal B = sum(bi_n(I, N), I);
  rep.data["column_ideal"] = ideal_mod_json(col, I);
  rep.data["N"] = ideal_mod_json(N, I);
  rep.require("I_1(c_m) not in BI_N(I)", !B.contains(col), detail::ideal_str(B, I));
  rep.require("I_1(c_m) in N", NI.contains(col));
  if (!rep.preconditions_met()) return rep;

  bool ok = true;
  Json even = Json::array();
  for (int j = m + 2; j <= res.last(); j += 2) {
    bool in = entry_ideal(res.A(j), I).contains(NI);
    even.push_back({{"step", j}, {"contains_N", in}});
    ok = ok && in;
  }
  rep.data["even_steps"] = even;

  // realizing pairs (x*, x) with x an entry of the column outside BI_N(I)
  Json odd = Json::array();
  auto stars = realization_witnesses(I, N);
  for (const auto& x : res.A(m).column(c)) {
    if (x.is_zero() || B.contains(x)) continue;
    for (const auto& xs : stars.elements) {
      if (!realizes(I, xs, x)) continue;
      for (int j = m + 1; j <= res.last(); j += 2) {
        bool in = entry_ideal(res.A(j), I).contains(xs);
        odd.push_back({{"x", to_string(x)}, {"x_star", to_string(xs)}, {"step", j}, {"contains_x_star", in}});
        ok = ok && in;
      }
    }
  }
  rep.data["odd_steps"] = odd;
  rep.conclusion = ok ? Conclusion::VERIFIED : Conclusion::FALSIFIED;
  return rep;
}

/// A column c of A_m whose own entry ideal N meets the dual2 hypotheses.
struct DualTrigger {
  int m = 0;
  int c = 0;
  Ideal N;
};

namespace detail {

/// A column c of A_m is a trigger when some entry x lies outside
/// BI_{I_1(c)}(I); then J = I_1(c) meets the hypotheses of verify_dual2.
inline std::optional<DualTrigger> find_column_trigger(const Ideal& I, const Resolution& res, int max_cols = 64) {
  std::set<std::string> seen;
  for (int m = std::max(1, res.first()); m <= res.last(); ++m) {
    const auto& A = res.A(m);
    for (int c = 0; c < A.cols() && c < max_cols; ++c) {
      if (column_is_zero(A, c)) continue;
      std::vector<Polynomial> entries;
      for (const auto& e : A.column(c))
        if (!e.is_zero()) entries.push_back(e);
      Ideal J(I.ring(), entries);
      std::string key = to_string(Ideal(I.ring(), minimal_generators(J)));
      if (!seen.insert(key).second) continue;
      if (J.is_unit()) continue;
      Ideal B = bi_n(I, J);
      for (const auto& x : entries)
        if (!sum(B, I).contains(x)) return DualTrigger{m, c, J};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Burch positivity somewhere in the prefix forces an infinite resolution.
inline Report verify_dualpos(const Ideal& I, const Resolution& res) {
  Report rep;
  rep.subject = Subject::DUALPOS;
  rep.prefix_length = res.size();
  std::optional<int> trigger;
  std::string how;
  for (int j = std::max(1, res.first()); j <= res.last() && !trigger; ++j) {
    const auto& A = res.A(j);
    if (A.cols() == 0 || A.is_zero()) continue;
    Ideal E = entry_ideal(A, I);
    if (E.is_unit()) continue;
    Length b = burch_n(I, E);
    if (b.positive()) {
      trigger = j;
      how = "Burch_{I_1(A_" + std::to_string(j) + ")}(I) = " + b.str();
    }
  }
  if (!trigger) {
    if (auto t = detail::find_column_trigger(I, res)) {
      trigger = t->m;
      how = "column " + std::to_string(t->c) + " of A_" + std::to_string(t->m);
    }
  }
  rep.require("trigger", trigger.has_value(), how);
  if (!trigger) return rep;
  rep.data["trigger_step"] = *trigger;
  Json zeros = Json::array();
  for (int j = *trigger + 1; j <= res.last(); ++j)
    if (res.A(j).cols() == 0) zeros.push_back(j);
  rep.data["zero_steps"] = zeros;
  rep.conclusion = zeros.empty() ? Conclusion::VERIFIED : Conclusion::FALSIFIED;
  return rep;
}

struct SharedRealizer {
  int i = 0;
  int j = 0;
  Polynomial alpha;
};

/// For each variable x_i, some α and j ≠ i with α x_i and α x_j minimal
/// generators of I. α is searched among minimal generators of (I:x_i) ∩ (I:x_j).
inline std::vector<std::optional<SharedRealizer>> shared_realizers(const Ideal& I) {
  const RingPtr& ring = I.ring();
  const int n = ring->nvars();
  std::vector<std::optional<SharedRealizer>> out(static_cast<std::size_t>(n));
  std::vector<Ideal> col;
  for (int i = 0; i < n; ++i) col.push_back(colon(I, Polynomial::variable(ring, i)));
  for (int i = 0; i < n; ++i) {
    Polynomial xi = Polynomial::variable(ring, i);
    for (int j = 0; j < n && !out[static_cast<std::size_t>(i)]; ++j) {
      if (j == i) continue;
      Polynomial xj = Polynomial::variable(ring, j);
      Ideal both = intersect(col[static_cast<std::size_t>(i)], col[static_cast<std::size_t>(j)]);
      for (const auto& a : minimal_generators(both)) {
        if (is_minimal_generator(I, a * xi) && is_minimal_generator(I, a * xj)) {
          out[static_cast<std::size_t>(i)] = SharedRealizer{i, j, a};
          break;
        }
      }
    }
  }
  return out;
}

/// Shared realizers for all variables plus, for each x_j, a column with
/// (0) ⊊ I_1(c) ⊆ (x_j) imply E_a = 𝔪 eventually.
inline Report verify_big2(const Ideal& I, const PresentedModule& M, int steps = 6, int window = kDefaultWindow) {
  Report rep;
  rep.subject = Subject::BIG2;
  const RingPtr& ring = I.ring();
  const int n = ring->nvars();
  auto pairs = shared_realizers(I);
  Json pj = Json::array();
  bool all_pairs = true;
  for (int i = 0; i < n; ++i) {
    const auto& p = pairs[static_cast<std::size_t>(i)];
    if (p)
      pj.push_back({{"variable", ring->vars[static_cast<std::size_t>(i)]},
                    {"partner", ring->vars[static_cast<std::size_t>(p->j)]},
                    {"alpha", to_string(p->alpha)}});
    else {
      pj.push_back({{"variable", ring->vars[static_cast<std::size_t>(i)]}, {"partner", nullptr}, {"alpha", nullptr}});
      all_pairs = false;
    }
  }
  rep.data["shared_realizers"] = pj;
  std::string missing;
  for (int i = 0; i < n; ++i)
    if (!pairs[static_cast<std::size_t>(i)]) missing += (missing.empty() ? "" : ",") + ring->vars[static_cast<std::size_t>(i)];
  rep.require("shared realizer for every variable", all_pairs, missing.empty() ? "" : "missing: " + missing);

  Resolution res = resolve(I, M, steps);
  rep.prefix_length = res.size();
  Json cj = Json::array();
  bool all_cols = true;
  int latest = 0;
  for (int v = 0; v < n; ++v) {
    Ideal xv(ring, {Polynomial::variable(ring, v)});
    Ideal xvI = sum(xv, I);
    std::optional<std::pair<int, int>> hit;
    for (int m = std::max(1, res.first()); m <= res.last() && !hit; ++m) {
      const auto& A = res.A(m);
      for (int c = 0; c < A.cols(); ++c) {
        if (column_is_zero(A, c)) continue;
        bool inside = true;
        for (const auto& e : A.column(c))
          if (!e.is_zero() && !xvI.contains(e)) inside = false;
        if (inside) {
          hit = std::make_pair(m, c);
          break;
        }
      }
    }
    if (hit) {
      cj.push_back({{"variable", ring->vars[static_cast<std::size_t>(v)]}, {"step", hit->first}, {"column", hit->second}});
      latest = std::max(latest, hit->first);
    } else {
      cj.push_back({{"variable", ring->vars[static_cast<std::size_t>(v)]}, {"step", nullptr}, {"column", nullptr}});
      all_cols = false;
    }
  }
  rep.data["columns"] = cj;
  rep.require("column inside (x_j) for every variable", all_cols);
  auto E = detail::entry_ideals(res);
  rep.data["first_index"] = res.first();
  rep.data["entry_ideals"] = detail::ideals_mod_json(E, I);
  if (!rep.preconditions_met()) return rep;

  Ideal m = sum(Ideal::maximal(ring), I);
  // untwisting bound: E_v + E_{v+1} ⊇ 𝔪 once v >= latest + 5
  Json fails = Json::array();
  for (int v = latest + kTwistOffset; v + 1 <= res.last(); ++v)
    if (!sum(E[static_cast<std::size_t>(v - res.first())], E[static_cast<std::size_t>(v + 1 - res.first())]).contains(m))
      fails.push_back(v);
  if (!fails.empty()) {
    rep.data["containment_failures"] = fails;
    rep.conclusion = Conclusion::FALSIFIED;
    return rep;
  }
  const int cnt = static_cast<int>(E.size());
  int tail = 0;
  while (tail < cnt && E[static_cast<std::size_t>(cnt - 1 - tail)] == m) ++tail;
  rep.data["maximal_tail"] = tail;
  if (tail >= std::min(window, cnt)) {
    rep.data["onset"] = res.first() + cnt - tail;
    rep.conclusion = Conclusion::VERIFIED;
  } else {
    rep.data["note"] = "entry ideals not yet maximal on the tail";
  }
  return rep;
}

/// Condition checker for untwisting. VERIFIED means the hypotheses
/// were found, which gives E_v + E_{v+1} ⊇ N for v >= j + 5.
inline Report check_twist1_conditions(const Ideal& I, const Ideal& N, int steps = 6) {
  Report rep;
  rep.subject = Subject::TWIST1;
  const RingPtr& ring = I.ring();
  auto gens = minimal_generators_mod(N, I);
  Json table = Json::array();
  bool positive = !gens.empty();
  for (const auto& g : gens) {
    Ideal gi(ring, {g});
    Length b = burch_n(I, gi);
    table.push_back({{"generator", to_string(g)}, {"burch", to_json(b)}});
    positive = positive && b.positive();
  }
  rep.data["generator_burch"] = table;
  rep.require("Burch_(n)(I) >= 1 for each minimal generator n", positive);

  Ideal mx = Ideal::maximal(ring);
  Json qs = Json::array();
  bool every_q = !gens.empty();
  int prefix = 0;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const Polynomial& g = gens[k];
    std::vector<Polynomial> qg;
    for (std::size_t o = 0; o < gens.size(); ++o)
      if (o != k) qg.push_back(gens[o]);
    for (int i = 0; i < ring->nvars(); ++i) qg.push_back(Polynomial::variable(ring, i) * g);
    Ideal Q(ring, qg);
    Json entry;
    entry["removed"] = to_string(g);
    entry["Q"] = ideal_mod_json(Q, I);
    Ideal gi(ring, {g});
    auto stars = realization_witnesses(I, gi);
    entry["realizers"] = polys_json(stars.elements);
    std::optional<std::pair<int, int>> found;
    if (!sum(Q, I).is_unit() && !sum(Q, I).contains(g) && !stars.empty()) {
      Resolution rq = resolve(I, PresentedModule::of_ideal(Q), steps);
      prefix = std::max(prefix, rq.size());
      for (int i = std::max(1, rq.first()); i <= rq.last() && !found; ++i) {
        const auto& B = rq.A(i);
        for (int c = 0; c < B.cols() && !found; ++c) {
          int nz = 0;
          Polynomial only(ring);
          for (const auto& e : B.column(c))
            if (!e.is_zero()) {
              ++nz;
              only = e;
            }
          if (nz != 1) continue;
          for (const auto& s : stars.elements)
            if (only.monic() == s) found = std::make_pair(i, c);
        }
      }
    }
    if (found) {
      entry["step"] = found->first;
      entry["column"] = found->second;
    } else {
      entry["step"] = nullptr;
      every_q = false;
    }
    qs.push_back(entry);
  }
  rep.prefix_length = prefix;
  rep.data["subideals"] = qs;
  rep.data["coverage"] = "monomial colength-one subideals only";
  rep.data["bound_offset"] = kTwistOffset;
  rep.require("[n*]_q column found for every colength-one Q", every_q);
  rep.conclusion = rep.preconditions_met() ? Conclusion::VERIFIED : Conclusion::INCONCLUSIVE;
  return rep;
}

struct FuzzConfig {
  std::uint64_t seed = 1;
  int count = 100;
  int nvars = 3;
  int max_degree = 3;
  int max_gens = 4;
  int binomial_percent = 0;
  int steps = 4;
};

struct FuzzSummary {
  std::vector<Report> reports;
  std::map<std::string, std::map<std::string, int>> counts;
  int cases = 0;
  int skipped = 0;

  int falsified() const {
    int n = 0;
    for (const auto& [s, m] : counts) {
      auto it = m.find("FALSIFIED");
      if (it != m.end()) n += it->second;
    }
    return n;
  }
};

namespace detail {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  int below(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

  Monomial monomial(int nvars, int deg) {
    std::vector<int> e(static_cast<std::size_t>(nvars), 0);
    for (int k = 0; k < deg; ++k) ++e[static_cast<std::size_t>(below(nvars))];
    return Monomial::from_exponents(e);
  }

  Ideal ideal(const RingPtr& ring, const FuzzConfig& cfg) {
    const int n = ring->nvars();
    int k = 1 + below(cfg.max_gens);
    std::vector<Polynomial> g;
    for (int i = 0; i < k; ++i) {
      int d = 1 + below(cfg.max_degree);
      Polynomial f = Polynomial::monomial(ring, monomial(n, d));
      if (below(100) < cfg.binomial_percent) {
        Coef c = static_cast<Coef>(1 + below(static_cast<int>(std::min<std::uint32_t>(ring->field.p - 1, 100))));
        f = f - Polynomial::monomial(ring, monomial(n, d)).scaled(c);
      }
      if (!f.is_zero()) g.push_back(f);
    }
    return Ideal(ring, g);
  }

 private:
  std::mt19937_64 rng_;
};

inline void tally(FuzzSummary& s, Report r, std::uint64_t seed) {
  r.seed = seed;
  s.counts[to_string(r.subject)][to_string(r.conclusion)] += 1;
  if (r.conclusion == Conclusion::FALSIFIED) s.reports.push_back(std::move(r));
}

}  // namespace detail

/// Chain monotonicity, duality and column-wise duality on random inputs.
/// Each case i uses seed + i, so runs are reproducible case by case.
inline FuzzSummary fuzz(const RingPtr& ring, const FuzzConfig& cfg) {
  FuzzSummary s;
  for (int i = 0; i < cfg.count; ++i) {
    std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    detail::Sampler smp(seed);
    Ideal I = smp.ideal(ring, cfg);
    Ideal N = smp.ideal(ring, cfg);
    ++s.cases;
    if (I.is_zero() || I.is_unit() || N.is_zero() || N.is_unit() || I.contains(N)) {
      ++s.skipped;
      continue;
    }
    // chain monotonicity
    {
      Report r;
      r.subject = Subject::PERIODICITY;
      BurchChain c = bi_chain(I, 8);
      bool mono = true;
      for (int j = 1; j <= c.length(); ++j) mono = mono && c.bi(j - 1).contains(c.bi(j));
      r.require("chain computed", true, std::to_string(c.length()) + " steps");
      r.data["check"] = "chain monotonicity";
      r.conclusion = mono ? Conclusion::VERIFIED : Conclusion::FALSIFIED;
      r.prefix_length = c.length();
      detail::tally(s, std::move(r), seed);
    }
    detail::tally(s, duality_check(I, N), seed);
    Length b = burch_n(I, N);
    if (!b.positive()) continue;
    Resolution res = resolve(I, PresentedModule::of_ideal(N), cfg.steps);
    Ideal B = sum(bi_n(I, N), I);
    Ideal NI = sum(N, I);
    for (int m = res.first(); m <= res.last(); ++m) {
      const auto& A = res.A(m);
      for (int c = 0; c < A.cols(); ++c) {
        if (column_is_zero(A, c)) continue;
        Ideal col = column_ideal(A, c, I);
        if (!NI.contains(col) || B.contains(col)) continue;
        detail::tally(s, verify_dual2(I, res, N, m, c), seed);
        m = res.last();
        break;
      }
    }
  }
  return s;
}

inline Json to_json(const FuzzSummary& s) {
  Json j;
  j["cases"] = s.cases;
  j["skipped"] = s.skipped;
  Json counts = Json::object();
  for (const auto& [subj, m] : s.counts) {
    Json o = Json::object();
    for (const auto& [k, v] : m) o[k] = v;
    counts[subj] = o;
  }
  j["counts"] = counts;
  j["falsified"] = Json::array();
  for (const auto& r : s.reports) j["falsified"].push_back(to_json(r));
  return j;
}

}  // namespace burch
