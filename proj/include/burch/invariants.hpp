#pragma once

// N-Burch ideals, Burch indices, the iterated chain BI^j and realization sets.

#include <burch/ideal.hpp>
#include <burch/report.hpp>

#include <optional>
#include <vector>

namespace burch {

namespace detail {

inline void require_proper_nonzero(const Ideal& a, const char* what) {
  if (a.is_zero()) throw Error(std::string(what) + " must be nonzero");
  if (a.is_unit()) throw Error(std::string(what) + " must be proper");
}

inline bool is_maximal(const Ideal& a) { return a == Ideal::maximal(a.ring()); }

}  // namespace detail

/// BI_N(I) = 𝔫I : (I : N), as an ideal of S.
inline Ideal bi_n(const Ideal& I, const Ideal& N) {
  require_same_ring(I.ring(), N.ring());
  detail::require_proper_nonzero(I, "I");
  detail::require_proper_nonzero(N, "N");
  return colon(product(Ideal::maximal(I.ring()), I), colon(I, N));
}

/// length(N / (BI_N(I) ∩ N)); zero by convention when N = 𝔫 and S/I has positive depth.
inline Length burch_n(const Ideal& I, const Ideal& N) {
  Ideal b = bi_n(I, N);
  if (detail::is_maximal(N) && !is_depth_zero(I)) return Length(0);
  return colength(N, intersect(b, N));
}

/// The classical Burch index, N = 𝔫.
inline Length burch_index(const Ideal& I) { return burch_n(I, Ideal::maximal(I.ring())); }

struct ChainStep {
  int j = 0;
  Ideal bi;          // BI^j
  Ideal annihilator; // (I : BI^{j-1})
  Length burch;      // Burch^j
};

enum class ChainStatus { STABILIZED, CAPPED };

inline const char* to_string(ChainStatus s) { return s == ChainStatus::STABILIZED ? "STABILIZED" : "CAPPED"; }

struct BurchChain {
  std::vector<ChainStep> steps;
  std::optional<int> first_zero;
  Length gb;
  int bd = 0;
  ChainStatus status = ChainStatus::CAPPED;
  bool depth_zero = true;
  // positive depth: the literal BI^1 need not be the unit ideal
  bool positive_depth_discrepancy = false;

  /// BI^j, with BI^0 = 𝔫.
  Ideal bi(int j) const {
    if (j == 0) return Ideal::maximal(steps.front().bi.ring());
    if (j < 1 || j > static_cast<int>(steps.size())) throw Error("chain index out of range");
    return steps[static_cast<std::size_t>(j - 1)].bi;
  }
  int length() const { return static_cast<int>(steps.size()); }
};

/// Iterates BI^j = BI_{BI^{j-1}}(I) until Burch^j = 0 or max_iter steps.
inline BurchChain bi_chain(const Ideal& I, int max_iter = 50) {
  if (max_iter < 1) throw Error("max_iter must be at least 1");
  detail::require_proper_nonzero(I, "I");
  const RingPtr& ring = I.ring();
  BurchChain c;
  c.depth_zero = is_depth_zero(I);
  Ideal nI = product(Ideal::maximal(ring), I);
  Ideal prev = Ideal::maximal(ring);
  for (int j = 1; j <= max_iter; ++j) {
    ChainStep s;
    s.j = j;
    s.annihilator = colon(I, prev);
    s.bi = colon(nI, s.annihilator);
    if (j == 1 && !c.depth_zero) {
      s.burch = Length(0);
      c.positive_depth_discrepancy = !s.bi.is_unit();
    } else {
      s.burch = colength(prev, intersect(s.bi, prev));
    }
    bool same = s.bi == prev;
    bool zero = s.burch == 0;
    c.steps.push_back(s);
    if (zero) {
      c.first_zero = j;
      c.status = ChainStatus::STABILIZED;
      break;
    }
    if (same) {
      c.status = ChainStatus::STABILIZED;
      break;
    }
    prev = s.bi;
  }
  // gb: max over steps before the first zero (sup over the prefix when none)
  if (c.first_zero && *c.first_zero == 1) {
    c.gb = Length(0);
  } else {
    Length best(0);
    for (const auto& s : c.steps) {
      if (s.burch == 0) break;
      if (s.burch.is_infinite()) {
        best = Length::infinite();
        break;
      }
      if (s.burch.value() > best.value()) best = s.burch;
    }
    c.gb = best;
  }
  c.bd = 0;
  for (const auto& s : c.steps) {
    if (!(s.burch == 1)) break;
    c.bd = s.j;
  }
  return c;
}

struct WitnessSet {
  std::vector<Polynomial> elements;
  bool empty() const { return elements.empty(); }
  std::size_t size() const { return elements.size(); }
};

/// Minimal generators x* of (I:N) with x*N ⊄ 𝔫I.
inline WitnessSet realization_witnesses(const Ideal& I, const Ideal& N) {
  require_same_ring(I.ring(), N.ring());
  detail::require_proper_nonzero(I, "I");
  detail::require_proper_nonzero(N, "N");
  Ideal nI = product(Ideal::maximal(I.ring()), I);
  WitnessSet w;
  for (const auto& xs : minimal_generators(colon(I, N))) {
    for (const auto& n : N.gens()) {
      if (!nI.contains(xs * n)) {
        w.elements.push_back(xs.monic());
        break;
      }
    }
  }
  return w;
}

/// Minimal generators of N outside BI_N(I).
inline WitnessSet realized_witnesses(const Ideal& I, const Ideal& N) {
  Ideal b = bi_n(I, N);
  WitnessSet w;
  for (const auto& x : minimal_generators(N))
    if (!b.contains(x)) w.elements.push_back(x.monic());
  return w;
}

/// x* realizes x when x*·x is a minimal generator of I.
inline bool realizes(const Ideal& I, const Polynomial& x_star, const Polynomial& x) {
  require_same_ring(I.ring(), x_star.ring());
  require_same_ring(I.ring(), x.ring());
  return is_minimal_generator(I, x_star * x);
}

struct RealizingPair {
  Polynomial x_star;
  Polynomial x;
};

/// Pairs (x*, x) from the witness sets with x*·x a minimal generator of I.
inline std::vector<RealizingPair> realizing_pairs(const Ideal& I, const Ideal& N) {
  std::vector<RealizingPair> out;
  auto R = realization_witnesses(I, N);
  auto r = realized_witnesses(I, N);
  for (const auto& xs : R.elements)
    for (const auto& x : r.elements)
      if (realizes(I, xs, x)) out.push_back({xs, x});
  return out;
}

/// Burch_N(I) > 0 forces Burch_{(I:N)}(I) > 0, with realizing pairs swapped.
inline Report duality_check(const Ideal& I, const Ideal& N) {
  Report rep;
  rep.subject = Subject::DUALITY;
  Length b = burch_n(I, N);
  rep.require("Burch_N(I) > 0", b.positive(), b.str());
  rep.data["burch_n"] = to_json(b);
  if (!b.positive()) {
    rep.data["note"] = "not applicable";
    return rep;
  }
  Ideal dual = colon(I, N);
  rep.data["dual_ideal"] = ideal_json(dual);
  if (dual.is_unit()) {
    // N ⊆ I: nothing to dualize
    rep.require("(I:N) proper", false, "(I:N) = (1)");
    return rep;
  }
  Length bd = burch_n(I, dual);
  rep.data["burch_dual"] = to_json(bd);
  bool ok = bd.positive();
  Json pairs = Json::array();
  for (const auto& p : realizing_pairs(I, N)) {
    bool swapped = realizes(I, p.x, p.x_star);
    bool in_dual_set = false;
    for (const auto& w : realization_witnesses(I, dual).elements)
      if (w == p.x.monic()) in_dual_set = true;
    // x ∈ N lies in (I : (I:N)); it witnesses the dual set up to generator choice
    bool x_realizes = swapped && !product(Ideal::maximal(I.ring()), I).contains(p.x * p.x_star);
    pairs.push_back({{"x_star", to_string(p.x_star)},
                     {"x", to_string(p.x)},
                     {"swapped_realizes", swapped},
                     {"x_in_dual_witnesses", in_dual_set}});
    ok = ok && x_realizes;
  }
  rep.data["pairs"] = pairs;
  rep.conclusion = ok ? Conclusion::VERIFIED : Conclusion::FALSIFIED;
  return rep;
}

}  // namespace burch
