#pragma once

// Buchberger's algorithm for homogeneous submodules of graded free modules,
// with the Gebauer-Moeller pair criteria and the normal selection strategy.
// Ideals are handled as rank-one modules; syzygies come from an elimination
// order that puts a "value" block above a "tag" block.

#include <burch/matrix.hpp>
#include <burch/polynomial.hpp>

#include <algorithm>
#include <compare>
#include <map>
#include <unordered_map>
#include <vector>

namespace burch {

struct VTerm {
  Coef coef = 0;
  Monomial mono;
  std::uint32_t pos = 0;
};

/// Element of a free module, terms strictly decreasing in the module order.
using Vec = std::vector<VTerm>;

/// Block order on module terms: higher block wins, then degree (monomial degree
/// plus position twist), then grevlex, then lower position index.
struct ModuleOrder {
  std::vector<int> block;
  std::vector<int> twist;

  static ModuleOrder uniform(std::vector<int> twists) {
    ModuleOrder o;
    o.block.assign(twists.size(), 0);
    o.twist = std::move(twists);
    return o;
  }

  std::size_t rank() const { return twist.size(); }

  std::strong_ordering cmp(const Monomial& a, std::uint32_t pa, const Monomial& b, std::uint32_t pb) const {
    if (block[pa] != block[pb]) return block[pa] <=> block[pb];
    auto da = static_cast<int>(a.deg) + twist[pa];
    auto db = static_cast<int>(b.deg) + twist[pb];
    if (da != db) return da <=> db;
    auto o = grevlex(a, b);
    if (o != 0) return o;
    return pb <=> pa;
  }
  std::strong_ordering cmp(const VTerm& a, const VTerm& b) const { return cmp(a.mono, a.pos, b.mono, b.pos); }

  int degree(const VTerm& t) const { return static_cast<int>(t.mono.deg) + twist[t.pos]; }
};

namespace detail {

inline void sort_vec(Vec& v, const ModuleOrder& ord, const PrimeField& F) {
  std::sort(v.begin(), v.end(), [&](const VTerm& a, const VTerm& b) { return ord.cmp(a, b) > 0; });
  Vec out;
  out.reserve(v.size());
  for (const auto& t : v) {
    if (!out.empty() && out.back().pos == t.pos && out.back().mono == t.mono)
      out.back().coef = F.add(out.back().coef, t.coef);
    else
      out.push_back(t);
    if (out.back().coef == 0) out.pop_back();
  }
  v = std::move(out);
}

/// out = a + c * m * b, all sorted.
inline void axpy_into(Vec& out, const Vec& a, Coef c, const Monomial& m, const Vec& b, std::size_t b_from,
                      const ModuleOrder& ord, const PrimeField& F) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = b_from;
  VTerm tb;
  bool have_b = false;
  auto load_b = [&]() {
    if (j < b.size()) {
      tb.coef = F.mul(c, b[j].coef);
      tb.mono = b[j].mono * m;
      tb.pos = b[j].pos;
      have_b = true;
    } else {
      have_b = false;
    }
  };
  load_b();
  while (i < a.size() || have_b) {
    if (!have_b) {
      out.push_back(a[i++]);
      continue;
    }
    if (i == a.size()) {
      out.push_back(tb);
      ++j;
      load_b();
      continue;
    }
    auto o = ord.cmp(a[i], tb);
    if (o > 0) {
      out.push_back(a[i++]);
    } else if (o < 0) {
      out.push_back(tb);
      ++j;
      load_b();
    } else {
      Coef s = F.add(a[i].coef, tb.coef);
      if (s) out.push_back({s, a[i].mono, a[i].pos});
      ++i;
      ++j;
      load_b();
    }
  }
}

}  // namespace detail

/// Gröbner basis engine for homogeneous submodules of a free module.
class ModuleGB {
 public:
  ModuleGB(RingPtr ring, ModuleOrder order) : ring_(std::move(ring)), ord_(std::move(order)) {
    by_pos_.resize(ord_.rank());
    pairs_.resize(ord_.rank());
  }

  /// Queues a generator. Generators sharing a nonnegative `group` are declared
  /// to already form a Gröbner basis among themselves.
  void add_generator(Vec v, int group = -1) {
    detail::sort_vec(v, ord_, field());
    if (v.empty()) return;
    int d = ord_.degree(v.front());
    for (const auto& t : v)
      if (ord_.degree(t) != d) throw Error("inhomogeneous module generator");
    inputs_.push_back({std::move(v), d, group});
  }

  void compute() {
    std::stable_sort(inputs_.begin(), inputs_.end(),
                     [](const Input& a, const Input& b) { return a.degree < b.degree; });
    std::size_t next_input = 0;
    while (next_input < inputs_.size() || npairs_ > 0) {
      int d = next_input < inputs_.size() ? inputs_[next_input].degree : INT32_MAX;
      for (const auto& bucket : pairs_)
        for (const auto& p : bucket) d = std::min(d, p.degree);

      std::vector<Pair> todo;
      for (auto& bucket : pairs_) {
        std::vector<Pair> keep;
        for (auto& p : bucket) (p.degree == d ? todo : keep).push_back(p);
        bucket = std::move(keep);
      }
      npairs_ -= todo.size();
      std::sort(todo.begin(), todo.end(), [](const Pair& a, const Pair& b) { return a.seq < b.seq; });

      for (const auto& p : todo) {
        Vec h = spair(p);
        h = reduce(std::move(h), false);
        if (!h.empty()) insert(std::move(h), -1);
      }
      while (next_input < inputs_.size() && inputs_[next_input].degree == d) {
        auto& in = inputs_[next_input++];
        // a group member keeps its exemption only if it enters the basis unchanged
        int group = find_reducer(in.v.front()) ? -1 : in.group;
        Vec h = reduce(std::move(in.v), false);
        if (!h.empty()) insert(std::move(h), group);
      }
    }
    inputs_.clear();
  }

  /// Reduces v by the current basis; `full` also reduces the tail.
  Vec reduce(Vec v, bool full) const {
    const auto& F = field();
    Vec done;
    Vec scratch;
    std::size_t start = 0;
    while (start < v.size()) {
      const VTerm& lt = v[start];
      const Elem* red = find_reducer(lt);
      if (!red) {
        if (!full) break;
        done.push_back(lt);
        ++start;
        continue;
      }
      Coef c = F.neg(F.div(lt.coef, red->v.front().coef));
      Monomial m = lt.mono / red->v.front().mono;
      // v[start] cancels; merge the rest
      Vec rest(v.begin() + static_cast<std::ptrdiff_t>(start) + 1, v.end());
      detail::axpy_into(scratch, rest, c, m, red->v, 1, ord_, F);
      std::swap(v, scratch);
      start = 0;
    }
    if (full) return done;
    if (start > 0) v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(start));
    return v;
  }

  /// True if v lies in the submodule (requires compute()).
  bool contains(const Vec& v) const { return reduce(v, false).empty(); }

  /// Basis elements in insertion order, monic.
  std::vector<Vec> basis() const {
    std::vector<Vec> out;
    for (const auto& e : elems_) out.push_back(e.v);
    return out;
  }

  /// Reduced Gröbner basis: drop redundant leads, tail-reduce, monic.
  std::vector<Vec> reduced_basis() const {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < elems_.size() && !redundant; ++j) {
        if (i == j || elems_[i].v.front().pos != elems_[j].v.front().pos) continue;
        const auto& mi = elems_[i].v.front().mono;
        const auto& mj = elems_[j].v.front().mono;
        if (mj.divides(mi) && (!(mi == mj) || j < i)) redundant = true;
      }
      if (!redundant) keep.push_back(i);
    }
    ModuleGB tmp(ring_, ord_);
    for (auto i : keep) tmp.push_elem(elems_[i].v, -1);
    std::vector<Vec> out;
    const auto& F = field();
    for (auto i : keep) {
      Vec head{elems_[i].v.front()};
      Vec tail(elems_[i].v.begin() + 1, elems_[i].v.end());
      tail = tmp.reduce(std::move(tail), true);
      head.insert(head.end(), tail.begin(), tail.end());
      Coef inv = F.inv(head.front().coef);
      for (auto& t : head) t.coef = F.mul(t.coef, inv);
      out.push_back(std::move(head));
    }
    std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) { return ord_.cmp(a.front(), b.front()) < 0; });
    return out;
  }

  const ModuleOrder& order() const { return ord_; }
  const PrimeField& field() const { return ring_->field; }
  std::size_t size() const { return elems_.size(); }

 private:
  struct Elem {
    Vec v;
    int group;
    bool single;
  };
  struct Pair {
    std::uint32_t i, j;
    Monomial lcm;
    int degree;
    std::uint64_t seq;
  };
  struct Input {
    Vec v;
    int degree;
    int group;
  };

  const Elem* find_reducer(const VTerm& t) const {
    for (auto idx : by_pos_[t.pos]) {
      const auto& e = elems_[idx];
      if (e.v.front().mono.divides(t.mono)) return &e;
    }
    return nullptr;
  }

  Vec spair(const Pair& p) const {
    const auto& a = elems_[p.i].v;
    const auto& b = elems_[p.j].v;
    const auto& F = field();
    Monomial ma = p.lcm / a.front().mono;
    Monomial mb = p.lcm / b.front().mono;
    Coef ca = F.inv(a.front().coef);
    Coef cb = F.neg(F.inv(b.front().coef));
    Vec left;
    left.reserve(a.size());
    for (std::size_t k = 1; k < a.size(); ++k) left.push_back({F.mul(a[k].coef, ca), a[k].mono * ma, a[k].pos});
    Vec out;
    detail::axpy_into(out, left, cb, mb, b, 1, ord_, F);
    return out;
  }

  static bool single_position(const Vec& v) {
    for (const auto& t : v)
      if (t.pos != v.front().pos) return false;
    return true;
  }

  void push_elem(Vec v, int group) {
    by_pos_[v.front().pos].push_back(static_cast<std::uint32_t>(elems_.size()));
    bool single = single_position(v);
    elems_.push_back({std::move(v), group, single});
  }

  void insert(Vec h, int group) {
    const auto& F = field();
    Coef inv = F.inv(h.front().coef);
    if (inv != 1)
      for (auto& t : h) t.coef = F.mul(t.coef, inv);
    const std::uint32_t k = static_cast<std::uint32_t>(elems_.size());
    const std::uint32_t pos = h.front().pos;
    const Monomial lk = h.front().mono;

    struct Cand {
      std::uint32_t i;
      Monomial lcm;
      bool coprime;
      bool known_zero;
      bool alive;
    };
    std::vector<Cand> cands;
    // the product criterion only holds when both elements live in one position
    const bool k_single = single_position(h);
    for (auto i : by_pos_[pos]) {
      const auto& li = elems_[i].v.front().mono;
      bool kz = group >= 0 && elems_[i].group == group;
      bool cp = k_single && elems_[i].single && li.coprime(lk);
      cands.push_back({i, lcm(li, lk), cp, kz, true});
    }
    // chain criterion among the new pairs
    for (std::size_t a = 0; a < cands.size(); ++a) {
      for (std::size_t b = 0; b < cands.size() && cands[a].alive; ++b) {
        if (a == b || !cands[b].alive) continue;
        if (!cands[b].lcm.divides(cands[a].lcm)) continue;
        if (cands[b].lcm == cands[a].lcm) {
          // equal lcm: keep one representative; coprime ones win so the class is dropped
          if (cands[a].coprime && !cands[b].coprime) {
            cands[b].alive = false;
            continue;
          }
          if (b < a || cands[b].coprime) cands[a].alive = false;
        } else {
          cands[a].alive = false;
        }
      }
    }
    // old pairs made redundant by the new lead
    auto& bucket = pairs_[pos];
    std::vector<Pair> keep;
    keep.reserve(bucket.size());
    for (auto& p : bucket) {
      if (lk.divides(p.lcm)) {
        Monomial li = lcm(elems_[p.i].v.front().mono, lk);
        Monomial lj = lcm(elems_[p.j].v.front().mono, lk);
        if (!(li == p.lcm) && !(lj == p.lcm)) continue;
      }
      keep.push_back(p);
    }
    npairs_ -= bucket.size() - keep.size();
    bucket = std::move(keep);

    push_elem(std::move(h), group);
    for (const auto& c : cands) {
      if (!c.alive || c.coprime || c.known_zero) continue;
      int deg = static_cast<int>(c.lcm.deg) + ord_.twist[pos];
      pairs_[pos].push_back({c.i, k, c.lcm, deg, seq_++});
      ++npairs_;
    }
  }

  RingPtr ring_;
  ModuleOrder ord_;
  std::vector<Elem> elems_;
  std::vector<std::vector<std::uint32_t>> by_pos_;
  std::vector<std::vector<Pair>> pairs_;  // by position of the leads
  std::size_t npairs_ = 0;
  std::vector<Input> inputs_;
  std::uint64_t seq_ = 0;
};

inline Vec poly_to_vec(const Polynomial& f, std::uint32_t pos) {
  Vec v;
  v.reserve(f.size());
  for (const auto& t : f.terms()) v.push_back({t.coef, t.mono, pos});
  return v;
}

/// Extracts the terms at `pos` as a polynomial.
inline Polynomial vec_component(const RingPtr& ring, const Vec& v, std::uint32_t pos) {
  std::vector<Term> ts;
  for (const auto& t : v)
    if (t.pos == pos) ts.push_back({t.coef, t.mono});
  return Polynomial(ring, std::move(ts));
}

/// Reduced, monic Gröbner basis of a homogeneous ideal.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(RingPtr ring, std::vector<Polynomial> gens) : ring_(std::move(ring)), gens_(std::move(gens)) {}

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return !gens_.empty() && gens_.front().lead_monomial().is_one(); }

  /// Remainder of f with no term divisible by any leading monomial.
  Polynomial normal_form(const Polynomial& f) const {
    require_same_ring(ring_, f.ring());
    const auto& F = ring_->field;
    std::vector<Term> rem;
    Polynomial h = f;
    while (!h.is_zero()) {
      const Term lt = h.lead();
      const Polynomial* red = nullptr;
      for (const auto& g : gens_)
        if (g.lead_monomial().divides(lt.mono)) {
          red = &g;
          break;
        }
      if (!red) {
        rem.push_back(lt);
        h = h.axpy(F.neg(1), Polynomial::monomial(ring_, lt.mono, lt.coef));
        continue;
      }
      h = h.axpy(F.neg(F.div(lt.coef, red->lead_coef())), red->times_monomial(lt.mono / red->lead_monomial()));
    }
    return Polynomial(ring_, std::move(rem));
  }

  bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }

  /// True if m is divisible by some leading monomial.
  bool lead_divides(const Monomial& m) const {
    for (const auto& g : gens_)
      if (g.lead_monomial().divides(m)) return true;
    return false;
  }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) { return a.gens_ == b.gens_; }

 private:
  RingPtr ring_;
  std::vector<Polynomial> gens_;
};

inline void require_homogeneous(const Polynomial& f) {
  if (!f.is_homogeneous()) throw Error("inhomogeneous polynomial rejected: " + to_string(f));
}

/// Reduced Gröbner basis of the ideal generated by `gens` (homogeneous only).
inline GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens) {
  ModuleGB gb(ring, ModuleOrder::uniform({0}));
  for (const auto& g : gens) {
    require_same_ring(ring, g.ring());
    require_homogeneous(g);
    if (!g.is_zero()) gb.add_generator(poly_to_vec(g, 0));
  }
  gb.compute();
  std::vector<Polynomial> out;
  for (const auto& v : gb.reduced_basis()) out.push_back(vec_component(ring, v, 0));
  // degree ascending, then leading monomial descending
  std::stable_sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return grevlex(a.lead_monomial(), b.lead_monomial()) > 0;
  });
  return GroebnerBasis(ring, std::move(out));
}

inline GroebnerBasis buchberger(const std::vector<Polynomial>& gens) {
  if (gens.empty()) throw Error("buchberger needs at least one generator");
  return buchberger(gens.front().ring(), gens);
}

inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb) { return gb.normal_form(f); }

namespace detail {

inline std::size_t poly_hash(const Polynomial& f) {
  std::size_t h = f.size();
  for (const auto& t : f.terms()) h = h * 31u + MonomialHash{}(t.mono) * 7u + t.coef;
  return h;
}

/// Columns v in S^c with M v in `extra` (a list of generators of a submodule of
/// the target, each given as a column). Elimination order: target block above
/// the tag block.
inline std::vector<std::vector<Polynomial>> kernel_modulo(const GradedMatrix& M,
                                                          const std::vector<std::pair<int, GroebnerBasis>>& extra) {
  const int r = M.rows();
  const int c = M.cols();
  const RingPtr& ring = M.ring();
  ModuleOrder ord;
  ord.block.assign(static_cast<std::size_t>(r + c), 0);
  ord.twist.assign(static_cast<std::size_t>(r + c), 0);
  for (int i = 0; i < r; ++i) {
    ord.block[static_cast<std::size_t>(i)] = 1;
    ord.twist[static_cast<std::size_t>(i)] = M.target().twists[static_cast<std::size_t>(i)];
  }
  for (int j = 0; j < c; ++j) ord.twist[static_cast<std::size_t>(r + j)] = M.source().twists[static_cast<std::size_t>(j)];
  ModuleGB gb(ring, ord);
  for (int j = 0; j < c; ++j) {
    Vec v;
    for (int i = 0; i < r; ++i)
      for (const auto& t : M.at(i, j).terms()) v.push_back({t.coef, t.mono, static_cast<std::uint32_t>(i)});
    v.push_back({1, ring->one(), static_cast<std::uint32_t>(r + j)});
    gb.add_generator(std::move(v));
  }
  for (const auto& [row, ideal] : extra)
    for (const auto& g : ideal.generators()) gb.add_generator(poly_to_vec(g, static_cast<std::uint32_t>(row)), row);
  gb.compute();
  std::vector<std::vector<Polynomial>> out;
  for (const auto& v : gb.basis()) {
    if (v.front().pos < static_cast<std::uint32_t>(r)) continue;
    std::vector<Polynomial> col;
    for (int j = 0; j < c; ++j) col.push_back(vec_component(ring, v, static_cast<std::uint32_t>(r + j)));
    out.push_back(std::move(col));
  }
  return out;
}

}  // namespace detail

/// Generators of ker(M) over S. Columns satisfy M * syz = 0.
inline GradedMatrix syzygies(const GradedMatrix& M) {
  M.check_homogeneous();
  auto cols = detail::kernel_modulo(M, {});
  return GradedMatrix::from_columns(M.ring(), M.source(), cols);
}

/// Generators of ker(M) over R = S/I, entries reduced modulo I, zero and
/// repeated columns removed. Not necessarily minimal.
inline GradedMatrix syzygies_mod(const GroebnerBasis& I, const GradedMatrix& M) {
  M.check_homogeneous();
  std::vector<std::pair<int, GroebnerBasis>> extra;
  if (!I.is_zero())
    for (int i = 0; i < M.rows(); ++i) extra.emplace_back(i, I);
  auto cols = detail::kernel_modulo(M, extra);
  std::vector<std::vector<Polynomial>> kept;
  std::unordered_map<std::size_t, std::vector<std::size_t>> seen;
  for (auto& col : cols) {
    bool zero = true;
    std::size_t h = 0;
    for (auto& e : col) {
      e = I.normal_form(e);
      if (!e.is_zero()) zero = false;
      h = h * 1000003u + detail::poly_hash(e);
    }
    if (zero) continue;
    auto& bucket = seen[h];
    bool dup = false;
    for (auto k : bucket) dup = dup || kept[k] == col;
    if (dup) continue;
    bucket.push_back(kept.size());
    kept.push_back(std::move(col));
  }
  std::stable_sort(kept.begin(), kept.end(), [&](const auto& a, const auto& b) {
    return GradedMatrix::column_degree(a, M.source()) < GradedMatrix::column_degree(b, M.source());
  });
  return GradedMatrix::from_columns(M.ring(), M.source(), kept);
}

}  // namespace burch
