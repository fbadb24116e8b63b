#pragma once

// Homogeneous ideals of S = k[x1..xn]: arithmetic, colons, intersections,
// minimal generators and graded lengths.

#include <burch/groebner.hpp>
#include <burch/quotient.hpp>

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace burch {

/// A length that may be infinite.
class Length {
 public:
  Length() = default;
  explicit Length(std::int64_t v) : value_(v) {}
  static Length infinite() {
    Length l;
    l.infinite_ = true;
    return l;
  }
  bool is_finite() const { return !infinite_; }
  bool is_infinite() const { return infinite_; }
  std::int64_t value() const {
    if (infinite_) throw Error("length is infinite");
    return value_;
  }
  bool positive() const { return infinite_ || value_ > 0; }
  std::string str() const { return infinite_ ? "INFINITE" : std::to_string(value_); }
  friend bool operator==(const Length& a, const Length& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator==(const Length& a, std::int64_t b) { return a.is_finite() && a.value_ == b; }

 private:
  std::int64_t value_ = 0;
  bool infinite_ = false;
};

class Ideal {
 public:
  Ideal() = default;

  /// Zero generators are dropped; every generator must be homogeneous.
  Ideal(RingPtr ring, std::vector<Polynomial> gens) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
    for (auto& g : gens) {
      require_same_ring(ring_, g.ring());
      require_homogeneous(g);
      if (!g.is_zero()) gens_.push_back(std::move(g));
    }
  }

  static Ideal zero(RingPtr ring) { return Ideal(std::move(ring), {}); }
  static Ideal unit(RingPtr ring) { return Ideal(ring, {Polynomial::constant(ring, 1)}); }
  static Ideal maximal(RingPtr ring) {
    std::vector<Polynomial> g;
    for (int i = 0; i < ring->nvars(); ++i) g.push_back(Polynomial::variable(ring, i));
    return Ideal(ring, std::move(g));
  }
  static Ideal from_strings(const RingPtr& ring, const std::vector<std::string>& gens) {
    std::vector<Polynomial> g;
    for (const auto& s : gens) g.push_back(parse_polynomial(ring, s));
    return Ideal(ring, std::move(g));
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& gens() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return gb().is_unit(); }

  /// Reduced Gröbner basis, computed once and shared between copies.
  const GroebnerBasis& gb() const {
    std::lock_guard lock(cache_->mu);
    if (!cache_->gb) cache_->gb = buchberger(ring_, gens_);
    return *cache_->gb;
  }

  bool contains(const Polynomial& f) const { return gb().contains(f); }
  bool contains(const Ideal& other) const {
    require_same_ring(ring_, other.ring_);
    for (const auto& g : other.gens_)
      if (!contains(g)) return false;
    return true;
  }

  /// Ideal generated by the reduced Gröbner basis.
  Ideal canonical() const { return Ideal(ring_, gb().generators()); }

  friend bool operator==(const Ideal& a, const Ideal& b) {
    require_same_ring(a.ring_, b.ring_);
    return a.gb() == b.gb();
  }

 private:
  struct Cache {
    std::mutex mu;
    std::optional<GroebnerBasis> gb;
  };
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

inline bool equals(const Ideal& a, const Ideal& b) { return a == b; }
inline bool contains(const Ideal& a, const Ideal& b) { return a.contains(b); }

inline Ideal sum(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring());
  auto g = a.gens();
  g.insert(g.end(), b.gens().begin(), b.gens().end());
  return Ideal(a.ring(), std::move(g));
}

inline Ideal product(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring());
  std::vector<Polynomial> g;
  for (const auto& f : a.gens())
    for (const auto& h : b.gens()) g.push_back(f * h);
  return Ideal(a.ring(), std::move(g));
}

inline Ideal power(const Ideal& a, int k) {
  if (k < 0) throw Error("negative ideal power");
  Ideal r = Ideal::unit(a.ring());
  for (int i = 0; i < k; ++i) r = product(r, a).canonical();
  return r;
}

inline std::string to_string(const Ideal& a) {
  if (a.is_zero()) return "(0)";
  std::string s = "(";
  for (std::size_t i = 0; i < a.gens().size(); ++i) {
    if (i) s += ", ";
    s += to_string(a.gens()[i]);
  }
  return s + ")";
}

/// A ∩ B via elimination on pairs (f, f), (g, 0).
inline Ideal intersect(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring());
  const RingPtr& ring = a.ring();
  if (a.is_zero() || b.is_zero()) return Ideal::zero(ring);
  if (a.is_unit()) return b.canonical();
  if (b.is_unit()) return a.canonical();
  ModuleOrder ord;
  ord.block = {1, 0};
  ord.twist = {0, 0};
  ModuleGB gb(ring, ord);
  for (const auto& f : a.gb().generators()) {
    Vec v = poly_to_vec(f, 0);
    Vec w = poly_to_vec(f, 1);
    v.insert(v.end(), w.begin(), w.end());
    gb.add_generator(std::move(v));
  }
  for (const auto& g : b.gb().generators()) gb.add_generator(poly_to_vec(g, 0), 0);
  gb.compute();
  std::vector<Polynomial> out;
  for (const auto& v : gb.basis())
    if (v.front().pos == 1) out.push_back(vec_component(ring, v, 1));
  return Ideal(ring, buchberger(ring, out).generators());
}

/// (A : f) = { h : h f ∈ A }.
inline Ideal colon(const Ideal& a, const Polynomial& f) {
  require_same_ring(a.ring(), f.ring());
  require_homogeneous(f);
  const RingPtr& ring = a.ring();
  if (f.is_zero() || a.contains(f)) return Ideal::unit(ring);
  if (a.is_zero()) return Ideal::zero(ring);
  ModuleOrder ord;
  ord.block = {1, 0};
  ord.twist = {0, f.degree()};
  ModuleGB gb(ring, ord);
  Vec v = poly_to_vec(f, 0);
  v.push_back({1, ring->one(), 1});
  gb.add_generator(std::move(v));
  for (const auto& g : a.gb().generators()) gb.add_generator(poly_to_vec(g, 0), 0);
  gb.compute();
  std::vector<Polynomial> out;
  for (const auto& w : gb.basis())
    if (w.front().pos == 1) out.push_back(vec_component(ring, w, 1));
  return Ideal(ring, buchberger(ring, out).generators());
}

/// (A : B) = ∩ over generators g of B of (A : g).
inline Ideal colon(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring());
  std::optional<Ideal> acc;
  for (const auto& g : b.gb().generators()) {
    Ideal c = colon(a, g);
    acc = acc ? intersect(*acc, c) : c;
    if (acc->is_zero()) break;
  }
  return acc ? *acc : Ideal::unit(a.ring());
}

/// Minimal generators of an ideal in S, taken from the given generating set.
struct MingenSet {
  std::vector<Polynomial> elements;
  std::vector<int> degrees;
  std::size_t size() const { return elements.size(); }
};

namespace detail {

/// Minimal generating subset of the image of `cands` in S/J (J given by its GB).
inline std::vector<Polynomial> minimal_generators_over(const GroebnerBasis& J, std::vector<Polynomial> cands) {
  // lowest degree, then grevlex-smallest lead, then input order
  std::stable_sort(cands.begin(), cands.end(), [](const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return grevlex(a.lead_monomial(), b.lead_monomial()) < 0;
  });
  QuotientRing R(cands.empty() ? J.ring() : cands.front().ring(), J);
  std::vector<std::vector<Polynomial>> cols;
  for (const auto& c : cands) cols.push_back({c});
  auto idx = minimal_subset(R, GradedFreeModule({0}), cols);
  std::vector<Polynomial> out;
  for (auto i : idx) out.push_back(cands[i]);
  std::stable_sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return grevlex(a.lead_monomial(), b.lead_monomial()) > 0;
  });
  return out;
}

}  // namespace detail

inline MingenSet mingens(const Ideal& a) {
  MingenSet m;
  if (a.is_zero()) return m;
  m.elements = detail::minimal_generators_over(GroebnerBasis(a.ring(), {}), a.gens());
  for (const auto& e : m.elements) m.degrees.push_back(e.degree());
  return m;
}

/// Minimal generators of the canonical (reduced GB) generating set, monic.
inline std::vector<Polynomial> minimal_generators(const Ideal& a) {
  if (a.is_zero()) return {};
  auto v = detail::minimal_generators_over(GroebnerBasis(a.ring(), {}), a.gb().generators());
  for (auto& p : v) p = p.monic();
  return v;
}

/// Minimal generators of the image of A in S/I, reduced modulo I and monic.
inline std::vector<Polynomial> minimal_generators_mod(const Ideal& a, const Ideal& i) {
  std::vector<Polynomial> cands;
  for (const auto& g : a.gb().generators()) {
    Polynomial r = i.gb().normal_form(g);
    if (!r.is_zero()) cands.push_back(r);
  }
  auto v = detail::minimal_generators_over(i.gb(), cands);
  for (auto& p : v) p = p.monic();
  return v;
}

/// True iff f ∈ A and f ∉ 𝔫A.
inline bool is_minimal_generator(const Ideal& a, const Polynomial& f) {
  if (f.is_zero() || !a.contains(f)) return false;
  return !product(Ideal::maximal(a.ring()), a).contains(f);
}

/// dim_k (S/A)_d.
inline std::int64_t hilbert_dim(const Ideal& a, int d) {
  if (d < 0) return 0;
  std::int64_t n = 0;
  const auto& gb = a.gb();
  for (const auto& m : monomials_of_degree(a.ring()->nvars(), d))
    if (!gb.lead_divides(m)) ++n;
  return n;
}

/// length(N/Q) for Q ⊆ N; infinite unless in(Q:N) holds a power of every variable.
inline Length colength(const Ideal& N, const Ideal& Q) {
  require_same_ring(N.ring(), Q.ring());
  if (!N.contains(Q)) throw Error("colength requires Q ⊆ N");
  if (N.is_zero()) return Length(0);
  const RingPtr& ring = N.ring();
  Ideal ann = colon(Q, N);
  // (S/ann)_d = 0 once d exceeds the sum of (a_i - 1) over pure powers x_i^a_i in in(ann)
  int excess = 0;
  for (int i = 0; i < ring->nvars(); ++i) {
    int found = -1;
    for (const auto& g : ann.gb().generators()) {
      const Monomial& m = g.lead_monomial();
      if (m.deg != m.exp[static_cast<std::size_t>(i)]) continue;
      int a = static_cast<int>(m.deg);
      if (found < 0 || a < found) found = a;
    }
    if (found < 0) return Length::infinite();
    excess += std::max(0, found - 1);
  }
  int top = 0;
  for (const auto& g : N.gens()) top = std::max(top, g.degree());
  // beyond this degree every element of N lies in Q
  int bound = top + excess + 1;
  std::int64_t total = 0;
  for (int d = 0; d < bound; ++d) total += hilbert_dim(Q, d) - hilbert_dim(N, d);
  return Length(total);
}

/// True iff (I : 𝔫) ≠ I, i.e. S/I has a nonzero socle element.
inline bool is_depth_zero(const Ideal& I) {
  if (I.is_zero()) throw Error("depth test needs a nonzero ideal");
  if (I.is_unit()) throw Error("depth test needs a proper ideal");
  return !(colon(I, Ideal::maximal(I.ring())) == I);
}

/// (I : (I : N)), the largest J with (I : J) = (I : N).
inline Ideal double_colon(const Ideal& I, const Ideal& N) { return colon(I, colon(I, N)); }

}  // namespace burch
