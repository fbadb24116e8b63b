#pragma once

// Graded pieces of R = S/I: standard monomials, cached normal forms of
// monomials, and coordinates of homogeneous module elements.

#include <burch/groebner.hpp>
#include <burch/linalg.hpp>

#include <map>
#include <unordered_map>

namespace burch {

/// Finite-dimensional graded pieces of S/I. Caches are not synchronized, so
/// an instance belongs to one thread.
class QuotientRing {
 public:
  QuotientRing(RingPtr ring, GroebnerBasis gb) : ring_(std::move(ring)), gb_(std::move(gb)) {}

  const RingPtr& ring() const { return ring_; }
  const GroebnerBasis& gb() const { return gb_; }
  const PrimeField& field() const { return ring_->field; }

  /// Standard monomials of degree d, descending grevlex.
  const std::vector<Monomial>& basis(int d) {
    auto it = basis_.find(d);
    if (it != basis_.end()) return it->second;
    std::vector<Monomial> out;
    if (d >= 0)
      for (const auto& m : monomials_of_degree(ring_->nvars(), d))
        if (!gb_.lead_divides(m)) out.push_back(m);
    auto& idx = index_[d];
    for (std::size_t i = 0; i < out.size(); ++i) idx.emplace(out[i], static_cast<std::uint32_t>(i));
    return basis_.emplace(d, std::move(out)).first->second;
  }

  int dim(int d) { return static_cast<int>(basis(d).size()); }

  /// Normal form of a monomial in standard-monomial coordinates of its degree.
  const SparseVec& nf_monomial(const Monomial& m) {
    auto it = nf_.find(m);
    if (it != nf_.end()) return it->second;
    basis(static_cast<int>(m.deg));
    const auto& idx = index_[static_cast<int>(m.deg)];
    SparseVec v;
    auto found = idx.find(m);
    if (found != idx.end()) {
      v.emplace_back(found->second, 1);
    } else {
      Polynomial r = gb_.normal_form(Polynomial::monomial(ring_, m));
      for (const auto& t : r.terms()) v.emplace_back(idx.at(t.mono), t.coef);
      std::sort(v.begin(), v.end());
    }
    return nf_.emplace(m, std::move(v)).first->second;
  }

  /// Adds c * u * f (f homogeneous) into a dense accumulator at offset `off`.
  void accumulate(std::vector<Coef>& acc, std::size_t off, const Polynomial& f, const Monomial& u, Coef c = 1) {
    const auto& F = field();
    for (const auto& t : f.terms()) {
      Coef tc = F.mul(t.coef, c);
      for (const auto& [i, k] : nf_monomial(t.mono * u)) acc[off + i] = F.add(acc[off + i], F.mul(tc, k));
    }
  }

  Polynomial from_coords(int d, const SparseVec& v, std::size_t off = 0) {
    const auto& b = basis(d);
    std::vector<Term> ts;
    for (const auto& [i, c] : v)
      if (i >= off && i < off + b.size()) ts.push_back({c, b[i - off]});
    return Polynomial(ring_, std::move(ts));
  }

 private:
  RingPtr ring_;
  GroebnerBasis gb_;
  std::map<int, std::vector<Monomial>> basis_;
  std::map<int, std::unordered_map<Monomial, std::uint32_t, MonomialHash>> index_;
  std::unordered_map<Monomial, SparseVec, MonomialHash> nf_;
};

/// Degree-d piece of a graded free module over S/I: one block of standard
/// monomials per basis position.
class GradedPiece {
 public:
  GradedPiece(QuotientRing& R, const GradedFreeModule& F, int d) : R_(R), d_(d) {
    std::size_t off = 0;
    for (int t : F.twists) {
      offsets_.push_back(off);
      off += static_cast<std::size_t>(std::max(0, R.dim(d - t)));
      tw_.push_back(t);
    }
    dim_ = off;
  }

  std::size_t dim() const { return dim_; }
  int degree() const { return d_; }

  /// Coordinates of u * column (column homogeneous of degree d - deg u).
  SparseVec coords(const std::vector<Polynomial>& column, const Monomial& u, Coef c = 1) {
    std::vector<Coef> acc(dim_, 0);
    for (std::size_t r = 0; r < column.size(); ++r) {
      if (column[r].is_zero()) continue;
      if (column[r].degree() + static_cast<int>(u.deg) + tw_[r] != d_) continue;
      R_.accumulate(acc, offsets_[r], column[r], u, c);
    }
    SparseVec v;
    for (std::size_t i = 0; i < dim_; ++i)
      if (acc[i]) v.emplace_back(static_cast<std::uint32_t>(i), acc[i]);
    return v;
  }

  /// Inverse of coords for u = 1.
  std::vector<Polynomial> column(const SparseVec& v) {
    std::vector<Polynomial> col;
    for (std::size_t r = 0; r < tw_.size(); ++r) {
      int dd = d_ - tw_[r];
      if (dd < 0) {
        col.emplace_back(R_.ring());
        continue;
      }
      std::size_t lo = offsets_[r];
      SparseVec part;
      for (const auto& [i, c] : v)
        if (i >= lo && i < lo + static_cast<std::size_t>(R_.dim(dd))) part.emplace_back(i - static_cast<std::uint32_t>(lo), c);
      col.push_back(R_.from_coords(dd, part));
    }
    return col;
  }

 private:
  QuotientRing& R_;
  int d_;
  std::vector<std::size_t> offsets_;
  std::vector<int> tw_;
  std::size_t dim_ = 0;
};

/// Indices of a minimal generating subset of the S/I-submodule of `target`
/// spanned by the given homogeneous columns (graded Nakayama, processed in
/// nondecreasing degree; ties keep input order).
inline std::vector<std::size_t> minimal_subset(QuotientRing& R, const GradedFreeModule& target,
                                               const std::vector<std::vector<Polynomial>>& cols) {
  std::vector<std::size_t> order(cols.size());
  std::vector<int> deg(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) {
    order[i] = i;
    deg[i] = GradedMatrix::column_degree(cols[i], target);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return deg[a] < deg[b]; });
  std::vector<std::size_t> kept;
  const int n = R.ring()->nvars();
  std::size_t k = 0;
  while (k < order.size()) {
    int d = deg[order[k]];
    GradedPiece piece(R, target, d);
    Echelon ech(R.field(), piece.dim());
    for (auto g : kept) {
      int gap = d - deg[g];
      if (gap <= 0) continue;
      for (const auto& u : monomials_of_degree(n, gap)) ech.add(piece.coords(cols[g], u));
    }
    std::vector<std::size_t> same;
    while (k < order.size() && deg[order[k]] == d) same.push_back(order[k++]);
    for (auto i : same)
      if (ech.add(piece.coords(cols[i], R.ring()->one()))) kept.push_back(i);
  }
  std::sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) {
    return deg[a] != deg[b] ? deg[a] < deg[b] : a < b;
  });
  return kept;
}

}  // namespace burch
