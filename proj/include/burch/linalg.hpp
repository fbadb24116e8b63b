#pragma once

// Sparse row echelon forms over GF(p), used for all graded-piece linear algebra.

#include <burch/ring.hpp>

#include <utility>
#include <vector>

namespace burch {

/// Sparse vector: (index, nonzero coefficient), indices strictly increasing.
using SparseVec = std::vector<std::pair<std::uint32_t, Coef>>;

/// Incrementally built row echelon basis of a subspace of GF(p)^dim.
class Echelon {
 public:
  Echelon(PrimeField field, std::size_t dim) : F_(field), pivot_row_(dim, -1), acc_(dim, 0) {}

  std::size_t dim() const { return pivot_row_.size(); }
  std::size_t rank() const { return rows_.size(); }

  /// Reduces v against the basis; returns the remainder.
  SparseVec reduce(const SparseVec& v) {
    if (v.empty()) return {};
    load(v);
    std::uint32_t lo = v.front().first;
    return drain(lo);
  }

  bool contains(const SparseVec& v) { return reduce(v).empty(); }

  /// Adds v; returns true when it was independent of the current basis.
  bool add(const SparseVec& v) {
    SparseVec r = reduce(v);
    if (r.empty()) return false;
    Coef inv = F_.inv(r.front().second);
    for (auto& [i, c] : r) c = F_.mul(c, inv);
    pivot_row_[r.front().first] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }

 private:
  void load(const SparseVec& v) {
    for (const auto& [i, c] : v) acc_[i] = F_.add(acc_[i], c);
  }

  SparseVec drain(std::uint32_t lo) {
    SparseVec out;
    for (std::size_t i = lo; i < acc_.size(); ++i) {
      Coef c = acc_[i];
      if (c == 0) continue;
      int pr = pivot_row_[i];
      if (pr >= 0) {
        Coef f = F_.neg(c);
        for (const auto& [j, rc] : rows_[static_cast<std::size_t>(pr)]) acc_[j] = F_.add(acc_[j], F_.mul(f, rc));
        continue;
      }
      out.emplace_back(static_cast<std::uint32_t>(i), c);
      acc_[i] = 0;
    }
    return out;
  }

  PrimeField F_;
  std::vector<int> pivot_row_;
  std::vector<SparseVec> rows_;
  std::vector<Coef> acc_;
};

}  // namespace burch
