#pragma once

// Graded free modules and homogeneous matrices between them.

#include <burch/polynomial.hpp>

#include <string>
#include <vector>

namespace burch {

/// Free module with one degree shift per basis position; rank 0 is allowed.
struct GradedFreeModule {
  std::vector<int> twists;

  GradedFreeModule() = default;
  explicit GradedFreeModule(std::vector<int> t) : twists(std::move(t)) {}

  int rank() const { return static_cast<int>(twists.size()); }
  int max_twist() const {
    int m = 0;
    for (int t : twists) m = std::max(m, t);
    return m;
  }
  friend bool operator==(const GradedFreeModule&, const GradedFreeModule&) = default;
};

/// Matrix F_source -> F_target stored column by column.
class GradedMatrix {
 public:
  GradedMatrix() = default;
  GradedMatrix(RingPtr ring, GradedFreeModule target, GradedFreeModule source)
      : ring_(std::move(ring)), target_(std::move(target)), source_(std::move(source)) {
    columns_.assign(static_cast<std::size_t>(source_.rank()),
                    std::vector<Polynomial>(static_cast<std::size_t>(target_.rank()), Polynomial(ring_)));
  }

  /// Builds a matrix from columns, inferring source twists from the column degrees.
  static GradedMatrix from_columns(RingPtr ring, GradedFreeModule target,
                                   const std::vector<std::vector<Polynomial>>& cols) {
    std::vector<int> src;
    for (const auto& col : cols) src.push_back(column_degree(col, target));
    GradedMatrix m(ring, std::move(target), GradedFreeModule(std::move(src)));
    for (std::size_t c = 0; c < cols.size(); ++c) m.columns_[c] = cols[c];
    m.check_homogeneous();
    return m;
  }

  /// A 1 x g row of generators, target twist 0.
  static GradedMatrix row(RingPtr ring, const std::vector<Polynomial>& gens) {
    std::vector<std::vector<Polynomial>> cols;
    for (const auto& g : gens) cols.push_back({g});
    return from_columns(ring, GradedFreeModule({0}), cols);
  }

  const RingPtr& ring() const { return ring_; }
  const GradedFreeModule& target() const { return target_; }
  const GradedFreeModule& source() const { return source_; }
  int rows() const { return target_.rank(); }
  int cols() const { return source_.rank(); }

  const Polynomial& at(int r, int c) const {
    return columns_[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
  }
  void set(int r, int c, Polynomial p) {
    columns_[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] = std::move(p);
  }
  const std::vector<Polynomial>& column(int c) const { return columns_[static_cast<std::size_t>(c)]; }
  const std::vector<std::vector<Polynomial>>& columns() const { return columns_; }

  bool is_zero() const {
    for (const auto& col : columns_)
      for (const auto& e : col)
        if (!e.is_zero()) return false;
    return true;
  }

  /// Throws unless every nonzero entry has degree source[c] - target[r].
  void check_homogeneous() const {
    for (int c = 0; c < cols(); ++c)
      for (int r = 0; r < rows(); ++r) {
        const auto& e = at(r, c);
        if (e.is_zero()) continue;
        int want = source_.twists[static_cast<std::size_t>(c)] - target_.twists[static_cast<std::size_t>(r)];
        if (!e.is_homogeneous() || e.degree() != want)
          throw Error("inhomogeneous matrix entry (" + std::to_string(r) + "," + std::to_string(c) +
                      "): " + to_string(e));
      }
  }

  /// Degree of a column relative to the target twists; throws if inhomogeneous.
  static int column_degree(const std::vector<Polynomial>& col, const GradedFreeModule& target) {
    int d = -1;
    bool have = false;
    for (std::size_t r = 0; r < col.size(); ++r) {
      const auto& e = col[r];
      if (e.is_zero()) continue;
      if (!e.is_homogeneous()) throw Error("inhomogeneous entry " + to_string(e));
      int dd = e.degree() + target.twists[r];
      if (have && dd != d) throw Error("column is not homogeneous");
      d = dd;
      have = true;
    }
    if (!have) return target.max_twist();
    return d;
  }

 private:
  RingPtr ring_;
  GradedFreeModule target_;
  GradedFreeModule source_;
  std::vector<std::vector<Polynomial>> columns_;
};

/// Product A * B (entries in S, no reduction).
inline GradedMatrix multiply(const GradedMatrix& a, const GradedMatrix& b) {
  if (a.cols() != b.rows()) throw Error("matrix dimension mismatch");
  GradedMatrix m(a.ring(), a.target(), b.source());
  for (int c = 0; c < b.cols(); ++c)
    for (int r = 0; r < a.rows(); ++r) {
      Polynomial acc(a.ring());
      for (int k = 0; k < a.cols(); ++k) {
        if (a.at(r, k).is_zero() || b.at(k, c).is_zero()) continue;
        acc = acc + a.at(r, k) * b.at(k, c);
      }
      m.set(r, c, std::move(acc));
    }
  return m;
}

}  // namespace burch
