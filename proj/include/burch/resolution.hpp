#pragma once

// Minimal graded free resolutions over R = S/I, truncated at a step cap.

#include <burch/ideal.hpp>
#include <burch/quotient.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

namespace burch {

inline constexpr int kMaxResolutionRank = 4096;
inline constexpr int kDefaultSteps = 10;
inline constexpr int kDegreeSlack = 6;

enum class ModuleKind { IDEAL, COKERNEL };

/// The module being resolved: an ideal N (resolved from its generator row A_0)
/// or the cokernel of a presentation matrix (which becomes A_1).
struct PresentedModule {
  ModuleKind kind = ModuleKind::IDEAL;
  Ideal ideal;
  GradedMatrix matrix;

  static PresentedModule of_ideal(Ideal n) {
    PresentedModule m;
    m.kind = ModuleKind::IDEAL;
    m.ideal = std::move(n);
    return m;
  }
  static PresentedModule cokernel(GradedMatrix a) {
    a.check_homogeneous();
    PresentedModule m;
    m.kind = ModuleKind::COKERNEL;
    m.matrix = std::move(a);
    return m;
  }
  /// R/J as the cokernel of the generator row of J.
  static PresentedModule quotient(const Ideal& j) {
    return cokernel(GradedMatrix::row(j.ring(), minimal_generators(j)));
  }
};

namespace detail {

inline GradedMatrix reduce_entries(const GradedMatrix& a, const GroebnerBasis& I) {
  GradedMatrix out(a.ring(), a.target(), a.source());
  for (int c = 0; c < a.cols(); ++c)
    for (int r = 0; r < a.rows(); ++r) out.set(r, c, I.normal_form(a.at(r, c)));
  return out;
}

/// Drops pairs (row, column) meeting at a unit entry by Gaussian elimination,
/// scanning row-major. Rows removed this way are generators that the
/// relations make redundant.
inline GradedMatrix prune_units(GradedMatrix a, const GroebnerBasis& I) {
  const PrimeField& F = a.ring()->field;
  for (;;) {
    int pr = -1, pc = -1;
    for (int r = 0; r < a.rows() && pr < 0; ++r)
      for (int c = 0; c < a.cols(); ++c) {
        if (a.at(r, c).constant_coef() != 0) {
          pr = r;
          pc = c;
          break;
        }
      }
    if (pr < 0) return a;
    Coef inv = F.inv(a.at(pr, pc).constant_coef());
    // clear row pr in the other columns: col_c -= (a[pr][c]/u) col_pc
    std::vector<std::vector<Polynomial>> cols;
    std::vector<int> tw_src;
    for (int c = 0; c < a.cols(); ++c) {
      if (c == pc) continue;
      std::vector<Polynomial> col;
      Polynomial f = a.at(pr, c).scaled(inv);
      for (int r = 0; r < a.rows(); ++r) {
        if (r == pr) continue;
        Polynomial e = a.at(r, c);
        if (!f.is_zero()) e = I.normal_form(e - f * a.at(r, pc));
        col.push_back(std::move(e));
      }
      cols.push_back(std::move(col));
      tw_src.push_back(a.source().twists[static_cast<std::size_t>(c)]);
    }
    std::vector<int> tw_tgt;
    for (int r = 0; r < a.rows(); ++r)
      if (r != pr) tw_tgt.push_back(a.target().twists[static_cast<std::size_t>(r)]);
    GradedMatrix b(a.ring(), GradedFreeModule(tw_tgt), GradedFreeModule(tw_src));
    for (int c = 0; c < b.cols(); ++c)
      for (int r = 0; r < b.rows(); ++r) b.set(r, c, cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)]);
    a = std::move(b);
  }
}

/// Keeps a minimal generating subset of the columns (graded Nakayama over R).
inline GradedMatrix minimal_columns(const GradedMatrix& a, QuotientRing& R) {
  std::vector<std::vector<Polynomial>> cols;
  for (const auto& col : a.columns()) {
    bool zero = std::all_of(col.begin(), col.end(), [](const Polynomial& p) { return p.is_zero(); });
    if (!zero) cols.push_back(col);
  }
  auto keep = minimal_subset(R, a.target(), cols);
  std::vector<std::vector<Polynomial>> out;
  for (auto i : keep) out.push_back(cols[i]);
  return GradedMatrix::from_columns(a.ring(), a.target(), out);
}

}  // namespace detail

/// A_first, ..., A_last. For an ideal, first = 0 and A_0 is the row of minimal
/// generators of N; for a cokernel, first = 1 and A_1 is the minimalized
/// presentation.
class Resolution {
 public:
  Resolution() = default;
  Resolution(Ideal I, PresentedModule m, int first) : I_(std::move(I)), module_(std::move(m)), first_(first) {}

  const Ideal& ideal() const { return I_; }
  const PresentedModule& module() const { return module_; }
  int first() const { return first_; }
  int last() const { return first_ + static_cast<int>(mats_.size()) - 1; }
  int size() const { return static_cast<int>(mats_.size()); }
  bool has(int j) const { return j >= first_ && j <= last(); }

  const GradedMatrix& A(int j) const {
    if (!has(j)) throw Error("resolution has no matrix A_" + std::to_string(j));
    return mats_[static_cast<std::size_t>(j - first_)];
  }
  const std::vector<GradedMatrix>& matrices() const { return mats_; }
  bool minimal(int j) const { return minimal_[static_cast<std::size_t>(j - first_)]; }

  /// Index of the first zero-rank source, if the resolution ended.
  std::optional<int> terminated_at() const {
    for (int j = first_; j <= last(); ++j)
      if (A(j).cols() == 0) return j;
    return std::nullopt;
  }

  void push(GradedMatrix a, bool is_minimal) {
    mats_.push_back(std::move(a));
    minimal_.push_back(is_minimal);
  }

 private:
  Ideal I_;
  PresentedModule module_;
  int first_ = 0;
  std::vector<GradedMatrix> mats_;
  std::vector<bool> minimal_;
};

/// Resolves M over S/I through A_steps.
inline Resolution resolve(const Ideal& I, const PresentedModule& M, int steps = kDefaultSteps) {
  if (steps < 1) throw Error("steps must be at least 1");
  if (I.is_unit()) throw Error("I must be proper");
  const RingPtr& ring = I.ring();
  const GroebnerBasis& gb = I.gb();
  QuotientRing R(ring, gb);
  GradedMatrix a;
  int first = 0;
  if (M.kind == ModuleKind::IDEAL) {
    require_same_ring(ring, M.ideal.ring());
    a = GradedMatrix::row(ring, minimal_generators_mod(M.ideal, I));
  } else {
    require_same_ring(ring, M.matrix.ring());
    first = 1;
    a = detail::reduce_entries(M.matrix, gb);
    a.check_homogeneous();
    a = detail::prune_units(std::move(a), gb);
    a = detail::minimal_columns(a, R);
  }
  Resolution res(I, M, first);
  res.push(a, true);
  for (int j = first + 1; j <= steps; ++j) {
    const GradedMatrix& prev = res.A(j - 1);
    GradedMatrix next;
    if (prev.cols() == 0) {
      next = GradedMatrix(ring, GradedFreeModule(), GradedFreeModule());
    } else {
      GradedMatrix k = syzygies_mod(gb, prev);
      next = detail::minimal_columns(k, R);
      if (next.cols() > kMaxResolutionRank)
        throw ResourceCapError("rank of F_" + std::to_string(j) + " exceeds " + std::to_string(kMaxResolutionRank));
    }
    res.push(std::move(next), true);
  }
  return res;
}

/// Ideal of S generated by the entries of A together with I.
inline Ideal entry_ideal(const GradedMatrix& a, const Ideal& I) {
  std::vector<Polynomial> g = I.gens();
  for (const auto& col : a.columns())
    for (const auto& e : col)
      if (!e.is_zero()) g.push_back(e);
  return Ideal(I.ring(), std::move(g));
}

/// Ideal of S generated by the entries of column c together with I.
inline Ideal column_ideal(const GradedMatrix& a, int c, const Ideal& I) {
  if (c < 0 || c >= a.cols()) throw Error("column index out of range");
  std::vector<Polynomial> g = I.gens();
  for (const auto& e : a.column(c))
    if (!e.is_zero()) g.push_back(e);
  return Ideal(I.ring(), std::move(g));
}

/// True when the column's entry ideal is zero modulo I.
inline bool column_is_zero(const GradedMatrix& a, int c) {
  const auto& col = a.column(c);
  return std::all_of(col.begin(), col.end(), [](const Polynomial& p) { return p.is_zero(); });
}

struct BettiTable {
  std::vector<int> ranks;               // [rank F_first-1 target, rank F_first, ...]
  std::vector<std::vector<int>> twists; // same indexing
};

inline BettiTable betti(const Resolution& res) {
  BettiTable t;
  const auto& m0 = res.A(res.first());
  t.ranks.push_back(m0.rows());
  t.twists.push_back(m0.target().twists);
  for (const auto& a : res.matrices()) {
    t.ranks.push_back(a.cols());
    auto tw = a.source().twists;
    std::sort(tw.begin(), tw.end());
    t.twists.push_back(std::move(tw));
  }
  return t;
}

namespace detail {

/// Rank of the degree-d part of a map between free R/Q-modules.
inline std::size_t graded_rank(const GradedMatrix& a, QuotientRing& RQ, int d) {
  GradedPiece piece(RQ, a.target(), d);
  if (piece.dim() == 0) return 0;
  Echelon ech(RQ.field(), piece.dim());
  const int n = RQ.ring()->nvars();
  for (int c = 0; c < a.cols(); ++c) {
    int gap = d - a.source().twists[static_cast<std::size_t>(c)];
    if (gap < 0) continue;
    for (const auto& u : monomials_of_degree(n, gap)) ech.add(piece.coords(a.column(c), u));
  }
  return ech.rank();
}

inline std::int64_t free_dim(const GradedFreeModule& F, QuotientRing& RQ, int d) {
  std::int64_t s = 0;
  for (int t : F.twists) s += RQ.dim(d - t);
  return s;
}

/// Largest degree with (S/J)_d ≠ 0, or nullopt when S/J is not Artinian.
inline std::optional<int> top_degree(const Ideal& J) {
  if (!colength(Ideal::unit(J.ring()), J).is_finite()) return std::nullopt;
  int d = 0;
  int top = -1;
  for (;; ++d) {
    std::int64_t h = hilbert_dim(J, d);
    if (h > 0) top = d;
    // zero in one degree means zero from then on
    if (h == 0) break;
  }
  return top;
}

}  // namespace detail

/// dim_k Tor_j(M, R/Q) for j = 0..j_max from the minimal resolution.
/// Requires A_{j_max + 1}; every needed graded piece must fit under degree_bound
/// (default: largest twist + kDegreeSlack).
inline std::vector<std::int64_t> tor_dims(const Resolution& res, const Ideal& Q, int j_max,
                                          std::optional<int> degree_bound = std::nullopt) {
  const Ideal& I = res.ideal();
  Ideal J = sum(I, Q);
  auto top = detail::top_degree(J);
  if (!top) throw Error("R/Q is not of finite length");
  QuotientRing RQ(I.ring(), J.gb());
  // A_j is the j-th differential in both conventions; F_0 is the target of A_1
  auto diff = [&](int j) -> const GradedMatrix& { return res.A(j); };
  if (!res.has(j_max + 1) || !res.has(1)) throw Error("resolution too short for Tor_" + std::to_string(j_max));
  std::vector<std::int64_t> out;
  int max_tw = 0;
  for (int j = 1; j <= j_max + 1; ++j) max_tw = std::max(max_tw, diff(j).source().max_twist());
  int bound = degree_bound.value_or(max_tw + kDegreeSlack);
  for (int j = 0; j <= j_max; ++j) {
    const GradedFreeModule& F = j == 0 ? diff(1).target() : diff(j).source();
    int hi = F.max_twist() + *top;
    if (hi > bound) throw Error("degree bound " + std::to_string(bound) + " exceeded (needs " + std::to_string(hi) + ")");
    std::int64_t total = 0;
    for (int d = 0; d <= hi; ++d) {
      std::int64_t dim = detail::free_dim(F, RQ, d);
      if (dim == 0) continue;
      std::int64_t rk_out = j == 0 ? 0 : static_cast<std::int64_t>(detail::graded_rank(diff(j), RQ, d));
      std::int64_t rk_in = static_cast<std::int64_t>(detail::graded_rank(diff(j + 1), RQ, d));
      total += dim - rk_out - rk_in;
    }
    out.push_back(total);
  }
  return out;
}

/// True if B equals A after permuting rows and columns and flipping signs of
/// rows and columns. Exhaustive; intended for small matrices.
inline bool equal_up_to_permutation_sign(const GradedMatrix& a, const GradedMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const int r = a.rows(), c = a.cols();
  if (r > 6 || c > 6) return false;
  std::vector<int> pr(static_cast<std::size_t>(r)), pc(static_cast<std::size_t>(c));
  std::iota(pr.begin(), pr.end(), 0);
  do {
    std::iota(pc.begin(), pc.end(), 0);
    do {
      // column signs are fixed by the first nonzero entry of each column; row
      // signs are then tried exhaustively
      for (int rs = 0; rs < (1 << r); ++rs) {
        bool ok = true;
        for (int j = 0; j < c && ok; ++j) {
          int cs = 0;
          bool set = false;
          for (int i = 0; i < r && ok; ++i) {
            Polynomial x = a.at(i, j);
            if ((rs >> i) & 1) x = -x;
            const Polynomial& y = b.at(pr[static_cast<std::size_t>(i)], pc[static_cast<std::size_t>(j)]);
            if (x.is_zero() != y.is_zero()) {
              ok = false;
              break;
            }
            if (x.is_zero()) continue;
            int s = x == y ? 1 : (x == -y ? -1 : 0);
            if (s == 0) ok = false;
            else if (!set) {
              cs = s;
              set = true;
            } else if (s != cs) ok = false;
          }
        }
        if (ok) return true;
      }
    } while (std::next_permutation(pc.begin(), pc.end()));
  } while (std::next_permutation(pr.begin(), pr.end()));
  return false;
}

/// Smallest j0 with A_j ≅ A_{j+2} (permutation/sign) for all j0 <= j <= last-2.
inline std::optional<int> matrix_two_period_onset(const Resolution& res) {
  std::optional<int> onset;
  for (int j = res.last() - 2; j >= res.first(); --j) {
    if (!equal_up_to_permutation_sign(res.A(j), res.A(j + 2))) break;
    onset = j;
  }
  return onset;
}

/// Entries of every A_j reduced mod I and free of constant terms, and
/// consecutive products zero mod I.
inline bool check_complex(const Resolution& res) {
  const auto& gb = res.ideal().gb();
  for (int j = res.first(); j <= res.last(); ++j) {
    const auto& a = res.A(j);
    for (const auto& col : a.columns())
      for (const auto& e : col)
        if (!e.is_zero() && (e.constant_coef() != 0 || !(gb.normal_form(e) == e))) return false;
    if (j < res.last()) {
      const auto& b = res.A(j + 1);
      if (a.cols() != b.rows()) return false;
      if (b.cols() == 0) continue;
      auto p = multiply(a, b);
      for (const auto& col : p.columns())
        for (const auto& e : col)
          if (!gb.normal_form(e).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace burch
