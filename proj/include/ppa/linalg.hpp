#ifndef PPA_LINALG_HPP
#define PPA_LINALG_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ppa/field.hpp"
#include "ppa/rng.hpp"

namespace ppa {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using Eigen::Index;

// ---------------------------------------------------------------------------
// Reduced row-echelon form
// ---------------------------------------------------------------------------

template <class S>
struct RrefResult {
  Mat<S> reduced;
  Index rank = 0;
  std::vector<Index> pivots;  // strictly increasing pivot columns
};

/// Gauss-Jordan elimination over an exact field.  The result is the unique
/// RREF of the input, so it doubles as a canonical form for row spaces.
template <class Derived>
RrefResult<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& input) {
  using S = typename Derived::Scalar;
  RrefResult<S> out;
  Mat<S> m = input;
  const Index rows = m.rows(), cols = m.cols();
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index pivot = -1;
    for (Index i = r; i < rows; ++i) {
      if (!(m(i, c) == S(0))) { pivot = i; break; }
    }
    if (pivot < 0) continue;
    if (pivot != r) m.row(pivot).swap(m.row(r));
    S inv = S(1) / m(r, c);
    m.row(r) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r) continue;
      S f = m(i, c);
      if (!(f == S(0))) m.row(i) -= f * m.row(r);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.reduced = std::move(m);
  return out;
}

template <class Derived>
Index rank_of(const Eigen::MatrixBase<Derived>& m) {
  return rref(m).rank;
}

/// A linear map has maximal rank when it is injective or surjective.
template <class Derived>
bool has_max_rank(const Eigen::MatrixBase<Derived>& m) {
  return rank_of(m) == std::min(m.rows(), m.cols());
}

// ---------------------------------------------------------------------------
// Subspaces
// ---------------------------------------------------------------------------

/// A subspace of F^ambient, stored as its unique RREF basis (rows).
/// Two values are equal as sets of vectors iff their fields are identical.
template <class S>
struct Subspace {
  Index ambient = 0;
  Mat<S> basis;  // dim() x ambient, RREF, no zero rows

  Index dim() const { return basis.rows(); }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    if (a.ambient != b.ambient || a.dim() != b.dim()) return false;
    for (Index i = 0; i < a.basis.rows(); ++i)
      for (Index j = 0; j < a.basis.cols(); ++j)
        if (!(a.basis(i, j) == b.basis(i, j))) return false;
    return true;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }
};

/// Canonicalizes a spanning set (rows) into a Subspace.
template <class Derived>
Subspace<typename Derived::Scalar> row_space(const Eigen::MatrixBase<Derived>& rows) {
  auto rr = rref(rows);
  Subspace<typename Derived::Scalar> s;
  s.ambient = rows.cols();
  s.basis = rr.reduced.topRows(rr.rank);
  return s;
}

/// Canonicalizes a spanning set given as columns.
template <class Derived>
Subspace<typename Derived::Scalar> col_space(const Eigen::MatrixBase<Derived>& cols) {
  return row_space(cols.transpose());
}

/// Basis of { x : m x = 0 }, canonicalized to RREF.
template <class Derived>
Subspace<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  auto rr = rref(m);
  const Index cols = m.cols();
  std::vector<Index> free_cols;
  {
    std::size_t pi = 0;
    for (Index c = 0; c < cols; ++c) {
      if (pi < rr.pivots.size() && rr.pivots[pi] == c) { ++pi; continue; }
      free_cols.push_back(c);
    }
  }
  Mat<S> vecs(static_cast<Index>(free_cols.size()), cols);
  vecs.setZero();
  for (Index k = 0; k < vecs.rows(); ++k) {
    Index f = free_cols[static_cast<std::size_t>(k)];
    vecs(k, f) = S(1);
    for (Index i = 0; i < rr.rank; ++i) vecs(k, rr.pivots[static_cast<std::size_t>(i)]) = -rr.reduced(i, f);
  }
  return row_space(vecs);
}

/// Matrix of the quotient map F^n -> F^n / U in the coordinates given by the
/// non-pivot columns of U's RREF basis.
template <class S>
Mat<S> quotient_matrix(const Subspace<S>& u) {
  const Index n = u.ambient;
  std::vector<Index> pivots;
  for (Index i = 0; i < u.basis.rows(); ++i) {
    for (Index c = 0; c < n; ++c) {
      if (!(u.basis(i, c) == S(0))) { pivots.push_back(c); break; }
    }
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  Mat<S> q(n - u.dim(), n);
  q.setZero();
  Index row = 0;
  for (Index c = 0; c < n; ++c) {
    if (is_pivot[static_cast<std::size_t>(c)]) continue;
    q(row, c) = S(1);
    for (Index i = 0; i < u.dim(); ++i) q(row, pivots[static_cast<std::size_t>(i)]) = -u.basis(i, c);
    ++row;
  }
  return q;
}

// ---------------------------------------------------------------------------
// Counting and enumerating subspaces of F_p^n
// ---------------------------------------------------------------------------

struct BudgetExceededError : std::runtime_error {
  unsigned long long count;
  explicit BudgetExceededError(unsigned long long c, unsigned long long budget)
      : std::runtime_error("enumeration budget exceeded: " + std::to_string(c) + " cases > budget " +
                           std::to_string(budget) + "; fall back to sampled mode"),
        count(c) {}
};

inline unsigned long long sat_add(unsigned long long a, unsigned long long b) {
  unsigned long long s = a + b;
  return s < a ? std::numeric_limits<unsigned long long>::max() : s;
}
inline unsigned long long sat_mul(unsigned long long a, unsigned long long b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<unsigned long long>::max() / b) return std::numeric_limits<unsigned long long>::max();
  return a * b;
}

/// Gaussian binomial [n choose k]_p, saturating at 2^64-1.
inline unsigned long long count_subspaces(int n, int k, std::uint64_t p) {
  if (k < 0 || k > n) return 0;
  // Pascal recursion G(n,k) = G(n-1,k-1) + p^k G(n-1,k)
  std::vector<unsigned long long> g(static_cast<std::size_t>(k) + 1, 0);
  g[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) {
      unsigned long long pj = 1;
      for (int t = 0; t < j; ++t) pj = sat_mul(pj, p);
      g[static_cast<std::size_t>(j)] = sat_add(g[static_cast<std::size_t>(j - 1)], sat_mul(pj, g[static_cast<std::size_t>(j)]));
    }
  }
  return g[static_cast<std::size_t>(k)];
}

/// Number of subspaces of F_p^n of every dimension.
inline unsigned long long count_all_subspaces(int n, std::uint64_t p) {
  unsigned long long total = 0;
  for (int k = 0; k <= n; ++k) total = sat_add(total, count_subspaces(n, k, p));
  return total;
}

/// Streams every k-dimensional subspace of F_p^ambient exactly once, as
/// canonical RREF matrices: pivot-column sets in lexicographic order, free
/// entries in odometer order.
template <class Fn>
void for_each_subspace(int ambient, int k, std::uint64_t p, Fn&& fn) {
  FpField F(p);
  if (k < 0 || k > ambient) return;
  std::vector<int> piv(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) piv[static_cast<std::size_t>(i)] = i;
  auto emit_with_pivots = [&](const std::vector<int>& pivots) {
    // free positions: (row i, col c) with c > pivots[i], c not a pivot
    std::vector<std::pair<int, int>> free_pos;
    std::vector<bool> is_piv(static_cast<std::size_t>(ambient), false);
    for (int c : pivots) is_piv[static_cast<std::size_t>(c)] = true;
    for (int i = 0; i < k; ++i)
      for (int c = pivots[static_cast<std::size_t>(i)] + 1; c < ambient; ++c)
        if (!is_piv[static_cast<std::size_t>(c)]) free_pos.emplace_back(i, c);
    std::vector<std::uint64_t> vals(free_pos.size(), 0);
    for (;;) {
      Subspace<Fp> s;
      s.ambient = ambient;
      s.basis = Mat<Fp>(k, ambient);
      s.basis.setConstant(F.from_int(0));
      for (int i = 0; i < k; ++i) s.basis(i, pivots[static_cast<std::size_t>(i)]) = F.from_int(1);
      for (std::size_t t = 0; t < free_pos.size(); ++t)
        s.basis(free_pos[t].first, free_pos[t].second) = F.from_int(static_cast<long long>(vals[t]));
      fn(s);
      // odometer
      std::size_t t = 0;
      while (t < vals.size()) {
        if (++vals[t] < p) break;
        vals[t] = 0;
        ++t;
      }
      if (t == vals.size()) break;
    }
  };
  // lexicographic combinations of pivot columns
  for (;;) {
    emit_with_pivots(piv);
    if (k == 0) break;
    int i = k - 1;
    while (i >= 0 && piv[static_cast<std::size_t>(i)] == ambient - k + i) --i;
    if (i < 0) break;
    ++piv[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) piv[static_cast<std::size_t>(j)] = piv[static_cast<std::size_t>(j - 1)] + 1;
  }
}

/// Materialized enumeration with an up-front budget check.
inline std::vector<Subspace<Fp>> enumerate_subspaces(int ambient, int k, std::uint64_t p,
                                                     unsigned long long budget = 100000) {
  unsigned long long n = count_subspaces(ambient, k, p);
  if (n > budget) throw BudgetExceededError(n, budget);
  std::vector<Subspace<Fp>> out;
  out.reserve(static_cast<std::size_t>(n));
  for_each_subspace(ambient, k, p, [&](const Subspace<Fp>& s) { out.push_back(s); });
  return out;
}

/// All subspaces of every dimension, dimension-major.
inline std::vector<Subspace<Fp>> enumerate_all_subspaces(int ambient, std::uint64_t p,
                                                         unsigned long long budget = 100000) {
  unsigned long long n = count_all_subspaces(ambient, p);
  if (n > budget) throw BudgetExceededError(n, budget);
  std::vector<Subspace<Fp>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k <= ambient; ++k)
    for_each_subspace(ambient, k, p, [&](const Subspace<Fp>& s) { out.push_back(s); });
  return out;
}

// ---------------------------------------------------------------------------
// Random matrices and subspaces over F_p
// ---------------------------------------------------------------------------

template <class Rng>
Mat<Fp> random_matrix(Index rows, Index cols, const FpField& F, Rng& rng) {
  Mat<Fp> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = F.from_int(static_cast<long long>(rng.below(F.p)));
  return m;
}

/// Uniformly random dim-dimensional subspace of F_p^ambient; a pure function
/// of its arguments.  Draws dim x ambient matrices until one has full rank,
/// then canonicalizes.
inline Subspace<Fp> random_subspace(int ambient, int dim, const FpField& F, std::uint64_t seed) {
  if (dim > ambient) throw std::invalid_argument("random_subspace: dim > ambient");
  SplitMix64 rng(seed);
  if (dim == 0) {
    Subspace<Fp> s;
    s.ambient = ambient;
    s.basis = Mat<Fp>(0, ambient);
    return s;
  }
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Mat<Fp> m = random_matrix(dim, ambient, F, rng);
    auto rr = rref(m);
    if (rr.rank == dim) {
      Subspace<Fp> s;
      s.ambient = ambient;
      s.basis = rr.reduced.topRows(dim);
      return s;
    }
  }
  throw std::runtime_error("random_subspace: retry cap exceeded");
}

// ---------------------------------------------------------------------------
// Sparse reduced echelon accumulator
// ---------------------------------------------------------------------------

/// One term of a sparse row vector: (column, coefficient), columns strictly
/// increasing, coefficients nonzero.
template <class S>
using SparseVec = std::vector<std::pair<Index, S>>;

/// Incrementally maintained reduced row-echelon basis of a row span.  Rows
/// are stored sparsely; in the intended use (relation spaces of graded path
/// components) each reduced row has at most 1 + codim nonzeros, which keeps
/// large slices tractable where a dense RREF would not be.
template <class S>
class SparseEchelon {
 public:
  explicit SparseEchelon(Index cols = 0) : cols_(cols) {}

  Index cols() const { return cols_; }
  Index rank() const { return static_cast<Index>(rows_.size()); }
  bool is_pivot(Index c) const { return rows_.count(c) != 0; }
  const std::map<Index, SparseVec<S>>& rows() const { return rows_; }

  std::vector<Index> pivots() const {
    std::vector<Index> out;
    out.reserve(rows_.size());
    for (const auto& kv : rows_) out.push_back(kv.first);
    return out;
  }

  std::vector<Index> non_pivots() const {
    std::vector<Index> out;
    auto it = rows_.begin();
    for (Index c = 0; c < cols_; ++c) {
      while (it != rows_.end() && it->first < c) ++it;
      if (it != rows_.end() && it->first == c) continue;
      out.push_back(c);
    }
    return out;
  }

  /// Fully reduces v against the current basis (no insertion).
  SparseVec<S> reduce(const SparseVec<S>& v) const {
    std::map<Index, S> acc;
    for (const auto& [c, x] : v) {
      auto [it, fresh] = acc.emplace(c, x);
      if (!fresh) it->second += x;
    }
    reduce_in_place(acc);
    SparseVec<S> out;
    out.reserve(acc.size());
    for (auto& [c, x] : acc)
      if (!(x == S(0))) out.emplace_back(c, x);
    return out;
  }

  /// Reduces v and, if nonzero, inserts it as a new pivot row, restoring
  /// reduced form by back-substitution into the existing rows.
  void insert(const SparseVec<S>& v) {
    SparseVec<S> red = reduce(v);
    if (red.empty()) return;
    Index pc = red.front().first;
    S inv = S(1) / red.front().second;
    for (auto& [c, x] : red) x *= inv;
    // eliminate pc from rows that use it
    auto uses = col_uses_.find(pc);
    if (uses != col_uses_.end()) {
      std::vector<Index> affected(uses->second.begin(), uses->second.end());
      for (Index rp : affected) {
        auto& row = rows_[rp];
        S f;
        bool found = false;
        for (const auto& [c, x] : row)
          if (c == pc) { f = x; found = true; break; }
        if (!found) continue;
        subtract_multiple(row, rp, f, red);
      }
    }
    for (const auto& [c, x] : red) col_uses_[c].insert(pc);
    rows_.emplace(pc, std::move(red));
  }

 private:
  // acc <- acc reduced modulo the basis (single ordered sweep; subtracting an
  // RREF row only introduces entries at non-pivot columns to its right).
  void reduce_in_place(std::map<Index, S>& acc) const {
    auto it = acc.begin();
    while (it != acc.end()) {
      if (it->second == S(0)) { it = acc.erase(it); continue; }
      auto rit = rows_.find(it->first);
      if (rit == rows_.end()) { ++it; continue; }
      S f = it->second;
      for (const auto& [c, x] : rit->second) {
        auto [jt, fresh] = acc.emplace(c, S(0));
        jt->second -= f * x;
      }
      // *it is now zero and gets erased on the next pass; map insertions do
      // not invalidate it.
    }
  }

  void subtract_multiple(SparseVec<S>& row, Index row_pivot, const S& f, const SparseVec<S>& v) {
    std::map<Index, S> acc;
    for (const auto& [c, x] : row) acc.emplace(c, x);
    for (const auto& [c, x] : v) {
      auto [it, fresh] = acc.emplace(c, S(0));
      it->second -= f * x;
    }
    SparseVec<S> out;
    out.reserve(acc.size());
    for (auto& [c, x] : acc) {
      if (x == S(0)) {
        auto u = col_uses_.find(c);
        if (u != col_uses_.end()) u->second.erase(row_pivot);
        continue;
      }
      out.emplace_back(c, x);
      col_uses_[c].insert(row_pivot);
    }
    row = std::move(out);
  }

  Index cols_;
  std::map<Index, SparseVec<S>> rows_;          // pivot column -> row
  std::map<Index, std::set<Index>> col_uses_;   // column -> pivots of rows touching it
};

/// Dense view of an echelon basis (rank x cols, RREF, pivot order).
template <class S>
Mat<S> echelon_to_dense(const SparseEchelon<S>& e) {
  Mat<S> m(e.rank(), e.cols());
  m.setZero();
  Index r = 0;
  for (const auto& [pc, row] : e.rows()) {
    for (const auto& [c, x] : row) m(r, c) = x;
    ++r;
  }
  return m;
}

}  // namespace ppa

#endif  // PPA_LINALG_HPP
