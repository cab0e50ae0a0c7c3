#ifndef PPA_MAXRANK_HPP
#define PPA_MAXRANK_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ppa/linalg.hpp"
#include "ppa/preproj.hpp"
#include "ppa/rng.hpp"

namespace ppa {

// ---------------------------------------------------------------------------
// Tensor-sum maps
// ---------------------------------------------------------------------------

/// A linear map  T: ⊕_i (V_i ⊗ W_i) -> U   (direction into_u)  or
///               S: Q -> ⊕_i (V_i ⊗ W_i)   (direction from_q),
/// stored densely with the block profile retained.  Within block i the
/// tensor coordinate of v ⊗ w is v_index * dim_w + w_index.
template <class S>
struct TensorSumMap {
  enum class Dir { into_u, from_q };
  struct Block {
    Index dim_v;
    Index dim_w;
  };

  Dir dir = Dir::into_u;
  std::vector<Block> blocks;
  Mat<S> matrix;

  Index tensor_dim() const {
    Index t = 0;
    for (const auto& b : blocks) t += b.dim_v * b.dim_w;
    return t;
  }
  Index block_offset(std::size_t i) const {
    Index t = 0;
    for (std::size_t k = 0; k < i; ++k) t += blocks[k].dim_v * blocks[k].dim_w;
    return t;
  }
  /// dim U for into_u maps, dim Q for from_q maps.
  Index free_dim() const { return dir == Dir::into_u ? matrix.rows() : matrix.cols(); }

  bool surjective() const { return rank_of(matrix) == matrix.rows(); }
  bool injective() const { return rank_of(matrix) == matrix.cols(); }
};

/// Regroups the flat matrix of a module morphism g: ⊕_i V_i^{n_i} -> C into
/// the tensor form T: ⊕_i (V_i ⊗ W_i) -> C with dim W_i = n_i, together with
/// the regrouping isomorphism h (v in copy j of V_i goes to v ⊗ e_ij), so
/// that T h = g columnwise.
template <class S>
std::pair<TensorSumMap<S>, Mat<S>> from_module_morphism(const Mat<S>& g_flat,
                                                        const std::vector<std::pair<Index, int>>& decomposition) {
  Index total = 0;
  for (const auto& [dv, n] : decomposition) total += dv * n;
  if (total != g_flat.cols())
    throw std::invalid_argument("from_module_morphism: decomposition width " + std::to_string(total) +
                                " does not match the morphism (" + std::to_string(g_flat.cols()) + " columns)");
  TensorSumMap<S> T;
  T.dir = TensorSumMap<S>::Dir::into_u;
  T.matrix = Mat<S>(g_flat.rows(), total);
  Mat<S> h(total, total);
  h.setZero();
  Index off = 0;
  for (const auto& [dv, n] : decomposition) {
    T.blocks.push_back({dv, n});
    for (int j = 0; j < n; ++j)
      for (Index v = 0; v < dv; ++v) {
        T.matrix.col(off + v * n + j) = g_flat.col(off + j * dv + v);
        h(off + v * n + j, off + j * dv + v) = S(1);
      }
    off += dv * n;
  }
  return {std::move(T), std::move(h)};
}

template <class S>
std::vector<std::pair<Index, int>> class_profile(const std::vector<DecompClass<S>>& classes) {
  std::vector<std::pair<Index, int>> out;
  for (const auto& c : classes) out.emplace_back(c.comp->dim, c.multiplicity);
  return out;
}

/// Tensor form of g^t_d; T h = g.flat.
template <class S>
std::pair<TensorSumMap<S>, Mat<S>> tensor_from_g(const GMap<S>& g) {
  return from_module_morphism(g.flat, class_profile(g.classes));
}

/// Tensor form of f^t_d as a map from Q = V^t_d; S = h f.flat.
template <class S>
std::pair<TensorSumMap<S>, Mat<S>> tensor_from_f(const FMap<S>& f) {
  auto [T, h] = from_module_morphism(Mat<S>(f.flat.transpose()), class_profile(f.classes));
  TensorSumMap<S> out;
  out.dir = TensorSumMap<S>::Dir::from_q;
  out.blocks = T.blocks;
  out.matrix = T.matrix.transpose();
  return {std::move(out), std::move(h)};
}

// ---------------------------------------------------------------------------
// The tensor lemma: alpha and cyclic submodules
// ---------------------------------------------------------------------------

/// x in V ⊗ W as a dim V x dim W coordinate matrix; alpha(x): DV -> W sends
/// f to f(v)w summed over the terms of x, so its image is the row space.
template <class S>
struct AlphaImage {
  Index rank;
  Subspace<S> image;  // subspace of W
};

template <class S>
AlphaImage<S> alpha_rank(const Mat<S>& x) {
  Subspace<S> im = row_space(x);
  return {im.dim(), std::move(im)};
}

/// The cyclic End(V)-submodule End(V)x = V ⊗ Im alpha(x), as a subspace of
/// V ⊗ W in flat coordinates.
template <class S>
Subspace<S> cyclic_submodule(const Mat<S>& x) {
  AlphaImage<S> a = alpha_rank(x);
  const Index dv = x.rows(), dw = x.cols(), r = a.rank;
  Mat<S> rows(dv * r, dv * dw);
  rows.setZero();
  for (Index v = 0; v < dv; ++v)
    for (Index k = 0; k < r; ++k) rows.row(v * r + k).segment(v * dw, dw) = a.image.basis.row(k);
  return row_space(rows);
}

// ---------------------------------------------------------------------------
// Restrictions along subspace tuples
// ---------------------------------------------------------------------------

enum class MrProperty { right_omnipresent, left_omnipresent, right_general, left_general };

inline const char* property_name(MrProperty p) {
  switch (p) {
    case MrProperty::right_omnipresent: return "right_omnipresent";
    case MrProperty::left_omnipresent: return "left_omnipresent";
    case MrProperty::right_general: return "right_general";
    case MrProperty::left_general: return "left_general";
  }
  return "?";
}

inline bool is_right_property(MrProperty p) {
  return p == MrProperty::right_omnipresent || p == MrProperty::right_general;
}
inline bool is_omnipresent(MrProperty p) {
  return p == MrProperty::right_omnipresent || p == MrProperty::left_omnipresent;
}

/// The linear map tested for a given subspace tuple:
///  - into_u maps restrict along the chosen subspaces (columns),
///  - from_q maps compose with the projections onto the quotients (rows);
/// right properties act on the W side, left properties on the V side.
inline Mat<Fp> restricted_matrix(const TensorSumMap<Fp>& M, MrProperty prop, const std::vector<Subspace<Fp>>& tuple) {
  const bool w_side = is_right_property(prop);
  const bool into_u = M.dir == TensorSumMap<Fp>::Dir::into_u;
  if (tuple.size() != M.blocks.size()) throw std::invalid_argument("tuple size does not match block count");

  if (into_u) {
    Index new_cols = 0;
    for (std::size_t i = 0; i < M.blocks.size(); ++i) {
      const auto& b = M.blocks[i];
      new_cols += w_side ? b.dim_v * tuple[i].dim() : tuple[i].dim() * b.dim_w;
    }
    Mat<Fp> out(M.matrix.rows(), new_cols);
    out.setZero();
    Index off_in = 0, off_out = 0;
    for (std::size_t i = 0; i < M.blocks.size(); ++i) {
      const auto& b = M.blocks[i];
      const Mat<Fp>& B = tuple[i].basis;
      if (w_side) {
        for (Index v = 0; v < b.dim_v; ++v)
          for (Index j = 0; j < B.rows(); ++j)
            for (Index w = 0; w < b.dim_w; ++w)
              if (!(B(j, w) == Fp(0))) out.col(off_out + v * B.rows() + j) += B(j, w) * M.matrix.col(off_in + v * b.dim_w + w);
        off_out += b.dim_v * B.rows();
      } else {
        for (Index j = 0; j < B.rows(); ++j)
          for (Index v = 0; v < b.dim_v; ++v)
            if (!(B(j, v) == Fp(0)))
              for (Index w = 0; w < b.dim_w; ++w) out.col(off_out + j * b.dim_w + w) += B(j, v) * M.matrix.col(off_in + v * b.dim_w + w);
        off_out += B.rows() * b.dim_w;
      }
      off_in += b.dim_v * b.dim_w;
    }
    return out;
  }

  // from_q: compose with the quotient projections on the chosen side
  Index new_rows = 0;
  std::vector<Mat<Fp>> q;
  for (std::size_t i = 0; i < M.blocks.size(); ++i) {
    q.push_back(quotient_matrix(tuple[i]));
    const auto& b = M.blocks[i];
    new_rows += w_side ? b.dim_v * q.back().rows() : q.back().rows() * b.dim_w;
  }
  Mat<Fp> out(new_rows, M.matrix.cols());
  out.setZero();
  Index off_in = 0, off_out = 0;
  for (std::size_t i = 0; i < M.blocks.size(); ++i) {
    const auto& b = M.blocks[i];
    const Mat<Fp>& Q = q[i];
    if (w_side) {
      for (Index v = 0; v < b.dim_v; ++v)
        for (Index j = 0; j < Q.rows(); ++j)
          for (Index w = 0; w < b.dim_w; ++w)
            if (!(Q(j, w) == Fp(0))) out.row(off_out + v * Q.rows() + j) += Q(j, w) * M.matrix.row(off_in + v * b.dim_w + w);
      off_out += b.dim_v * Q.rows();
    } else {
      for (Index j = 0; j < Q.rows(); ++j)
        for (Index v = 0; v < b.dim_v; ++v)
          if (!(Q(j, v) == Fp(0)))
            for (Index w = 0; w < b.dim_w; ++w) out.row(off_out + j * b.dim_w + w) += Q(j, v) * M.matrix.row(off_in + v * b.dim_w + w);
      off_out += Q.rows() * b.dim_w;
    }
    off_in += b.dim_v * b.dim_w;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

struct Witness {
  std::vector<Subspace<Fp>> tuple;
  Index restricted_rank = 0;
  Index rows = 0, cols = 0;
  long long trial = -1;               // sampled mode
  unsigned long long case_index = 0;  // exhaustive mode
};

struct Verdict {
  MrProperty property = MrProperty::right_omnipresent;
  bool exhaustive = true;
  std::uint64_t p = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  bool pass = false;
  unsigned long long cases = 0;
  unsigned long long failures = 0;
  double failure_fraction = 0.0;
  double worst_profile_failure_fraction = 0.0;
  bool first_trial_pass = true;
  bool short_circuit = false;  // settled by the full-rank check alone
  std::optional<Witness> witness;
  std::vector<Witness> collected_failures;
};

struct CheckOptions {
  bool exhaustive = true;
  int trials = 100;
  std::uint64_t seed = 1;
  double threshold = 0.95;  // sampled: per-profile pass fraction required
  unsigned long long budget = 100000;
  bool collect_failures = false;
  std::size_t max_collected = 256;
  std::optional<std::vector<std::vector<int>>> profiles;  // dimension tuples
  bool allow_short_circuit = true;
};

namespace detail {

inline std::vector<int> tuple_ambients(const TensorSumMap<Fp>& M, MrProperty prop) {
  std::vector<int> amb;
  for (const auto& b : M.blocks) amb.push_back(static_cast<int>(is_right_property(prop) ? b.dim_w : b.dim_v));
  return amb;
}

inline bool restriction_has_max_rank(const TensorSumMap<Fp>& M, MrProperty prop, const std::vector<Subspace<Fp>>& tuple,
                                     Witness* w) {
  Mat<Fp> r = restricted_matrix(M, prop, tuple);
  Index rk = rank_of(r);
  bool ok = rk == std::min(r.rows(), r.cols());
  if (!ok && w) {
    w->tuple = tuple;
    w->restricted_rank = rk;
    w->rows = r.rows();
    w->cols = r.cols();
  }
  return ok;
}

inline std::vector<std::vector<int>> all_profiles(const std::vector<int>& amb) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(amb.size(), 0);
  for (;;) {
    out.push_back(cur);
    std::size_t i = 0;
    while (i < cur.size()) {
      if (++cur[i] <= amb[i]) break;
      cur[i] = 0;
      ++i;
    }
    if (i == cur.size()) break;
  }
  return out;
}

}  // namespace detail

/// Checks one of the four maximal-rank properties of a tensor-sum map over a
/// prime field.  Exhaustive mode enumerates every subspace tuple (all
/// dimension profiles unless an explicit list is given) and passes iff no
/// restriction fails.  Sampled mode draws `trials` random tuples per
/// dimension profile and passes iff every profile reaches the pass-fraction
/// threshold; the boolean verdict uses the fraction, the first-trial outcome
/// is recorded alongside.  The witness is the first failing tuple found.
inline Verdict check_property(const TensorSumMap<Fp>& M, MrProperty prop, const FpField& F, const CheckOptions& opt) {
  Verdict v;
  v.property = prop;
  v.exhaustive = opt.exhaustive;
  v.p = F.p;
  v.trials = opt.exhaustive ? 0 : opt.trials;
  v.seed = opt.exhaustive ? 0 : opt.seed;

  // A map that is injective (into U) or surjective (from Q) keeps maximal
  // rank under every restriction/quotient on either side.
  if (opt.allow_short_circuit) {
    bool safe = M.dir == TensorSumMap<Fp>::Dir::into_u ? M.injective() : M.surjective();
    if (safe) {
      v.pass = true;
      v.short_circuit = true;
      return v;
    }
  }

  const std::vector<int> amb = detail::tuple_ambients(M, prop);
  const std::vector<std::vector<int>> profiles = opt.profiles ? *opt.profiles : detail::all_profiles(amb);
  for (const auto& pr : profiles) {
    if (pr.size() != amb.size()) throw std::invalid_argument("profile arity mismatch");
    for (std::size_t i = 0; i < pr.size(); ++i)
      if (pr[i] < 0 || pr[i] > amb[i]) throw std::invalid_argument("profile dimension out of range");
  }

  if (opt.exhaustive) {
    unsigned long long total = 0;
    for (const auto& pr : profiles) {
      unsigned long long prod = 1;
      for (std::size_t i = 0; i < pr.size(); ++i) prod = sat_mul(prod, count_subspaces(amb[i], pr[i], F.p));
      total = sat_add(total, prod);
    }
    if (total > opt.budget) throw BudgetExceededError(total, opt.budget);

    unsigned long long case_index = 0;
    for (const auto& pr : profiles) {
      std::vector<std::vector<Subspace<Fp>>> lists(pr.size());
      for (std::size_t i = 0; i < pr.size(); ++i) lists[i] = enumerate_subspaces(amb[i], pr[i], F.p, opt.budget);
      std::vector<std::size_t> idx(pr.size(), 0);
      bool any = true;
      for (std::size_t i = 0; i < pr.size(); ++i)
        if (lists[i].empty()) any = false;
      while (any) {
        std::vector<Subspace<Fp>> tuple;
        tuple.reserve(pr.size());
        for (std::size_t i = 0; i < pr.size(); ++i) tuple.push_back(lists[i][idx[i]]);
        Witness w;
        if (!detail::restriction_has_max_rank(M, prop, tuple, &w)) {
          w.case_index = case_index;
          ++v.failures;
          if (!v.witness) v.witness = w;
          if (opt.collect_failures && v.collected_failures.size() < opt.max_collected) v.collected_failures.push_back(w);
        }
        ++v.cases;
        ++case_index;
        std::size_t i = 0;
        while (i < idx.size()) {
          if (++idx[i] < lists[i].size()) break;
          idx[i] = 0;
          ++i;
        }
        if (i == idx.size()) break;
      }
    }
    v.failure_fraction = v.cases ? static_cast<double>(v.failures) / static_cast<double>(v.cases) : 0.0;
    v.worst_profile_failure_fraction = v.failure_fraction;
    v.pass = v.failures == 0;
    if (v.witness) {
      // a FAIL witness must reproduce
      Witness check;
      if (detail::restriction_has_max_rank(M, prop, v.witness->tuple, &check))
        throw std::logic_error("witness failed to reproduce");
    }
    return v;
  }

  // sampled
  double worst = 0.0;
  bool all_profiles_pass = true;
  for (std::size_t pi = 0; pi < profiles.size(); ++pi) {
    const auto& pr = profiles[pi];
    unsigned long long profile_failures = 0;
    for (int trial = 0; trial < opt.trials; ++trial) {
      SplitMix64 rng(trial_seed(opt.seed, static_cast<std::uint64_t>(trial)) ^
                     (0xa5a5a5a5deadbeefull * (static_cast<std::uint64_t>(pi) + 1)));
      std::vector<Subspace<Fp>> tuple;
      tuple.reserve(pr.size());
      for (std::size_t i = 0; i < pr.size(); ++i) tuple.push_back(random_subspace(amb[i], pr[i], F, rng.next()));
      Witness w;
      if (!detail::restriction_has_max_rank(M, prop, tuple, &w)) {
        w.trial = trial;
        ++v.failures;
        ++profile_failures;
        if (trial == 0) v.first_trial_pass = false;
        if (!v.witness) v.witness = w;
        if (opt.collect_failures && v.collected_failures.size() < opt.max_collected) v.collected_failures.push_back(w);
      }
      ++v.cases;
    }
    double frac = opt.trials ? static_cast<double>(profile_failures) / static_cast<double>(opt.trials) : 0.0;
    worst = std::max(worst, frac);
    if (1.0 - frac < opt.threshold) all_profiles_pass = false;
  }
  v.failure_fraction = v.cases ? static_cast<double>(v.failures) / static_cast<double>(v.cases) : 0.0;
  v.worst_profile_failure_fraction = worst;
  v.pass = all_profiles_pass;
  return v;
}

inline Verdict check_right_omnipresent(const TensorSumMap<Fp>& T, const FpField& F, const CheckOptions& opt) {
  return check_property(T, MrProperty::right_omnipresent, F, opt);
}
inline Verdict check_left_omnipresent(const TensorSumMap<Fp>& T, const FpField& F, const CheckOptions& opt) {
  return check_property(T, MrProperty::left_omnipresent, F, opt);
}
inline Verdict check_right_general(const TensorSumMap<Fp>& T, const FpField& F, const CheckOptions& opt) {
  return check_property(T, MrProperty::right_general, F, opt);
}
inline Verdict check_left_general(const TensorSumMap<Fp>& T, const FpField& F, const CheckOptions& opt) {
  return check_property(T, MrProperty::left_general, F, opt);
}

// ---------------------------------------------------------------------------
// Duality and the kernel/cokernel transfers
// ---------------------------------------------------------------------------

/// The dual map D T: transpose the matrix and swap the direction; the block
/// profile is preserved (dual spaces have equal dimensions).
template <class S>
TensorSumMap<S> dual_map(const TensorSumMap<S>& M) {
  TensorSumMap<S> d;
  d.dir = M.dir == TensorSumMap<S>::Dir::into_u ? TensorSumMap<S>::Dir::from_q : TensorSumMap<S>::Dir::into_u;
  d.blocks = M.blocks;
  d.matrix = M.matrix.transpose();
  return d;
}

/// For surjective T, the inclusion Ker T -> ⊕(V_i ⊗ W_i) as a from_q map.
template <class S>
TensorSumMap<S> transfer_via_kernel(const TensorSumMap<S>& T) {
  if (T.dir != TensorSumMap<S>::Dir::into_u) throw std::invalid_argument("transfer_via_kernel expects an into-U map");
  if (!T.surjective()) throw std::invalid_argument("transfer_via_kernel requires a surjective map");
  Subspace<S> ker = kernel_basis(T.matrix);
  TensorSumMap<S> s;
  s.dir = TensorSumMap<S>::Dir::from_q;
  s.blocks = T.blocks;
  s.matrix = ker.basis.transpose();
  return s;
}

/// For injective S, the projection ⊕(V_i ⊗ W_i) -> Coker S as an into-U map;
/// the cokernel coordinates are the non-pivot coordinates of Im S.
template <class S>
TensorSumMap<S> transfer_via_cokernel(const TensorSumMap<S>& M) {
  if (M.dir != TensorSumMap<S>::Dir::from_q) throw std::invalid_argument("transfer_via_cokernel expects a from-Q map");
  if (!M.injective()) throw std::invalid_argument("transfer_via_cokernel requires an injective map");
  Subspace<S> im = col_space(M.matrix);
  TensorSumMap<S> t;
  t.dir = TensorSumMap<S>::Dir::into_u;
  t.blocks = M.blocks;
  t.matrix = quotient_matrix(im);
  return t;
}

// ---------------------------------------------------------------------------
// Dimension bound
// ---------------------------------------------------------------------------

/// dim U < sum (dim V_i)^2 for surjective non-injective into-U maps with the
/// right omnipresent property (and dually for from-Q maps).  `applicable`
/// reflects the surjective/injective hypothesis; `holds` is vacuously true
/// otherwise.
struct BoundReport {
  Index lhs = 0;
  unsigned long long rhs = 0;
  bool applicable = false;
  bool holds = true;
};

template <class S>
BoundReport dimension_bound(const TensorSumMap<S>& M) {
  BoundReport r;
  for (const auto& b : M.blocks) r.rhs = sat_add(r.rhs, sat_mul(static_cast<unsigned long long>(b.dim_v), static_cast<unsigned long long>(b.dim_v)));
  Index rk = rank_of(M.matrix);
  if (M.dir == TensorSumMap<S>::Dir::into_u) {
    r.applicable = rk == M.matrix.rows() && rk < M.matrix.cols();
    r.lhs = M.matrix.rows();
  } else {
    r.applicable = rk == M.matrix.cols() && rk < M.matrix.rows();
    r.lhs = M.matrix.cols();
  }
  if (r.applicable) r.holds = static_cast<unsigned long long>(r.lhs) < r.rhs;
  return r;
}

// ---------------------------------------------------------------------------
// Generic basis certificates
// ---------------------------------------------------------------------------

/// Outcome of a sampled basis check: per trial, generic data is drawn, the
/// candidate square matrix is built, and invertibility is tested exactly.
struct BasisCertificate {
  Index dim = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t p = 0;
  int passes = 0;
  double pass_fraction = 0.0;
  long long first_pass_trial = -1;
  long long first_fail_trial = -1;
  std::vector<Mat<Fp>> first_pass_data;  // per block: the sampled generic data
  std::vector<Mat<Fp>> first_fail_data;

  bool all_passed() const { return passes == trials; }
};

/// For surjective T and chosen elements m(i,j) of V_i ⊗ W_i (a_i independent
/// ones per block, sum a_i = dim U), samples endomorphism tuples phi_i and
/// certifies that the elements T((phi_i ⊗ 1) m(i,j)) form a basis of U.
inline BasisCertificate generic_basis(const TensorSumMap<Fp>& T, const std::vector<Index>& a,
                                      const std::vector<std::vector<Mat<Fp>>>& m, int trials, std::uint64_t seed,
                                      const FpField& F) {
  if (T.dir != TensorSumMap<Fp>::Dir::into_u) throw std::invalid_argument("generic_basis expects an into-U map");
  const Index u = T.matrix.rows();
  if (a.size() != T.blocks.size() || m.size() != T.blocks.size())
    throw std::invalid_argument("generic_basis: one count and element list per block required");
  Index total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& b = T.blocks[i];
    if (a[i] < 0 || a[i] > b.dim_v * b.dim_w) throw std::invalid_argument("generic_basis: a_i out of range");
    if (static_cast<Index>(m[i].size()) != a[i]) throw std::invalid_argument("generic_basis: wrong number of elements");
    Mat<Fp> flat(a[i], b.dim_v * b.dim_w);
    flat.setZero();
    for (Index j = 0; j < a[i]; ++j) {
      if (m[i][static_cast<std::size_t>(j)].rows() != b.dim_v || m[i][static_cast<std::size_t>(j)].cols() != b.dim_w)
        throw std::invalid_argument("generic_basis: element shape mismatch");
      for (Index r = 0; r < b.dim_v; ++r)
        for (Index c = 0; c < b.dim_w; ++c) flat(j, r * b.dim_w + c) = m[i][static_cast<std::size_t>(j)](r, c);
    }
    if (rank_of(flat) != a[i]) throw std::invalid_argument("generic_basis: elements of block " + std::to_string(i) + " are dependent");
    total += a[i];
  }
  if (total != u) throw std::invalid_argument("generic_basis: sum a_i = " + std::to_string(total) + " != dim U = " + std::to_string(u));

  BasisCertificate cert;
  cert.dim = u;
  cert.trials = trials;
  cert.seed = seed;
  cert.p = F.p;
  for (int trial = 0; trial < trials; ++trial) {
    SplitMix64 rng(trial_seed(seed, static_cast<std::uint64_t>(trial)));
    std::vector<Mat<Fp>> phi;
    for (const auto& b : T.blocks) phi.push_back(random_matrix(b.dim_v, b.dim_v, F, rng));
    Mat<Fp> basis(u, u);
    basis.setConstant(F.from_int(0));
    Index col = 0;
    for (std::size_t i = 0; i < T.blocks.size(); ++i) {
      const auto& b = T.blocks[i];
      for (Index j = 0; j < a[i]; ++j) {
        Mat<Fp> y = phi[i] * m[i][static_cast<std::size_t>(j)];
        Vec<Fp> flat(b.dim_v * b.dim_w);
        for (Index r = 0; r < b.dim_v; ++r)
          for (Index c = 0; c < b.dim_w; ++c) flat[r * b.dim_w + c] = y(r, c);
        basis.col(col++) = T.matrix.middleCols(T.block_offset(i), b.dim_v * b.dim_w) * flat;
      }
    }
    bool pass = rank_of(basis) == u;
    if (pass) {
      ++cert.passes;
      if (cert.first_pass_trial < 0) {
        cert.first_pass_trial = trial;
        cert.first_pass_data = phi;
      }
    } else if (cert.first_fail_trial < 0) {
      cert.first_fail_trial = trial;
      cert.first_fail_data = phi;
    }
  }
  cert.pass_fraction = trials ? static_cast<double>(cert.passes) / static_cast<double>(trials) : 1.0;
  return cert;
}

// ---------------------------------------------------------------------------
// The basis certificate for the graded components
// ---------------------------------------------------------------------------

/// One block of the multiplication-by-arrow basis setup at (t, d): either a
/// source vertex s with the starred arrows from t to s acting on V^s_{d-1},
/// or a target vertex u with the plain arrows from t to u acting on V^u_d.
template <class S>
struct HlBlock {
  int vertex;
  bool starred;                       // starred blocks come first
  std::vector<int> arrows;            // base arrow ids, increasing
  std::shared_ptr<const GradedComponent<S>> comp;
  std::vector<Mat<S>> mult;           // per arrow: dim U x dim comp, unit coefficient
  int n = 1;                          // sampled elements per block
  Index c = 0;                        // extra products of the last element
};

template <class S>
struct HlAnalog {
  int t, d;
  std::shared_ptr<const GradedComponent<S>> target;
  std::vector<HlBlock<S>> blocks;
  BasisCertificate certificate;
};

/// Certifies that generic products F_{i,k} * arrow span V^t_d, with the
/// element counts n_i and the split c = c_1 + ... + c_l as configured (or
/// chosen greedily when omitted): the products take all arrows of a block
/// for the first n_i - 1 sampled elements and the first c_i arrows for the
/// last one.
template <class Field>
HlAnalog<typename Field::Scalar> hl_analog_basis(ComponentCache<Field>& cache, int t, int d,
                                                 const std::vector<int>* n_override, const std::vector<Index>* c_override,
                                                 int trials, std::uint64_t seed) {
  using S = typename Field::Scalar;
  static_assert(std::is_same_v<S, Fp>, "basis sampling requires a prime field");
  if (d <= 0) throw std::invalid_argument("hl_analog_basis requires d > 0");
  auto target = cache.component(t, d);
  if (target->is_zero()) throw ZeroComponentError("hl_analog_basis: V^t_d is zero");
  const Quiver& q = cache.quiver();

  HlAnalog<S> out;
  out.t = t;
  out.d = d;
  out.target = target;

  // starred blocks (source vertices of arrows into t), then plain blocks
  std::map<int, std::vector<int>> ins, outs;
  for (const Arrow& a : q.arrows()) {
    if (a.target == t) ins[a.source].push_back(a.id);
    if (a.source == t) outs[a.target].push_back(a.id);
  }
  for (const auto& [s, arrows] : ins) {
    HlBlock<S> b;
    b.vertex = s;
    b.starred = true;
    b.arrows = arrows;
    b.comp = cache.component(s, d - 1);
    out.blocks.push_back(std::move(b));
  }
  for (const auto& [u, arrows] : outs) {
    HlBlock<S> b;
    b.vertex = u;
    b.starred = false;
    b.arrows = arrows;
    b.comp = cache.component(u, d);
    out.blocks.push_back(std::move(b));
  }
  for (auto& b : out.blocks) {
    for (int id : b.arrows) {
      int did = b.starred ? cache.doubled().star_of(id) : id;
      b.mult.push_back(right_mult_matrix(*b.comp, cache.doubled().darrow(did), *target));
    }
  }

  const Index u_dim = target->dim;
  // element counts n_i: 1 <= n_i <= dim V_i, sum(n_i - 1) |W_i| < dim U <= sum n_i |W_i|
  if (n_override) {
    if (n_override->size() != out.blocks.size()) throw std::invalid_argument("hl_analog_basis: n arity mismatch");
    for (std::size_t i = 0; i < out.blocks.size(); ++i) {
      int cap = static_cast<int>(std::max<Index>(out.blocks[i].comp->dim, 1));
      if ((*n_override)[i] < 1 || (*n_override)[i] > cap) throw std::invalid_argument("hl_analog_basis: n_i out of range");
      out.blocks[i].n = (*n_override)[i];
    }
  } else {
    auto sum_nw = [&]() {
      Index s0 = 0;
      for (const auto& b : out.blocks) s0 += static_cast<Index>(b.n) * static_cast<Index>(b.arrows.size());
      return s0;
    };
    bool progress = true;
    while (sum_nw() < u_dim && progress) {
      progress = false;
      for (auto& b : out.blocks) {
        if (static_cast<Index>(b.n) < b.comp->dim && !b.arrows.empty()) {
          ++b.n;
          progress = true;
          break;
        }
      }
    }
  }
  Index lower = 0, upper = 0;
  for (const auto& b : out.blocks) {
    lower += static_cast<Index>(b.n - 1) * static_cast<Index>(b.arrows.size());
    upper += static_cast<Index>(b.n) * static_cast<Index>(b.arrows.size());
  }
  if (!(lower < u_dim && u_dim <= upper))
    throw std::invalid_argument("hl_analog_basis: counts violate sum(n_i-1)|W_i| < dim V^t_d <= sum n_i |W_i| (" +
                                std::to_string(lower) + " < " + std::to_string(u_dim) + " <= " + std::to_string(upper) + ")");

  Index c = u_dim - lower;
  if (c_override) {
    if (c_override->size() != out.blocks.size()) throw std::invalid_argument("hl_analog_basis: c arity mismatch");
    Index sum = 0;
    for (std::size_t i = 0; i < out.blocks.size(); ++i) {
      Index ci = (*c_override)[i];
      if (ci < 0 || ci > static_cast<Index>(out.blocks[i].arrows.size())) throw std::invalid_argument("hl_analog_basis: c_i out of range");
      out.blocks[i].c = ci;
      sum += ci;
    }
    if (sum != c) throw std::invalid_argument("hl_analog_basis: c split sums to " + std::to_string(sum) + ", expected " + std::to_string(c));
  } else {
    Index rem = c;
    for (auto& b : out.blocks) {
      Index cap = b.comp->dim > 0 ? static_cast<Index>(b.arrows.size()) : 0;
      b.c = std::min(cap, rem);
      rem -= b.c;
    }
    if (rem != 0) throw std::invalid_argument("hl_analog_basis: greedy split cannot place " + std::to_string(rem) + " products");
  }

  BasisCertificate& cert = out.certificate;
  cert.dim = u_dim;
  cert.trials = trials;
  cert.seed = seed;
  cert.p = cache.field().p;
  for (int trial = 0; trial < trials; ++trial) {
    SplitMix64 rng(trial_seed(seed, static_cast<std::uint64_t>(trial)));
    std::vector<Mat<Fp>> samples;  // per block: dim V_i x n_i
    for (const auto& b : out.blocks) samples.push_back(random_matrix(b.comp->dim, b.n, cache.field(), rng));
    Mat<Fp> basis(u_dim, u_dim);
    basis.setConstant(cache.field().from_int(0));
    Index col = 0;
    for (std::size_t i = 0; i < out.blocks.size(); ++i) {
      const auto& b = out.blocks[i];
      for (int k = 0; k + 1 <= b.n - 1; ++k)
        for (std::size_t j = 0; j < b.arrows.size(); ++j) basis.col(col++) = b.mult[j] * samples[i].col(k);
      for (Index j = 0; j < b.c; ++j) basis.col(col++) = b.mult[static_cast<std::size_t>(j)] * samples[i].col(b.n - 1);
    }
    if (col != u_dim) throw std::logic_error("hl_analog_basis: product count mismatch");
    bool pass = rank_of(basis) == u_dim;
    if (pass) {
      ++cert.passes;
      if (cert.first_pass_trial < 0) {
        cert.first_pass_trial = trial;
        cert.first_pass_data = samples;
      }
    } else if (cert.first_fail_trial < 0) {
      cert.first_fail_trial = trial;
      cert.first_fail_data = samples;
    }
  }
  cert.pass_fraction = trials ? static_cast<double>(cert.passes) / static_cast<double>(trials) : 1.0;
  return out;
}

}  // namespace ppa

#endif  // PPA_MAXRANK_HPP
