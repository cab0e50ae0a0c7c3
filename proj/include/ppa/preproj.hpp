#ifndef PPA_PREPROJ_HPP
#define PPA_PREPROJ_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ppa/linalg.hpp"
#include "ppa/quiver.hpp"

namespace ppa {

struct ZeroComponentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Quiver representations
// ---------------------------------------------------------------------------

/// A representation of the base quiver: one coordinate space per vertex and
/// one matrix per arrow (action of gamma: u -> v is a vdims[v] x vdims[u]
/// matrix).
template <class S>
struct QuiverRep {
  std::vector<Index> vdims;
  std::vector<Mat<S>> action;  // indexed by base arrow id

  Index dim() const {
    Index total = 0;
    for (Index d : vdims) total += d;
    return total;
  }
  Index offset(int v) const {
    Index o = 0;
    for (int u = 0; u < v; ++u) o += vdims[static_cast<std::size_t>(u)];
    return o;
  }

  static QuiverRep zero(const Quiver& q) {
    QuiverRep r;
    r.vdims.assign(static_cast<std::size_t>(q.vertex_count()), 0);
    for (const auto& a : q.arrows()) {
      (void)a;
      r.action.push_back(Mat<S>(0, 0));
    }
    return r;
  }
};

template <class S>
QuiverRep<S> direct_sum(const Quiver& q, const std::vector<const QuiverRep<S>*>& parts) {
  QuiverRep<S> r = QuiverRep<S>::zero(q);
  for (const auto* p : parts)
    for (int v = 0; v < q.vertex_count(); ++v) r.vdims[static_cast<std::size_t>(v)] += p->vdims[static_cast<std::size_t>(v)];
  for (const auto& a : q.arrows()) {
    Mat<S> m(r.vdims[static_cast<std::size_t>(a.target)], r.vdims[static_cast<std::size_t>(a.source)]);
    m.setZero();
    Index ro = 0, co = 0;
    for (const auto* p : parts) {
      Index pr = p->vdims[static_cast<std::size_t>(a.target)], pc = p->vdims[static_cast<std::size_t>(a.source)];
      m.block(ro, co, pr, pc) = p->action[static_cast<std::size_t>(a.id)];
      ro += pr;
      co += pc;
    }
    r.action[static_cast<std::size_t>(a.id)] = std::move(m);
  }
  return r;
}

/// A morphism of representations: per-vertex matrices intertwining the arrow
/// actions.
template <class S>
struct RepMorphism {
  QuiverRep<S> source;
  QuiverRep<S> target;
  std::vector<Mat<S>> maps;  // per vertex, target.vdims[v] x source.vdims[v]

  bool intertwines(const Quiver& q) const {
    for (const auto& a : q.arrows()) {
      Mat<S> lhs = target.action[static_cast<std::size_t>(a.id)] * maps[static_cast<std::size_t>(a.source)];
      Mat<S> rhs = maps[static_cast<std::size_t>(a.target)] * source.action[static_cast<std::size_t>(a.id)];
      if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) return false;
      for (Index i = 0; i < lhs.rows(); ++i)
        for (Index j = 0; j < lhs.cols(); ++j)
          if (!(lhs(i, j) == rhs(i, j))) return false;
    }
    return true;
  }

  /// Vertex-major flat matrix of the morphism.
  Mat<S> flat() const {
    Mat<S> m(target.dim(), source.dim());
    m.setZero();
    Index ro = 0, co = 0;
    for (std::size_t v = 0; v < maps.size(); ++v) {
      m.block(ro, co, maps[v].rows(), maps[v].cols()) = maps[v];
      ro += maps[v].rows();
      co += maps[v].cols();
    }
    return m;
  }
};

// ---------------------------------------------------------------------------
// Graded components V^t_d
// ---------------------------------------------------------------------------

/// The degree-d component of paths starting at t, presented as a base-quiver
/// representation.  `paths` spans the degree-d slice of the doubled path
/// algebra; `relations` is the slice of the commutator ideal inside it; the
/// basis of the quotient is the set of non-pivot paths, grouped by end
/// vertex (the module grading).  Coordinates are vertex-major.
template <class S>
struct GradedComponent {
  int t = 0;
  int d = -1;
  Index dim = 0;

  std::vector<Path> paths;           // canonical order
  SparseEchelon<S> relations;        // RREF of the relation slice
  std::vector<Index> col_to_flat;    // path column -> flat coordinate (-1 if eliminated)
  std::vector<Path> flat_paths;      // basis paths in flat (vertex-major) order
  std::vector<std::vector<Path>> basis_paths;  // per end vertex
  std::vector<Index> vertex_dims;
  std::vector<Index> vertex_offsets;
  QuiverRep<S> rep;

  bool is_zero() const { return dim == 0; }

  /// Column of a path in `paths`, or -1.
  Index path_col(const Path& p) const {
    auto it = std::lower_bound(paths.begin(), paths.end(), p);
    if (it == paths.end() || !(*it == p)) return -1;
    return static_cast<Index>(it - paths.begin());
  }

  /// Image of a path-space vector in the quotient, in flat coordinates.
  Vec<S> reduce(const SparseVec<S>& wvec) const {
    Vec<S> out(dim);
    out.setZero();
    for (const auto& [c, x] : relations.reduce(wvec)) out[col_to_flat[static_cast<std::size_t>(c)]] += x;
    return out;
  }
};

// ---------------------------------------------------------------------------
// Component cache: memoized construction of paths, relation slices and
// graded components for one (quiver, weights, field) context.
// ---------------------------------------------------------------------------

template <class Field>
class ComponentCache {
 public:
  using S = typename Field::Scalar;

  ComponentCache(const DoubledQuiver& dq, const Weights& w, Field field)
      : dq_(dq), w_(w), F_(field) {}

  const DoubledQuiver& doubled() const { return dq_; }
  const Quiver& quiver() const { return dq_.base(); }
  const Weights& weights() const { return w_; }
  const Field& field() const { return F_; }

  const std::vector<Path>& paths(int t, int d) {
    auto key = std::make_pair(t, d);
    auto it = paths_.find(key);
    if (it == paths_.end()) it = paths_.emplace(key, paths_of_degree(dq_, t, d)).first;
    return it->second;
  }

  /// RREF of the relation slice J ∩ W^t_d.  Built from the recursion
  ///   R^t_d = (⊕_{δ out of t} R^{e(δ)}_{d-deg δ} · δ)  +  span{x·m_t},
  /// which spans the same subspace as the full set {x · m_s · y} because a
  /// path y from t either is trivial or factors through its first-traversed
  /// arrow δ.  The per-arrow images live on disjoint path columns, so the
  /// memoized echelon bases concatenate without elimination.
  const SparseEchelon<S>& relations(int t, int d) {
    auto key = std::make_pair(t, d);
    auto it = rels_.find(key);
    if (it != rels_.end()) return it->second;

    const auto& pd = paths(t, d);
    SparseEchelon<S> e(static_cast<Index>(pd.size()));
    if (d >= 1) {
      for (int id : dq_.out(t)) {
        const DArrow& del = dq_.darrow(id);
        int c = d - del.degree();
        if (c < 0) continue;
        const auto& sub = paths(del.target, c);
        const auto& rsub = relations(del.target, c);
        // column map q -> q·δ (strictly increasing)
        std::vector<Index> colmap(sub.size());
        for (std::size_t i = 0; i < sub.size(); ++i) {
          Index col = col_of(pd, sub[i].times(del));
          colmap[i] = col;
        }
        for (const auto& [pc, row] : rsub.rows()) {
          SparseVec<S> mapped;
          mapped.reserve(row.size());
          for (const auto& [c2, x] : row) mapped.emplace_back(colmap[static_cast<std::size_t>(c2)], x);
          e.insert(mapped);
        }
      }
      for (const Path& x : paths(t, d - 1)) {
        SparseVec<S> row = m_row(x, t, pd);
        if (!row.empty()) e.insert(row);
      }
    }
    return rels_.emplace(key, std::move(e)).first->second;
  }

  /// The graded component V^t_d; d = -1 yields the zero component.
  std::shared_ptr<const GradedComponent<S>> component(int t, int d) {
    auto key = std::make_pair(t, d);
    auto it = comps_.find(key);
    if (it != comps_.end()) return it->second;

    auto gc = std::make_shared<GradedComponent<S>>();
    gc->t = t;
    gc->d = d;
    const int n = dq_.vertex_count();
    gc->basis_paths.resize(static_cast<std::size_t>(n));
    gc->vertex_dims.assign(static_cast<std::size_t>(n), 0);
    gc->vertex_offsets.assign(static_cast<std::size_t>(n), 0);
    gc->rep = QuiverRep<S>::zero(dq_.base());

    if (d >= 0) {
      gc->paths = paths(t, d);
      gc->relations = relations(t, d);
      gc->col_to_flat.assign(gc->paths.size(), -1);
      // basis paths grouped by end vertex, canonical order within a vertex
      for (Index c : gc->relations.non_pivots()) {
        const Path& p = gc->paths[static_cast<std::size_t>(c)];
        gc->basis_paths[static_cast<std::size_t>(p.end)].push_back(p);
        ++gc->vertex_dims[static_cast<std::size_t>(p.end)];
      }
      Index off = 0;
      for (int v = 0; v < n; ++v) {
        gc->vertex_offsets[static_cast<std::size_t>(v)] = off;
        off += gc->vertex_dims[static_cast<std::size_t>(v)];
      }
      gc->dim = off;
      std::vector<Index> next(static_cast<std::size_t>(n), 0);
      for (Index c : gc->relations.non_pivots()) {
        const Path& p = gc->paths[static_cast<std::size_t>(c)];
        gc->col_to_flat[static_cast<std::size_t>(c)] =
            gc->vertex_offsets[static_cast<std::size_t>(p.end)] + next[static_cast<std::size_t>(p.end)]++;
      }
      gc->flat_paths.resize(static_cast<std::size_t>(gc->dim));
      for (int v = 0; v < n; ++v)
        for (std::size_t j = 0; j < gc->basis_paths[static_cast<std::size_t>(v)].size(); ++j)
          gc->flat_paths[static_cast<std::size_t>(gc->vertex_offsets[static_cast<std::size_t>(v)]) + j] =
              gc->basis_paths[static_cast<std::size_t>(v)][j];

      // arrow actions: left multiplication by each base arrow
      gc->rep.vdims = gc->vertex_dims;
      for (const Arrow& a : dq_.base().arrows()) {
        Index dv = gc->vertex_dims[static_cast<std::size_t>(a.target)];
        Index du = gc->vertex_dims[static_cast<std::size_t>(a.source)];
        Mat<S> m(dv, du);
        m.setZero();
        const auto& bp = gc->basis_paths[static_cast<std::size_t>(a.source)];
        for (std::size_t j = 0; j < bp.size(); ++j) {
          Path q = bp[j].times_left(dq_.darrow(a.id));
          Index col = col_of(gc->paths, q);
          Vec<S> red = gc->reduce({{col, F_.from_int(1)}});
          for (Index i = 0; i < dv; ++i) m(i, static_cast<Index>(j)) = red[gc->vertex_offsets[static_cast<std::size_t>(a.target)] + i];
          // left multiplication preserves the start vertex and moves the end
          // vertex along the arrow, so the image is supported on a.target
          for (int v = 0; v < n; ++v) {
            if (v == a.target) continue;
            for (Index i = 0; i < gc->vertex_dims[static_cast<std::size_t>(v)]; ++i)
              if (!(red[gc->vertex_offsets[static_cast<std::size_t>(v)] + i] == S(0)))
                throw std::logic_error("arrow action leaked across vertex blocks");
          }
        }
        gc->rep.action[static_cast<std::size_t>(a.id)] = std::move(m);
      }
    }

    comps_.emplace(key, gc);
    return gc;
  }

  /// Spanning vectors x·m_s·y of the relation slice J ∩ W^t_d, expanded in
  /// the path basis: y runs over paths from t, x over paths from the end of
  /// y, with deg x + deg y + 1 = d.  Exact but quadratic in the slice size;
  /// `relations` computes the same subspace incrementally.
  Mat<S> relation_spanning_set(int t, int d) {
    const auto& pd = paths(t, d);
    std::vector<SparseVec<S>> rows;
    for (int g = 0; g + 1 <= d; ++g) {
      for (const Path& y : paths(t, g)) {
        int s = y.end;
        for (const Path& x : paths(s, d - 1 - g)) {
          SparseVec<S> row = msy_row(x, s, y, pd);
          if (!row.empty()) rows.push_back(std::move(row));
        }
      }
    }
    Mat<S> m(static_cast<Index>(rows.size()), static_cast<Index>(pd.size()));
    m.setZero();
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (const auto& [c, x] : rows[i]) m(static_cast<Index>(i), c) = x;
    return m;
  }

 private:
  static Index col_of(const std::vector<Path>& paths, const Path& p) {
    auto it = std::lower_bound(paths.begin(), paths.end(), p);
    if (it == paths.end() || !(*it == p)) throw std::logic_error("path missing from slice enumeration");
    return static_cast<Index>(it - paths.begin());
  }

  // x · m_t  (y trivial)
  SparseVec<S> m_row(const Path& x, int t, const std::vector<Path>& pd) const {
    return msy_row(x, t, Path::trivial(t), pd);
  }

  // x · m_s · y expanded in the path basis of W^{y.start}_d
  SparseVec<S> msy_row(const Path& x, int s, const Path& y, const std::vector<Path>& pd) const {
    std::map<Index, S> acc;
    auto add = [&](std::vector<int> arrows, const S& coeff) {
      Path p;
      p.start = y.start;
      p.end = x.end;
      p.degree = x.degree + y.degree + 1;
      p.arrows = std::move(arrows);
      Index col = col_of(pd, p);
      auto [it, fresh] = acc.emplace(col, coeff);
      if (!fresh) it->second += coeff;
    };
    for (const Arrow& g : dq_.base().arrows()) {
      if (g.source == s) {  // + a(g) x (g* g) y
        std::vector<int> arrows = x.arrows;
        arrows.push_back(dq_.star_of(g.id));
        arrows.push_back(g.id);
        arrows.insert(arrows.end(), y.arrows.begin(), y.arrows.end());
        add(std::move(arrows), F_.from_int(w_.a[static_cast<std::size_t>(g.id)]));
      }
      if (g.target == s) {  // - b(g) x (g g*) y
        std::vector<int> arrows = x.arrows;
        arrows.push_back(g.id);
        arrows.push_back(dq_.star_of(g.id));
        arrows.insert(arrows.end(), y.arrows.begin(), y.arrows.end());
        add(std::move(arrows), -F_.from_int(w_.b[static_cast<std::size_t>(g.id)]));
      }
    }
    SparseVec<S> row;
    row.reserve(acc.size());
    for (auto& [c, v] : acc)
      if (!(v == S(0))) row.emplace_back(c, v);
    return row;
  }

  const DoubledQuiver& dq_;
  const Weights& w_;
  Field F_;
  std::map<std::pair<int, int>, std::vector<Path>> paths_;
  std::map<std::pair<int, int>, SparseEchelon<S>> rels_;
  std::map<std::pair<int, int>, std::shared_ptr<const GradedComponent<S>>> comps_;
};

// ---------------------------------------------------------------------------
// The multiplication maps g^t_d and f^t_d
// ---------------------------------------------------------------------------

/// Flat matrix of right multiplication by the doubled arrow `del` from `src`
/// into `dst` (unit coefficient).
template <class S>
Mat<S> right_mult_matrix(const GradedComponent<S>& src, const DArrow& del, const GradedComponent<S>& dst) {
  Mat<S> m(dst.dim, src.dim);
  m.setZero();
  for (Index j = 0; j < src.dim; ++j) {
    Path q = src.flat_paths[static_cast<std::size_t>(j)].times(del);
    Index col = dst.path_col(q);
    if (col < 0) throw std::logic_error("right multiplication left the slice");
    m.col(j) = dst.reduce({{col, S(1)}});
  }
  return m;
}

/// One summand of the source (for g) or target (for f) of a multiplication
/// map, together with the block it contributes.
template <class S>
struct SummandTerm {
  int arrow;    // base arrow id
  bool starred; // true when the block multiplies by the starred arrow
  std::shared_ptr<const GradedComponent<S>> comp;
  S coeff;
  Mat<S> block;
};

/// Summands grouped by isomorphism class; components at distinct (vertex,
/// degree) pairs are nonisomorphic, and parallel arrows contribute the
/// multiplicity.
template <class S>
struct DecompClass {
  std::shared_ptr<const GradedComponent<S>> comp;
  int multiplicity;
};

template <class S>
std::vector<DecompClass<S>> group_classes(const std::vector<SummandTerm<S>>& terms) {
  std::vector<DecompClass<S>> classes;
  for (const auto& term : terms) {
    if (!classes.empty() && classes.back().comp->t == term.comp->t && classes.back().comp->d == term.comp->d)
      ++classes.back().multiplicity;
    else
      classes.push_back(DecompClass<S>{term.comp, 1});
  }
  return classes;
}

namespace detail {

/// Canonical summand order shared by g^t_{d+1} and f^t_d: arrows out of t
/// grouped by target vertex, then arrows into t grouped by source vertex;
/// parallel arrows are adjacent.
inline std::vector<std::pair<int, bool>> middle_arrows(const Quiver& q, int t) {
  std::vector<std::pair<int, bool>> order;  // (arrow id, is out-arrow)
  std::vector<std::pair<int, int>> outs, ins;
  for (const Arrow& a : q.arrows()) {
    if (a.source == t) outs.emplace_back(a.target, a.id);
    if (a.target == t) ins.emplace_back(a.source, a.id);
  }
  std::sort(outs.begin(), outs.end());
  std::sort(ins.begin(), ins.end());
  for (auto& [v, id] : outs) order.emplace_back(id, true);
  for (auto& [v, id] : ins) order.emplace_back(id, false);
  return order;
}

}  // namespace detail

/// The map into V^t_d induced by the right multiplications: for each arrow
/// gamma out of t the block (a(gamma) beta): V^{e(gamma)}_d -> V^t_d, and for
/// each gamma into t the block (-b(gamma) beta*): V^{s(gamma)}_{d-1} -> V^t_d.
template <class S>
struct GMap {
  int t, d;
  std::shared_ptr<const GradedComponent<S>> target;
  std::vector<SummandTerm<S>> terms;
  std::vector<DecompClass<S>> classes;
  Mat<S> flat;  // dim V^t_d  x  sum of summand dims

  Index domain_dim() const { return flat.cols(); }
};

template <class Field>
GMap<typename Field::Scalar> right_mult_g(ComponentCache<Field>& cache, int t, int d) {
  using S = typename Field::Scalar;
  auto target = cache.component(t, d);
  if (target->is_zero())
    throw ZeroComponentError("right multiplication map into the zero component (t=" + std::to_string(t + 1) +
                             ", d=" + std::to_string(d) + ")");
  GMap<S> g;
  g.t = t;
  g.d = d;
  g.target = target;
  const Quiver& q = cache.quiver();
  for (auto [id, is_out] : detail::middle_arrows(q, t)) {
    const Arrow& a = q.arrow(id);
    SummandTerm<S> term;
    term.arrow = id;
    if (is_out) {
      term.starred = false;
      term.comp = cache.component(a.target, d);
      term.coeff = cache.field().from_int(cache.weights().a[static_cast<std::size_t>(id)]);
      term.block = term.coeff * right_mult_matrix(*term.comp, cache.doubled().darrow(id), *target);
    } else {
      term.starred = true;
      term.comp = cache.component(a.source, d - 1);
      term.coeff = -cache.field().from_int(cache.weights().b[static_cast<std::size_t>(id)]);
      term.block = term.coeff * right_mult_matrix(*term.comp, cache.doubled().darrow(cache.doubled().star_of(id)), *target);
    }
    g.terms.push_back(std::move(term));
  }
  g.classes = group_classes(g.terms);
  Index total = 0;
  for (const auto& term : g.terms) total += term.comp->dim;
  g.flat = Mat<S>(target->dim, total);
  Index off = 0;
  for (const auto& term : g.terms) {
    g.flat.middleCols(off, term.comp->dim) = term.block;
    off += term.comp->dim;
  }
  return g;
}

/// The map out of V^t_d induced by the right multiplications: for each arrow
/// gamma out of t the block (beta*): V^t_d -> V^{e(gamma)}_{d+1}, and for
/// each gamma into t the block (beta): V^t_d -> V^{s(gamma)}_d.
template <class S>
struct FMap {
  int t, d;
  std::shared_ptr<const GradedComponent<S>> source;
  std::vector<SummandTerm<S>> terms;
  std::vector<DecompClass<S>> classes;
  Mat<S> flat;  // sum of summand dims  x  dim V^t_d

  Index codomain_dim() const { return flat.rows(); }
};

template <class Field>
FMap<typename Field::Scalar> left_mult_f(ComponentCache<Field>& cache, int t, int d) {
  using S = typename Field::Scalar;
  auto source = cache.component(t, d);
  if (source->is_zero())
    throw ZeroComponentError("left multiplication map out of the zero component (t=" + std::to_string(t + 1) +
                             ", d=" + std::to_string(d) + ")");
  FMap<S> f;
  f.t = t;
  f.d = d;
  f.source = source;
  const Quiver& q = cache.quiver();
  for (auto [id, is_out] : detail::middle_arrows(q, t)) {
    const Arrow& a = q.arrow(id);
    SummandTerm<S> term;
    term.arrow = id;
    term.coeff = cache.field().from_int(1);
    if (is_out) {
      term.starred = true;
      term.comp = cache.component(a.target, d + 1);
      term.block = right_mult_matrix(*source, cache.doubled().darrow(cache.doubled().star_of(id)), *term.comp);
    } else {
      term.starred = false;
      term.comp = cache.component(a.source, d);
      term.block = right_mult_matrix(*source, cache.doubled().darrow(id), *term.comp);
    }
    f.terms.push_back(std::move(term));
  }
  f.classes = group_classes(f.terms);
  Index total = 0;
  for (const auto& term : f.terms) total += term.comp->dim;
  f.flat = Mat<S>(total, source->dim);
  Index off = 0;
  for (const auto& term : f.terms) {
    f.flat.middleRows(off, term.comp->dim) = term.block;
    off += term.comp->dim;
  }
  return f;
}

/// Per-vertex view of g as a morphism from the ordered direct sum of its
/// summands; the blocks stay inside matching vertex slices because right
/// multiplication preserves end vertices.
template <class S>
RepMorphism<S> to_rep_morphism(const Quiver& q, const GMap<S>& g) {
  std::vector<const QuiverRep<S>*> parts;
  for (const auto& term : g.terms) parts.push_back(&term.comp->rep);
  RepMorphism<S> m;
  m.source = direct_sum(q, parts);
  m.target = g.target->rep;
  const int n = q.vertex_count();
  m.maps.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    Mat<S> mat(g.target->vertex_dims[static_cast<std::size_t>(v)], m.source.vdims[static_cast<std::size_t>(v)]);
    mat.setZero();
    Index co = 0;
    for (const auto& term : g.terms) {
      Index tc = term.comp->vertex_dims[static_cast<std::size_t>(v)];
      mat.middleCols(co, tc) = term.block.block(g.target->vertex_offsets[static_cast<std::size_t>(v)],
                                                term.comp->vertex_offsets[static_cast<std::size_t>(v)],
                                                g.target->vertex_dims[static_cast<std::size_t>(v)], tc);
      co += tc;
    }
    m.maps[static_cast<std::size_t>(v)] = std::move(mat);
  }
  return m;
}

template <class S>
RepMorphism<S> to_rep_morphism(const Quiver& q, const FMap<S>& f) {
  std::vector<const QuiverRep<S>*> parts;
  for (const auto& term : f.terms) parts.push_back(&term.comp->rep);
  RepMorphism<S> m;
  m.source = f.source->rep;
  m.target = direct_sum(q, parts);
  const int n = q.vertex_count();
  m.maps.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    Mat<S> mat(m.target.vdims[static_cast<std::size_t>(v)], f.source->vertex_dims[static_cast<std::size_t>(v)]);
    mat.setZero();
    Index ro = 0;
    for (const auto& term : f.terms) {
      Index tr = term.comp->vertex_dims[static_cast<std::size_t>(v)];
      mat.middleRows(ro, tr) = term.block.block(term.comp->vertex_offsets[static_cast<std::size_t>(v)],
                                                f.source->vertex_offsets[static_cast<std::size_t>(v)], tr,
                                                f.source->vertex_dims[static_cast<std::size_t>(v)]);
      ro += tr;
    }
    m.maps[static_cast<std::size_t>(v)] = std::move(mat);
  }
  return m;
}

/// The short exact sequence V^t_d -> middle -> V^t_{d+1} built from f^t_d and
/// g^t_{d+1}; both maps share the same ordered middle term.
template <class S>
struct ARSequence {
  FMap<S> f;
  GMap<S> g;
  std::vector<DecompClass<S>> middle_classes;

  Index middle_dim() const { return f.flat.rows(); }
};

template <class Field>
ARSequence<typename Field::Scalar> ar_sequence(ComponentCache<Field>& cache, int t, int d) {
  using S = typename Field::Scalar;
  auto left = cache.component(t, d);
  auto right = cache.component(t, d + 1);
  if (left->is_zero()) throw ZeroComponentError("sequence start V^t_d is zero");
  if (right->is_zero()) throw ZeroComponentError("sequence end V^t_{d+1} is zero");
  ARSequence<S> seq{left_mult_f(cache, t, d), right_mult_g(cache, t, d + 1), {}};
  for (std::size_t i = 0; i < seq.f.terms.size(); ++i) {
    if (seq.f.terms[i].comp->t != seq.g.terms[i].comp->t || seq.f.terms[i].comp->d != seq.g.terms[i].comp->d)
      throw std::logic_error("middle terms of f and g disagree");
  }
  seq.middle_classes = seq.f.classes;
  return seq;
}

// ---------------------------------------------------------------------------
// Hom spaces and indecomposability
// ---------------------------------------------------------------------------

template <class S>
struct HomSpace {
  Index dim = 0;
  std::vector<RepMorphism<S>> basis;
};

/// Solves the intertwining system N_gamma f_u = f_v M_gamma for all arrows.
template <class S>
HomSpace<S> hom_space(const Quiver& q, const QuiverRep<S>& M, const QuiverRep<S>& N) {
  const int n = q.vertex_count();
  std::vector<Index> uoff(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 0; v < n; ++v)
    uoff[static_cast<std::size_t>(v) + 1] =
        uoff[static_cast<std::size_t>(v)] + N.vdims[static_cast<std::size_t>(v)] * M.vdims[static_cast<std::size_t>(v)];
  const Index unknowns = uoff[static_cast<std::size_t>(n)];
  Index eqs = 0;
  for (const Arrow& a : q.arrows()) eqs += N.vdims[static_cast<std::size_t>(a.target)] * M.vdims[static_cast<std::size_t>(a.source)];

  Mat<S> sys(eqs, unknowns);
  sys.setZero();
  Index row = 0;
  auto idx = [&](int v, Index r, Index c) { return uoff[static_cast<std::size_t>(v)] + r * M.vdims[static_cast<std::size_t>(v)] + c; };
  for (const Arrow& a : q.arrows()) {
    const Mat<S>& Ng = N.action[static_cast<std::size_t>(a.id)];
    const Mat<S>& Mg = M.action[static_cast<std::size_t>(a.id)];
    for (Index r = 0; r < N.vdims[static_cast<std::size_t>(a.target)]; ++r) {
      for (Index c = 0; c < M.vdims[static_cast<std::size_t>(a.source)]; ++c) {
        for (Index s = 0; s < N.vdims[static_cast<std::size_t>(a.source)]; ++s) sys(row, idx(a.source, s, c)) += Ng(r, s);
        for (Index s = 0; s < M.vdims[static_cast<std::size_t>(a.target)]; ++s) sys(row, idx(a.target, r, s)) -= Mg(s, c);
        ++row;
      }
    }
  }

  Subspace<S> ker = kernel_basis(sys);
  HomSpace<S> out;
  out.dim = ker.dim();
  for (Index k = 0; k < ker.dim(); ++k) {
    RepMorphism<S> h;
    h.source = M;
    h.target = N;
    h.maps.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      Mat<S> m(N.vdims[static_cast<std::size_t>(v)], M.vdims[static_cast<std::size_t>(v)]);
      m.setZero();
      for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c) m(r, c) = ker.basis(k, idx(v, r, c));
      h.maps[static_cast<std::size_t>(v)] = std::move(m);
    }
    out.basis.push_back(std::move(h));
  }
  return out;
}

/// Endomorphism-ring locality test over a prime field: enumerates End(M) and
/// checks that the non-invertible elements form a linear subspace.
inline bool is_indecomposable(const Quiver& q, const QuiverRep<Fp>& M, const FpField& F,
                              unsigned long long budget = 1u << 20) {
  if (M.dim() == 0) return false;
  HomSpace<Fp> endo = hom_space(q, M, M);
  const Index k = endo.dim;
  unsigned long long total = 1;
  for (Index i = 0; i < k; ++i) total = sat_mul(total, F.p);
  if (total > budget) throw BudgetExceededError(total, budget);

  std::vector<std::vector<std::uint64_t>> noninvertible;
  std::vector<std::uint64_t> coeff(static_cast<std::size_t>(k), 0);
  for (unsigned long long it = 0; it < total; ++it) {
    bool invertible = true;
    for (int v = 0; v < q.vertex_count() && invertible; ++v) {
      Index dv = M.vdims[static_cast<std::size_t>(v)];
      if (dv == 0) continue;
      Mat<Fp> e(dv, dv);
      e.setConstant(F.from_int(0));
      for (Index i = 0; i < k; ++i)
        if (coeff[static_cast<std::size_t>(i)])
          e += F.from_int(static_cast<long long>(coeff[static_cast<std::size_t>(i)])) * endo.basis[static_cast<std::size_t>(i)].maps[static_cast<std::size_t>(v)];
      if (rank_of(e) < dv) invertible = false;
    }
    if (!invertible) noninvertible.push_back(coeff);
    // odometer over F_p^k
    std::size_t t = 0;
    while (t < coeff.size()) {
      if (++coeff[t] < F.p) break;
      coeff[t] = 0;
      ++t;
    }
  }

  Mat<Fp> rows(static_cast<Index>(noninvertible.size()), k);
  rows.setConstant(F.from_int(0));
  for (std::size_t i = 0; i < noninvertible.size(); ++i)
    for (Index j = 0; j < k; ++j) rows(static_cast<Index>(i), j) = F.from_int(static_cast<long long>(noninvertible[i][static_cast<std::size_t>(j)]));
  Index span = rank_of(rows);
  unsigned long long subspace_size = 1;
  for (Index i = 0; i < span; ++i) subspace_size = sat_mul(subspace_size, F.p);
  return subspace_size == noninvertible.size();
}

// ---------------------------------------------------------------------------
// Dimension tables
// ---------------------------------------------------------------------------

/// dim V^t_d for all vertices t and 0 <= d <= max_d.
template <class Field>
std::vector<std::vector<Index>> dims_table(ComponentCache<Field>& cache, int max_d) {
  const int n = cache.quiver().vertex_count();
  std::vector<std::vector<Index>> table(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t)
    for (int d = 0; d <= max_d; ++d) table[static_cast<std::size_t>(t)].push_back(cache.component(t, d)->dim);
  return table;
}

}  // namespace ppa

#endif  // PPA_PREPROJ_HPP
