#ifndef PPA_QUIVER_HPP
#define PPA_QUIVER_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppa {

struct QuiverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An arrow of the base quiver.  Vertices are 0-based internally; files and
/// reports use the 1-based labels.
struct Arrow {
  int id;
  std::string label;
  int source;
  int target;
};

/// A finite quiver without oriented cycles, verified at construction.
class Quiver {
 public:
  Quiver(int vertex_count, std::vector<Arrow> arrows)
      : n_(vertex_count), arrows_(std::move(arrows)) {
    for (const auto& a : arrows_) {
      if (a.source < 0 || a.source >= n_ || a.target < 0 || a.target >= n_)
        throw QuiverError("arrow " + a.label + " references a vertex out of range");
    }
    check_acyclic();
  }

  int vertex_count() const { return n_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(int id) const { return arrows_[static_cast<std::size_t>(id)]; }

 private:
  void check_acyclic() const {
    // DFS; on a back edge, report one oriented cycle
    std::vector<std::vector<int>> out(static_cast<std::size_t>(n_));
    for (const auto& a : arrows_) out[static_cast<std::size_t>(a.source)].push_back(a.target);
    std::vector<int> state(static_cast<std::size_t>(n_), 0);  // 0 new, 1 on stack, 2 done
    std::vector<int> stack, path;
    for (int s = 0; s < n_; ++s) {
      if (state[static_cast<std::size_t>(s)]) continue;
      // iterative DFS keeping the current path
      std::vector<std::pair<int, std::size_t>> frames{{s, 0}};
      path.assign(1, s);
      state[static_cast<std::size_t>(s)] = 1;
      while (!frames.empty()) {
        auto& [v, i] = frames.back();
        if (i < out[static_cast<std::size_t>(v)].size()) {
          int w = out[static_cast<std::size_t>(v)][i++];
          if (state[static_cast<std::size_t>(w)] == 1) {
            std::ostringstream os;
            auto it = std::find(path.begin(), path.end(), w);
            for (; it != path.end(); ++it) os << (*it + 1) << " -> ";
            os << (w + 1);
            throw QuiverError("quiver has an oriented cycle: " + os.str());
          }
          if (state[static_cast<std::size_t>(w)] == 0) {
            state[static_cast<std::size_t>(w)] = 1;
            frames.emplace_back(w, 0);
            path.push_back(w);
          }
        } else {
          state[static_cast<std::size_t>(v)] = 2;
          frames.pop_back();
          path.pop_back();
        }
      }
    }
  }

  int n_;
  std::vector<Arrow> arrows_;
};

/// The weight functions a, b on the base arrows; both everywhere nonzero.
/// Stored as integers and mapped into the working field at use time.
struct Weights {
  std::vector<long long> a;
  std::vector<long long> b;

  static Weights ones(const Quiver& q) {
    Weights w;
    w.a.assign(q.arrows().size(), 1);
    w.b.assign(q.arrows().size(), 1);
    return w;
  }
};

/// Arrow of the doubled quiver: each base arrow gamma: t -> v contributes
/// itself (degree 0) and a starred reverse gamma*: v -> t (degree 1).
struct DArrow {
  int id;         // 0..2m-1; starred arrows follow the base arrows
  int base;       // id of the underlying base arrow
  bool starred;
  int source;
  int target;
  int degree() const { return starred ? 1 : 0; }
};

class DoubledQuiver {
 public:
  explicit DoubledQuiver(const Quiver& q) : base_(q) {
    const int m = static_cast<int>(q.arrows().size());
    for (int i = 0; i < m; ++i) {
      const Arrow& a = q.arrow(i);
      darrows_.push_back(DArrow{i, i, false, a.source, a.target});
    }
    for (int i = 0; i < m; ++i) {
      const Arrow& a = q.arrow(i);
      darrows_.push_back(DArrow{m + i, i, true, a.target, a.source});
    }
    out_.resize(static_cast<std::size_t>(q.vertex_count()));
    for (const auto& d : darrows_) out_[static_cast<std::size_t>(d.source)].push_back(d.id);
  }

  const Quiver& base() const { return base_; }
  int vertex_count() const { return base_.vertex_count(); }
  const std::vector<DArrow>& darrows() const { return darrows_; }
  const DArrow& darrow(int id) const { return darrows_[static_cast<std::size_t>(id)]; }
  int star_of(int base_arrow) const { return static_cast<int>(base_.arrows().size()) + base_arrow; }
  /// Out-arrows of v in the doubled quiver, in increasing id order.
  const std::vector<int>& out(int v) const { return out_[static_cast<std::size_t>(v)]; }

  std::string darrow_name(int id) const {
    const DArrow& d = darrow(id);
    return base_.arrow(d.base).label + (d.starred ? "*" : "");
  }

 private:
  Quiver base_;
  std::vector<DArrow> darrows_;
  std::vector<std::vector<int>> out_;
};

/// A composable sequence of doubled-quiver arrows.  Arrows are stored in
/// composition order: arrows.back() is traversed first, so in a product pq
/// the path q is traversed before p, and right multiplication by an arrow
/// appends it at the back.  The degree is the number of starred arrows.
struct Path {
  int start = 0;
  std::vector<int> arrows;  // darrow ids, composition order
  int end = 0;
  int degree = 0;

  static Path trivial(int t) { return Path{t, {}, t, 0}; }

  std::size_t length() const { return arrows.size(); }

  /// Right multiplication p * delta: delta traversed first.
  Path times(const DArrow& d) const {
    Path r = *this;
    if (start != d.target) throw QuiverError("non-composable product");
    r.arrows.push_back(d.id);
    r.start = d.source;
    r.degree += d.degree();
    return r;
  }

  /// Left multiplication delta * p: p traversed first.
  Path times_left(const DArrow& d) const {
    Path r = *this;
    if (end != d.source) throw QuiverError("non-composable product");
    r.arrows.insert(r.arrows.begin(), d.id);
    r.end = d.target;
    r.degree += d.degree();
    return r;
  }

  friend bool operator==(const Path& x, const Path& y) {
    return x.start == y.start && x.arrows == y.arrows;
  }

  /// Enumeration order: length first, then lexicographic on the
  /// composition-order arrow ids.  Total, deterministic, stable.
  friend bool operator<(const Path& x, const Path& y) {
    if (x.length() != y.length()) return x.length() < y.length();
    if (x.arrows != y.arrows) return x.arrows < y.arrows;
    return x.start < y.start;
  }
};

inline std::string format_path(const DoubledQuiver& dq, const Path& p) {
  if (p.arrows.empty()) return "e_" + std::to_string(p.start + 1);
  std::string s;
  for (std::size_t i = 0; i < p.arrows.size(); ++i) {
    if (i) s += ".";
    s += dq.darrow_name(p.arrows[i]);
  }
  return s;
}

/// All paths of degree exactly d starting at `start`, in canonical order.
/// Finite because the base quiver is acyclic: every degree-0 stretch is a
/// path in the base quiver, so the length is at most (d+1)(n-1) + d.
inline std::vector<Path> paths_of_degree(const DoubledQuiver& dq, int start, int d) {
  std::vector<Path> out;
  if (d < 0) return out;
  std::vector<int> traversal;  // darrow ids in traversal order
  auto emit = [&]() {
    Path p;
    p.start = start;
    p.arrows.assign(traversal.rbegin(), traversal.rend());
    p.end = traversal.empty() ? start : dq.darrow(traversal.back()).target;
    p.degree = d;
    out.push_back(std::move(p));
  };
  auto walk = [&](auto&& self, int v, int used) -> void {
    if (used == d) emit();
    for (int id : dq.out(v)) {
      const DArrow& a = dq.darrow(id);
      if (used + a.degree() > d) continue;
      traversal.push_back(id);
      self(self, a.target, used + a.degree());
      traversal.pop_back();
    }
  };
  walk(walk, start, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Quiver file parsing
// ---------------------------------------------------------------------------

struct ParseError : QuiverError {
  int line;
  ParseError(int line_, const std::string& msg)
      : QuiverError("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

/// Parses the quiver file format:
///
///   # comment
///   vertices N
///   arrow LABEL: S -> T
///   weight a LABEL = c
///   weight b LABEL = c
///
/// Vertices are 1-based in files.  Weights default to 1; c must be a nonzero
/// integer (it is mapped into the working field at use time).
inline std::pair<Quiver, Weights> parse_quiver(const std::string& text) {
  int n = -1;
  std::vector<Arrow> arrows;
  std::map<std::string, int> by_label;
  struct WLine {
    char which;
    std::string label;
    long long c;
    int line;
  };
  std::vector<WLine> wlines;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "vertices") {
      if (n >= 0) throw ParseError(lineno, "duplicate vertices declaration");
      if (!(ls >> n) || n < 0) throw ParseError(lineno, "expected: vertices N");
    } else if (kw == "arrow") {
      std::string label, arrowtok;
      int s = 0, t = 0;
      if (!(ls >> label)) throw ParseError(lineno, "expected: arrow LABEL: S -> T");
      if (!label.empty() && label.back() == ':') {
        label.pop_back();
      } else {
        std::string colon;
        if (!(ls >> colon) || colon != ":") throw ParseError(lineno, "expected ':' after arrow label");
      }
      if (label.empty()) throw ParseError(lineno, "empty arrow label");
      if (!(ls >> s >> arrowtok >> t) || arrowtok != "->")
        throw ParseError(lineno, "expected: arrow LABEL: S -> T");
      if (n < 0) throw ParseError(lineno, "vertices must be declared before arrows");
      if (s < 1 || s > n || t < 1 || t > n) throw ParseError(lineno, "vertex out of range 1.." + std::to_string(n));
      if (by_label.count(label)) throw ParseError(lineno, "duplicate arrow label " + label);
      by_label[label] = static_cast<int>(arrows.size());
      arrows.push_back(Arrow{static_cast<int>(arrows.size()), label, s - 1, t - 1});
    } else if (kw == "weight") {
      std::string which, label, eq;
      long long c = 0;
      if (!(ls >> which >> label >> eq >> c) || (which != "a" && which != "b") || eq != "=")
        throw ParseError(lineno, "expected: weight a|b LABEL = c");
      wlines.push_back(WLine{which[0], label, c, lineno});
    } else {
      throw ParseError(lineno, "unknown directive: " + kw);
    }
    std::string rest;
    if (ls >> rest) throw ParseError(lineno, "trailing tokens: " + rest);
  }
  if (n < 0) throw ParseError(lineno, "missing vertices declaration");

  Quiver q(n, arrows);  // throws on oriented cycles
  Weights w = Weights::ones(q);
  for (const auto& wl : wlines) {
    auto it = by_label.find(wl.label);
    if (it == by_label.end()) throw ParseError(wl.line, "weight for unknown arrow " + wl.label);
    if (wl.c == 0) throw ParseError(wl.line, "weight " + std::string(1, wl.which) + "(" + wl.label + ") must be nonzero");
    (wl.which == 'a' ? w.a : w.b)[static_cast<std::size_t>(it->second)] = wl.c;
  }
  return {std::move(q), std::move(w)};
}

}  // namespace ppa

#endif  // PPA_QUIVER_HPP
