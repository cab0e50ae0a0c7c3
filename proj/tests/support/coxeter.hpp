#ifndef PPA_TESTS_COXETER_HPP
#define PPA_TESTS_COXETER_HPP

// Independent dimension oracle for the graded components: dim V^t_d equals
// the entry sum of the d-th inverse-Coxeter iterate of the dimension vector
// of the projective at t, with the iteration stopping once a vector leaves
// the positive cone.  Plain integer arithmetic on small matrices; shares no
// code with the path-reduction implementation it cross-checks.

#include <cstdint>
#include <vector>

#include "ppa/quiver.hpp"

namespace ppa_tests {

class CoxeterOracle {
 public:
  explicit CoxeterOracle(const ppa::Quiver& q) : n_(q.vertex_count()) {
    // adjacency: A[u][v] = number of arrows u -> v
    std::vector<std::vector<long long>> A(n_, std::vector<long long>(n_, 0));
    for (const auto& a : q.arrows()) A[a.source][a.target] += 1;
    // path counts N = I + A + A^2 + ... = (I - A)^{-1}; A is nilpotent
    std::vector<std::vector<long long>> N = identity(), Ak = identity();
    for (int step = 0; step < n_; ++step) {
      Ak = mul(Ak, A);
      bool nonzero = false;
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
          if (Ak[i][j]) nonzero = true;
      if (!nonzero) break;
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) N[i][j] += Ak[i][j];
    }
    paths_ = N;
    // E = I - A; the inverse Coxeter matrix is -E^{-T} E = -N^T (I - A)
    std::vector<std::vector<long long>> E(n_, std::vector<long long>(n_, 0));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) E[i][j] = (i == j ? 1 : 0) - A[i][j];
    std::vector<std::vector<long long>> Nt(n_, std::vector<long long>(n_, 0));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) Nt[i][j] = N[j][i];
    inv_coxeter_ = mul(Nt, E);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) inv_coxeter_[i][j] = -inv_coxeter_[i][j];
  }

  /// Dimension vector of the projective at t: path counts out of t.
  std::vector<long long> projective_dims(int t) const { return paths_[t]; }

  /// Dimension vector of the degree-d component at t (all zeros once the
  /// iteration leaves the positive cone).
  std::vector<long long> dim_vector(int t, int d) const {
    std::vector<long long> v = projective_dims(t);
    for (int step = 0; step < d; ++step) {
      std::vector<long long> next(n_, 0);
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) next[i] += inv_coxeter_[i][j] * v[j];
      bool negative = false, all_zero = true;
      for (long long x : next) {
        if (x < 0) negative = true;
        if (x != 0) all_zero = false;
      }
      if (negative || all_zero) return std::vector<long long>(n_, 0);
      v = next;
    }
    return v;
  }

  long long total_dim(int t, int d) const {
    long long s = 0;
    for (long long x : dim_vector(t, d)) s += x;
    return s;
  }

 private:
  std::vector<std::vector<long long>> identity() const {
    std::vector<std::vector<long long>> m(n_, std::vector<long long>(n_, 0));
    for (int i = 0; i < n_; ++i) m[i][i] = 1;
    return m;
  }
  std::vector<std::vector<long long>> mul(const std::vector<std::vector<long long>>& a,
                                          const std::vector<std::vector<long long>>& b) const {
    std::vector<std::vector<long long>> c(n_, std::vector<long long>(n_, 0));
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k)
        for (int j = 0; j < n_; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
  }

  int n_;
  std::vector<std::vector<long long>> paths_;
  std::vector<std::vector<long long>> inv_coxeter_;
};

}  // namespace ppa_tests

#endif  // PPA_TESTS_COXETER_HPP
