#ifndef PPA_POLYHL_HPP
#define PPA_POLYHL_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ppa/linalg.hpp"
#include "ppa/maxrank.hpp"
#include "ppa/rng.hpp"

namespace ppa {

/// dim of the degree-d piece of k[x_1..x_r]: C(r+d-1, d).
inline unsigned long long poly_dim(int r, int d) {
  if (r < 1 || d < 0) throw std::invalid_argument("poly_dim: need r >= 1, d >= 0");
  unsigned long long num = 1;
  for (int i = 1; i <= d; ++i) {
    num = sat_mul(num, static_cast<unsigned long long>(r - 1 + i));
    num /= static_cast<unsigned long long>(i);
  }
  return num;
}

/// The graded polynomial ring k[x_1..x_r] with dense coefficient vectors
/// indexed by the lexicographically ordered exponent vectors of each degree
/// (x_1-heavy monomials first).
class GradedPolyRing {
 public:
  explicit GradedPolyRing(int r) : r_(r) {
    if (r < 1) throw std::invalid_argument("GradedPolyRing: need r >= 1");
  }

  int vars() const { return r_; }

  const std::vector<std::vector<int>>& monomials(int d) const {
    while (static_cast<int>(monos_.size()) <= d) {
      int deg = static_cast<int>(monos_.size());
      std::vector<std::vector<int>> list;
      std::vector<int> e(static_cast<std::size_t>(r_), 0);
      gen(deg, 0, e, list);
      std::sort(list.begin(), list.end(), std::greater<>());
      monos_.push_back(std::move(list));
    }
    return monos_[static_cast<std::size_t>(d)];
  }

  Index mono_index(int d, const std::vector<int>& e) const {
    const auto& list = monomials(d);
    auto it = std::lower_bound(list.begin(), list.end(), e, std::greater<>());
    if (it == list.end() || *it != e) throw std::logic_error("monomial not in index");
    return static_cast<Index>(it - list.begin());
  }

  Index dim(int d) const { return static_cast<Index>(monomials(d).size()); }

  /// Product of homogeneous pieces by exponent-vector addition.
  template <class S>
  Vec<S> multiply(int da, const Vec<S>& F, int db, const Vec<S>& G) const {
    const auto& ma = monomials(da);
    const auto& mb = monomials(db);
    Vec<S> out(dim(da + db));
    out.setZero();
    for (Index i = 0; i < F.size(); ++i) {
      if (F[i] == S(0)) continue;
      for (Index j = 0; j < G.size(); ++j) {
        if (G[j] == S(0)) continue;
        std::vector<int> e(static_cast<std::size_t>(r_));
        for (int k = 0; k < r_; ++k)
          e[static_cast<std::size_t>(k)] = ma[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                                           mb[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        out[mono_index(da + db, e)] += F[i] * G[j];
      }
    }
    return out;
  }

 private:
  void gen(int remaining, int var, std::vector<int>& e, std::vector<std::vector<int>>& out) const {
    if (var == r_ - 1) {
      e[static_cast<std::size_t>(var)] = remaining;
      out.push_back(e);
      e[static_cast<std::size_t>(var)] = 0;
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      e[static_cast<std::size_t>(var)] = k;
      gen(remaining - k, var + 1, e, out);
    }
    e[static_cast<std::size_t>(var)] = 0;
  }

  int r_;
  mutable std::vector<std::vector<std::vector<int>>> monos_;
};

/// Certificate that n general forms of degree d multiply out to a basis of
/// the degree-(d+1) piece: n and s are fixed by
/// (n-1) r < N(r, d+1) <= n r,  s = N(r, d+1) - (n-1) r,
/// and each trial tests the products x_j F_i (all j for i < n, j <= s for
/// i = n) for invertibility.
struct HlPolyCertificate {
  int r = 0;
  int d = 0;
  unsigned long long n_target = 0;  // N(r, d+1)
  int n = 0;
  int s = 0;
  BasisCertificate certificate;
};

inline HlPolyCertificate check_hl(int r, int d, int trials, std::uint64_t seed, const FpField& F) {
  if (d < 2) throw std::invalid_argument("check_hl requires d >= 2");
  GradedPolyRing ring(r);
  HlPolyCertificate out;
  out.r = r;
  out.d = d;
  out.n_target = poly_dim(r, d + 1);
  out.n = static_cast<int>((out.n_target + static_cast<unsigned long long>(r) - 1) / static_cast<unsigned long long>(r));
  out.s = static_cast<int>(out.n_target - static_cast<unsigned long long>(out.n - 1) * static_cast<unsigned long long>(r));

  const Index nd = ring.dim(d), nd1 = ring.dim(d + 1);
  // multiplication by x_j as an index map on monomials
  std::vector<std::vector<Index>> shift(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j) {
    for (const auto& e : ring.monomials(d)) {
      std::vector<int> e2 = e;
      ++e2[static_cast<std::size_t>(j)];
      shift[static_cast<std::size_t>(j)].push_back(ring.mono_index(d + 1, e2));
    }
  }

  BasisCertificate& cert = out.certificate;
  cert.dim = nd1;
  cert.trials = trials;
  cert.seed = seed;
  cert.p = F.p;
  for (int trial = 0; trial < trials; ++trial) {
    SplitMix64 rng(trial_seed(seed, static_cast<std::uint64_t>(trial)));
    Mat<Fp> forms = random_matrix(nd, static_cast<Index>(out.n), F, rng);  // columns F_1..F_n
    Mat<Fp> basis(nd1, nd1);
    basis.setConstant(F.from_int(0));
    Index col = 0;
    for (int i = 0; i < out.n; ++i) {
      int jmax = i < out.n - 1 ? r : out.s;
      for (int j = 0; j < jmax; ++j) {
        for (Index k = 0; k < nd; ++k) basis(shift[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)], col) += forms(k, i);
        ++col;
      }
    }
    if (col != nd1) throw std::logic_error("check_hl: product count mismatch");
    bool pass = rank_of(basis) == nd1;
    if (pass) {
      ++cert.passes;
      if (cert.first_pass_trial < 0) {
        cert.first_pass_trial = trial;
        cert.first_pass_data = {forms};
      }
    } else if (cert.first_fail_trial < 0) {
      cert.first_fail_trial = trial;
      cert.first_fail_data = {forms};
    }
  }
  cert.pass_fraction = trials ? static_cast<double>(cert.passes) / static_cast<double>(trials) : 1.0;
  return out;
}

}  // namespace ppa

#endif  // PPA_POLYHL_HPP
