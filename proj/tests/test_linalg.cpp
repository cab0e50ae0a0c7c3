#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>

#include "ppa/linalg.hpp"
#include "ppa/rational.hpp"
#include "ppa/rng.hpp"

using namespace ppa;

namespace {

Mat<Fp> fp_matrix(std::initializer_list<std::initializer_list<long long>> rows, std::uint64_t p) {
  FpField F(p);
  Mat<Fp> m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (long long v : r) m(i, j++) = F.from_int(v);
    ++i;
  }
  return m;
}

Mat<Rat> rat_matrix(std::initializer_list<std::initializer_list<long long>> rows) {
  Mat<Rat> m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (long long v : r) m(i, j++) = Rat(v);
    ++i;
  }
  return m;
}

template <class S>
std::string key_of(const Mat<S>& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

}  // namespace

TEST_CASE("rref on the stock examples") {
  FpField F5(5);
  Mat<Fp> id(3, 3);
  id.setConstant(F5.from_int(0));
  for (int i = 0; i < 3; ++i) id(i, i) = F5.from_int(1);
  auto r = rref(id);
  CHECK(r.rank == 3);
  CHECK(r.pivots == std::vector<Index>{0, 1, 2});

  Mat<Fp> zero(2, 4);
  zero.setConstant(F5.from_int(0));
  auto rz = rref(zero);
  CHECK(rz.rank == 0);
  CHECK(rz.pivots.empty());

  auto rq = rref(rat_matrix({{1, 2, 3}, {2, 4, 6}}));
  CHECK(rq.rank == 1);
  CHECK(rq.pivots == std::vector<Index>{0});
  CHECK(rq.reduced(0, 1) == Rat(2));
  CHECK(rq.reduced(1, 2) == Rat(0));
}

TEST_CASE("rref idempotence and rank symmetries") {
  SplitMix64 rng(7);
  FpField F3(3);
  for (int it = 0; it < 40; ++it) {
    Index rows = 1 + static_cast<Index>(rng.below(5));
    Index cols = 1 + static_cast<Index>(rng.below(5));
    Mat<Fp> m = random_matrix(rows, cols, F3, rng);
    auto r1 = rref(m);
    auto r2 = rref(r1.reduced);
    CHECK(key_of(r1.reduced) == key_of(r2.reduced));
    CHECK(r1.rank <= std::min(rows, cols));
    CHECK(r1.rank == rank_of(m.transpose().eval()));
    CHECK(kernel_basis(m).dim() + r1.rank == cols);
  }
}

TEST_CASE("kernel bases") {
  FpField F2(2);
  Mat<Fp> id(4, 4);
  id.setConstant(F2.from_int(0));
  for (int i = 0; i < 4; ++i) id(i, i) = F2.from_int(1);
  CHECK(kernel_basis(id).dim() == 0);

  auto k = kernel_basis(fp_matrix({{1, 1}}, 2));
  CHECK(k.dim() == 1);
  CHECK(k.basis(0, 0).value() == 1);
  CHECK(k.basis(0, 1).value() == 1);

  Mat<Fp> zero(2, 3);
  zero.setConstant(F2.from_int(0));
  CHECK(kernel_basis(zero).dim() == 3);
}

TEST_CASE("maximal rank predicate") {
  FpField F5(5);
  Mat<Fp> id(3, 3);
  id.setConstant(F5.from_int(0));
  for (int i = 0; i < 3; ++i) id(i, i) = F5.from_int(1);
  CHECK(has_max_rank(id));
  CHECK_FALSE(has_max_rank(fp_matrix({{1, 0}, {0, 0}}, 5)));
  CHECK(has_max_rank(fp_matrix({{1, 0}, {0, 1}, {0, 0}}, 5)));  // injective 3x2
}

TEST_CASE("subspace counts are Gaussian binomials") {
  CHECK(count_subspaces(2, 1, 2) == 3);
  CHECK(count_subspaces(3, 1, 3) == 13);
  CHECK(count_subspaces(4, 4, 3) == 1);
  CHECK(count_subspaces(4, 2, 2) == 35);
  CHECK(count_all_subspaces(2, 2) == 5);
}

TEST_CASE("subspace enumeration: count, distinctness, canonical form") {
  for (std::uint64_t p : {2ull, 3ull}) {
    for (int n = 0; n <= 4; ++n) {
      for (int k = 0; k <= n; ++k) {
        auto subs = enumerate_subspaces(n, k, p);
        CHECK(subs.size() == count_subspaces(n, k, p));
        std::set<std::string> seen;
        for (const auto& s : subs) {
          CHECK(s.dim() == k);
          auto rr = rref(s.basis);
          CHECK(rr.rank == k);
          CHECK(key_of(rr.reduced) == key_of(s.basis));  // already canonical
          seen.insert(key_of(s.basis) + "#" + std::to_string(s.ambient));
        }
        CHECK(seen.size() == subs.size());
      }
    }
  }
}

TEST_CASE("enumeration budget error carries the exact count") {
  CHECK_THROWS_AS((void)enumerate_subspaces(8, 4, 3, 10), BudgetExceededError);
  try {
    (void)enumerate_subspaces(8, 4, 3, 10);
  } catch (const BudgetExceededError& e) {
    CHECK(e.count == count_subspaces(8, 4, 3));
  }
}

TEST_CASE("random subspaces are deterministic in the seed") {
  FpField F(65521);
  auto a = random_subspace(2, 1, F, 42);
  auto b = random_subspace(2, 1, F, 42);
  CHECK(a == b);
  CHECK(random_subspace(3, 0, F, 9).dim() == 0);
  auto full = random_subspace(3, 3, F, 9);
  CHECK(full.dim() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(full.basis(i, j).value() == (i == j ? 1 : 0));
}

TEST_CASE("sparse echelon agrees with dense rref") {
  SplitMix64 rng(11);
  FpField F3(3);
  for (int it = 0; it < 30; ++it) {
    Index rows = 1 + static_cast<Index>(rng.below(6));
    Index cols = 1 + static_cast<Index>(rng.below(6));
    Mat<Fp> m = random_matrix(rows, cols, F3, rng);
    SparseEchelon<Fp> e(cols);
    for (Index i = 0; i < rows; ++i) {
      SparseVec<Fp> v;
      for (Index j = 0; j < cols; ++j)
        if (!(m(i, j) == Fp(0))) v.emplace_back(j, m(i, j));
      e.insert(v);
    }
    auto r = rref(m);
    CHECK(e.rank() == r.rank);
    CHECK(key_of(echelon_to_dense(e)) == key_of(Mat<Fp>(r.reduced.topRows(r.rank))));
  }
}

TEST_CASE("sparse echelon reduce is reduction modulo the row span") {
  FpField F5(5);
  Mat<Fp> m = fp_matrix({{1, 2, 0, 1}, {0, 0, 1, 4}}, 5);
  SparseEchelon<Fp> e(4);
  for (Index i = 0; i < 2; ++i) {
    SparseVec<Fp> v;
    for (Index j = 0; j < 4; ++j)
      if (!(m(i, j) == Fp(0))) v.emplace_back(j, m(i, j));
    e.insert(v);
  }
  // reduce a row already in the span -> zero
  SparseVec<Fp> in_span{{0, F5.from_int(2)}, {1, F5.from_int(4)}, {2, F5.from_int(0)}, {3, F5.from_int(2)}};
  CHECK(e.reduce(in_span).empty());
  // reduction is supported on non-pivot columns
  SparseVec<Fp> v{{0, F5.from_int(1)}, {2, F5.from_int(1)}};
  for (const auto& [c, x] : e.reduce(v)) CHECK_FALSE(e.is_pivot(c));
}

TEST_CASE("quotient matrix kills exactly the subspace") {
  FpField F3(3);
  SplitMix64 rng(23);
  for (int it = 0; it < 20; ++it) {
    int n = 1 + static_cast<int>(rng.below(4));
    int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    Subspace<Fp> s = random_subspace(n, k, F3, rng.next());
    Mat<Fp> q = quotient_matrix(s);
    CHECK(q.rows() == n - k);
    CHECK(rank_of(q) == n - k);
    if (k > 0) {
      Mat<Fp> img = q * s.basis.transpose();
      for (Index i = 0; i < img.rows(); ++i)
        for (Index j = 0; j < img.cols(); ++j) CHECK(img(i, j) == Fp(0));
    }
  }
}

TEST_CASE("exactness of the scalar types") {
  // F_p arithmetic closed under the modulus
  FpField F(65521);
  Fp x = F.from_int(65520);
  CHECK((x + F.from_int(1)).value() == 0);
  CHECK((x * x).value() == 1);  // (-1)^2
  CHECK((x / x).value() == 1);
  CHECK_THROWS_AS((void)(F.from_int(1) / F.from_int(0)), std::domain_error);

  // rationals never round
  Rat a(1, 3), b(1, 6);
  CHECK(a + b == Rat(1, 2));
  CHECK(a * Rat(3) == Rat(1));
  CHECK((a - a).is_zero());
}
