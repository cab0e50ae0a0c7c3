#ifndef PPA_FP_HPP
#define PPA_FP_HPP

#include <cstdint>
#include <iosfwd>
#include <ostream>
#include <stdexcept>

#include <Eigen/Core>

namespace ppa {

/// Element of a prime field F_p for a word-size prime p.
///
/// Each element carries its modulus so that matrices over different primes
/// cannot be mixed silently.  Elements created from a bare integer literal
/// (as Eigen does internally for zeros and ones) have modulus 0 and act as
/// neutral values: they adopt the modulus of the first proper field element
/// they are combined with.
class Fp {
 public:
  Fp() : v_(0), p_(0) {}
  Fp(long long n) : v_(n), p_(0) {}  // NOLINT: implicit by design (literals)
  Fp(long long n, std::uint64_t p) : p_(p) { v_ = reduce(n, p); }

  std::uint64_t modulus() const { return p_; }
  /// Canonical representative in [0, p); raw value for neutral elements.
  long long value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  Fp operator-() const { return p_ ? Fp(p_ - static_cast<std::uint64_t>(v_), p_) : Fp(-v_); }

  friend Fp operator+(const Fp& a, const Fp& b) {
    std::uint64_t p = join(a, b);
    if (!p) return Fp(a.v_ + b.v_);
    std::uint64_t s = static_cast<std::uint64_t>(reduce(a.v_, p)) + static_cast<std::uint64_t>(reduce(b.v_, p));
    if (s >= p) s -= p;
    return Fp(static_cast<long long>(s), p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) { return a + (-b); }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::uint64_t p = join(a, b);
    if (!p) return Fp(a.v_ * b.v_);
    unsigned __int128 prod = static_cast<unsigned __int128>(reduce(a.v_, p)) * static_cast<unsigned __int128>(reduce(b.v_, p));
    return Fp(static_cast<long long>(prod % p), p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend bool operator==(const Fp& a, const Fp& b) {
    std::uint64_t p = join(a, b);
    if (!p) return a.v_ == b.v_;
    return reduce(a.v_, p) == reduce(b.v_, p);
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  Fp inverse() const {
    if (!p_) {
      if (v_ == 1 || v_ == -1) return *this;
      throw std::domain_error("Fp: inverse of a modulus-free element");
    }
    if (v_ == 0) throw std::domain_error("Fp: division by zero");
    // extended Euclid on (v, p)
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(p_), nr = v_;
    while (nr != 0) {
      long long q = r / nr;
      long long tmp = t - q * nt; t = nt; nt = tmp;
      tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (t < 0) t += static_cast<long long>(p_);
    return Fp(t, p_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.v_; }

 private:
  static long long reduce(long long n, std::uint64_t p) {
    if (!p) return n;
    long long m = n % static_cast<long long>(p);
    if (m < 0) m += static_cast<long long>(p);
    return m;
  }
  static std::uint64_t join(const Fp& a, const Fp& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_) throw std::domain_error("Fp: mixed moduli");
    return a.p_ ? a.p_ : b.p_;
  }

  long long v_;
  std::uint64_t p_;
};

}  // namespace ppa

namespace Eigen {
template <>
struct NumTraits<ppa::Fp> {
  typedef ppa::Fp Real;
  typedef ppa::Fp NonInteger;
  typedef ppa::Fp Nested;
  typedef ppa::Fp Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return ppa::Fp(0); }
  static inline Real dummy_precision() { return ppa::Fp(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

#endif  // PPA_FP_HPP
