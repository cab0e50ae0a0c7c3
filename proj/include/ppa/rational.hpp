#ifndef PPA_RATIONAL_HPP
#define PPA_RATIONAL_HPP

#include <iosfwd>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

namespace ppa {

/// Arbitrary-precision rational scalar.  Exact; never rounds.
///
/// Thin value wrapper around boost::multiprecision::cpp_rational.  The
/// wrapper keeps the backend's converting constructors out of overload
/// resolution, which lets the type be used as an Eigen scalar without
/// tripping the backend's generic constructor traits.
class Rat {
 public:
  using Backend = boost::multiprecision::cpp_rational;

  Rat() : v_(0) {}
  Rat(long long n) : v_(n) {}  // NOLINT: implicit by design (literals)
  Rat(long long num, long long den) : v_(num) { v_ /= den; }
  explicit Rat(Backend v) : v_(std::move(v)) {}

  const Backend& backend() const { return v_; }
  bool is_zero() const { return v_.is_zero(); }

  Rat operator-() const { return Rat(Backend(-v_)); }
  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(Backend(a.v_ + b.v_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(Backend(a.v_ - b.v_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(Backend(a.v_ * b.v_)); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.v_.is_zero()) throw std::domain_error("Rat: division by zero");
    return Rat(Backend(a.v_ / b.v_));
  }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }

  std::string str() const { return v_.str(); }
  friend std::ostream& operator<<(std::ostream& os, const Rat& x) { return os << x.v_; }

 private:
  Backend v_;
};

}  // namespace ppa

namespace Eigen {
template <>
struct NumTraits<ppa::Rat> {
  typedef ppa::Rat Real;
  typedef ppa::Rat NonInteger;
  typedef ppa::Rat Nested;
  typedef ppa::Rat Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 8
  };
  static inline Real epsilon() { return ppa::Rat(0); }
  static inline Real dummy_precision() { return ppa::Rat(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

#endif  // PPA_RATIONAL_HPP
