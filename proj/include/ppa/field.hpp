#ifndef PPA_FIELD_HPP
#define PPA_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include "ppa/fp.hpp"
#include "ppa/rational.hpp"

namespace ppa {

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
    if (n % d == 0) return n == d;
  }
  // deterministic Miller-Rabin, valid for all 64-bit integers
  auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    std::uint64_t x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

/// An exact coefficient field: a prime field F_p or the rationals.
struct FieldSpec {
  enum class Kind { prime, rational };
  Kind kind = Kind::rational;
  std::uint64_t p = 0;

  static FieldSpec prime(std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("FieldSpec: modulus " + std::to_string(p) + " is not prime");
    return FieldSpec{Kind::prime, p};
  }
  static FieldSpec rationals() { return FieldSpec{Kind::rational, 0}; }

  bool is_prime_field() const { return kind == Kind::prime; }
  std::string name() const { return is_prime_field() ? "F" + std::to_string(p) : "Q"; }
};

/// Parses "65521" or "rational"/"Q".
inline FieldSpec parse_field(const std::string& s) {
  if (s == "rational" || s == "Q" || s == "q") return FieldSpec::rationals();
  std::uint64_t p = 0;
  try {
    std::size_t pos = 0;
    p = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("field must be a prime modulus or \"rational\", got \"" + s + "\"");
  }
  return FieldSpec::prime(p);
}

/// Scalar factory for F_p; passed through the templated core.
struct FpField {
  using Scalar = Fp;
  std::uint64_t p;
  explicit FpField(std::uint64_t p_) : p(p_) {}
  explicit FpField(const FieldSpec& fs) : p(fs.p) {
    if (!fs.is_prime_field()) throw std::invalid_argument("FpField requires a prime field");
  }
  Fp from_int(long long n) const { return Fp(n, p); }
  FieldSpec spec() const { return FieldSpec::prime(p); }
};

/// Scalar factory for the rationals.
struct RatField {
  using Scalar = Rat;
  Rat from_int(long long n) const { return Rat(n); }
  FieldSpec spec() const { return FieldSpec::rationals(); }
};

/// Runs fn with the scalar factory matching the runtime field choice.
template <class Fn>
decltype(auto) with_field(const FieldSpec& fs, Fn&& fn) {
  if (fs.is_prime_field()) return fn(FpField(fs.p));
  return fn(RatField{});
}

}  // namespace ppa

#endif  // PPA_FIELD_HPP
