#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace kinalg {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Arithmetic left the range representable by 64-bit numerator/denominator.
struct OverflowError : Error {
  using Error::Error;
};

namespace detail {

inline std::int64_t narrow_checked(__int128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw OverflowError(std::string("rational overflow in ") + what);
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

/// Exact rational number with 64-bit numerator and positive denominator,
/// always stored in lowest terms. Intermediate products are computed in
/// 128 bits and overflow raises OverflowError instead of wrapping.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return from_wide(n, d, "operator+");
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    __int128 n = static_cast<__int128>(a.num_) * b.num_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return from_wide(n, d, "operator*");
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error("rational division by zero");
    __int128 n = static_cast<__int128>(a.num_) * b.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.num_;
    return from_wide(n, d, "operator/");
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  /// x^e for integer e (negative exponents invert; 0^negative throws).
  static Rational pow(const Rational& x, long e) {
    if (e == 0) return Rational(1);
    if (x.is_zero()) {
      if (e < 0) throw Error("zero to a negative power");
      return x;
    }
    Rational base = e > 0 ? x : Rational(x.den_, x.num_);
    unsigned long k = e > 0 ? static_cast<unsigned long>(e) : static_cast<unsigned long>(-e);
    Rational acc(1);
    while (k) {
      if (k & 1) acc *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return acc;
  }

  /// Exact square root if numerator and denominator are perfect squares.
  std::optional<Rational> sqrt_exact() const {
    if (num_ < 0) return std::nullopt;
    auto isqrt = [](std::int64_t v) -> std::optional<std::int64_t> {
      if (v < 0) return std::nullopt;
      auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
      for (std::int64_t c = std::max<std::int64_t>(0, r - 2); c <= r + 2; ++c)
        if (c * c == v) return c;
      return std::nullopt;
    };
    auto n = isqrt(num_);
    auto d = isqrt(den_);
    if (!n || !d) return std::nullopt;
    return Rational(*n, *d);
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "3", "-1/2"
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

 private:
  static Rational from_wide(__int128 n, __int128 d, const char* what) {
    if (d == 0) throw Error("rational division by zero");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = wide_gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rational r;
    r.num_ = detail::narrow_checked(n, what);
    r.den_ = detail::narrow_checked(d, what);
    return r;
  }

  static __int128 wide_gcd(__int128 a, __int128 b) {
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    if (den_ == 0) throw Error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace kinalg
