#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "charp/error.hpp"

namespace charp {

/// Exact rational number on 64-bit integers. Denominator is always positive
/// and the fraction is kept in lowest terms. Intermediate products go through
/// 128-bit arithmetic and overflow of the reduced result is an error; divisor
/// coefficients in this toolkit stay tiny, so hitting the guard means a bug.
class Rat {
 public:
  Rat() : n_(0), d_(1) {}
  Rat(long long n) : n_(n), d_(1) {}
  Rat(long long n, long long d) { assign(n, d); }

  long long num() const { return n_; }
  long long den() const { return d_; }

  bool is_zero() const { return n_ == 0; }
  bool is_integer() const { return d_ == 1; }
  bool is_negative() const { return n_ < 0; }

  long long floor() const {
    long long q = n_ / d_;
    if (n_ % d_ != 0 && n_ < 0) --q;
    return q;
  }
  long long ceil() const {
    long long q = n_ / d_;
    if (n_ % d_ != 0 && n_ > 0) ++q;
    return q;
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return make128((__int128)a.n_ * b.d_ + (__int128)b.n_ * a.d_, (__int128)a.d_ * b.d_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return make128((__int128)a.n_ * b.d_ - (__int128)b.n_ * a.d_, (__int128)a.d_ * b.d_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make128((__int128)a.n_ * b.n_, (__int128)a.d_ * b.d_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    check(b.n_ != 0, Errc::DivisionByZero, "rational division by zero");
    return make128((__int128)a.n_ * b.d_, (__int128)a.d_ * b.n_);
  }
  Rat operator-() const { return Rat(-n_, d_); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.n_ == b.n_ && a.d_ == b.d_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (__int128)a.n_ * b.d_ < (__int128)b.n_ * a.d_;
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return a < b || a == b; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

  std::string str() const {
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
  }

 private:
  void assign(long long n, long long d) {
    check(d != 0, Errc::DivisionByZero, "zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    n_ = n;
    d_ = d;
  }

  static Rat make128(__int128 n, __int128 d) {
    check(d != 0, Errc::DivisionByZero, "zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    const __int128 lim = (__int128)1 << 62;
    check(n < lim && -n < lim && d < lim, Errc::Overflow, "rational overflow");
    Rat r;
    r.n_ = (long long)n;
    r.d_ = (long long)d;
    return r;
  }

  long long n_;
  long long d_;
};

}  // namespace charp
