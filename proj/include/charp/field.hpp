#pragma once

#include <cstdint>

#include "charp/error.hpp"

namespace charp {

/// Arithmetic context for the prime field F_p, 2 <= p < 2^31.
/// Construction runs a deterministic Miller-Rabin primality check.
class FieldCtx {
 public:
  explicit FieldCtx(uint32_t p);

  uint32_t p() const { return p_; }

  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return (uint32_t)((uint64_t)a * b % p_);
  }
  uint32_t pow(uint32_t a, uint64_t e) const;
  uint32_t inv(uint32_t a) const;
  uint32_t reduce(uint64_t v) const { return (uint32_t)(v % p_); }
  uint32_t reduce_signed(long long v) const {
    long long r = v % (long long)p_;
    if (r < 0) r += p_;
    return (uint32_t)r;
  }

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) { return a.p_ == b.p_; }
  friend bool operator!=(const FieldCtx& a, const FieldCtx& b) { return a.p_ != b.p_; }

  static bool is_prime(uint64_t n);

 private:
  uint32_t p_;
};

}  // namespace charp
