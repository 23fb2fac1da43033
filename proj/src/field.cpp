#include "charp/field.hpp"

namespace charp {

namespace {

uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t m) {
  return (uint64_t)((__uint128_t)a * b % m);
}

uint64_t powmod64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool FieldCtx::is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // Deterministic witness set for n < 3.3 * 10^24.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

FieldCtx::FieldCtx(uint32_t p) : p_(p) {
  check(p >= 2 && p < (1u << 31), Errc::Domain, "characteristic out of range");
  check(is_prime(p), Errc::Domain, "characteristic " + std::to_string(p) + " is not prime");
}

uint32_t FieldCtx::pow(uint32_t a, uint64_t e) const {
  uint64_t r = 1, b = a % p_;
  while (e) {
    if (e & 1) r = r * b % p_;
    b = b * b % p_;
    e >>= 1;
  }
  return (uint32_t)r;
}

uint32_t FieldCtx::inv(uint32_t a) const {
  check(a % p_ != 0, Errc::DivisionByZero, "inverse of zero in F_p");
  return pow(a % p_, (uint64_t)p_ - 2);
}

}  // namespace charp
