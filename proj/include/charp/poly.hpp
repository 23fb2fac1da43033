#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "charp/field.hpp"

namespace charp {

using Exp = int32_t;
using Mono = std::vector<Exp>;

enum class Order { Lex, Grevlex };

struct PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

/// A polynomial ring F_p[x_1,...,x_n] with a fixed monomial order.
/// `elim_block > 0` turns the order into a block order: the first
/// `elim_block` variables form a senior block compared first (grevlex
/// within each block), which is how elimination orders are realized.
struct PolyRing {
  FieldCtx field;
  std::vector<std::string> vars;
  Order order = Order::Grevlex;
  int elim_block = 0;

  PolyRing(FieldCtx f, std::vector<std::string> v, Order o = Order::Grevlex, int elim = 0);

  int nvars() const { return (int)vars.size(); }
  int var_index(const std::string& name) const;  // -1 if absent

  /// Total order on monomials: negative, zero, positive like strcmp.
  int cmp(const Mono& a, const Mono& b) const;

  bool same(const PolyRing& o) const;

  static RingPtr make(uint32_t p, std::vector<std::string> vars, Order o = Order::Grevlex);
  static RingPtr make(FieldCtx f, std::vector<std::string> vars, Order o = Order::Grevlex,
                      int elim = 0);
};

struct Term {
  Mono m;
  uint32_t c;
};

/// Sparse multivariate polynomial over F_p. Terms are kept sorted in
/// descending monomial order with no zero coefficients, so representation
/// is canonical and comparisons are exact.
class Poly {
 public:
  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }
  static Poly constant(RingPtr ring, uint64_t c);
  static Poly variable(RingPtr ring, int idx);
  static Poly variable(RingPtr ring, const std::string& name);
  static Poly monomial(RingPtr ring, Mono m, uint32_t c);
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);  // normalizes

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  bool is_unit_constant() const { return is_constant() && !is_zero(); }
  size_t term_count() const { return t_.size(); }

  const Term& leading_term() const;
  const Mono& leading_mono() const { return leading_term().m; }
  uint32_t leading_coef() const { return leading_term().c; }

  /// Degree in one variable, and total degree. Zero polynomial: -1.
  int degree(int var) const;
  int total_degree() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly mul_term(const Mono& m, uint32_t c) const;
  Poly mul_scalar(uint32_t c) const;

  /// Repeated squaring; exponent must be >= 0.
  Poly pow(long long k) const;

  /// p^e-th power via the Frobenius: exponents scale by q, coefficients are
  /// fixed (prime field), so this is O(#terms).
  Poly frob_pow(long long q) const;

  /// Exact division: returns q with *this == q*b, or nullopt.
  std::optional<Poly> exact_div(const Poly& b) const;

  Poly derivative(int var) const;

  /// Monic normalization (leading coefficient 1); zero stays zero.
  Poly monic() const;

  /// Substitute each variable by the given image polynomial (all images in
  /// a common target ring).
  Poly substitute(const RingPtr& target, const std::vector<Poly>& images) const;

  /// Re-express in a structurally compatible ring (same p; variables of this
  /// ring must all appear in `target`). Used to move polynomials between a
  /// ring and its elimination extension.
  Poly transplant(const RingPtr& target) const;

  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Canonical deterministic comparison (for sorting outputs).
  static int cmp(const Poly& a, const Poly& b);

  std::string str() const;

 private:
  void normalize();
  RingPtr ring_;
  std::vector<Term> t_;
};

void require_same_ring(const Poly& a, const Poly& b);

/// Monomial helpers.
bool mono_divides(const Mono& a, const Mono& b);         // a | b
Mono mono_mul(const Mono& a, const Mono& b);
Mono mono_div(const Mono& a, const Mono& b);             // b / a (caller checks)
Mono mono_lcm(const Mono& a, const Mono& b);
int mono_total_degree(const Mono& m);

/// A ring homomorphism F_p[src] -> F_p[dst] given by variable images.
struct RingMap {
  RingPtr src;
  RingPtr dst;
  std::vector<Poly> images;  // one per src variable, in dst

  Poly apply(const Poly& f) const { return f.substitute(dst, images); }
};

}  // namespace charp
