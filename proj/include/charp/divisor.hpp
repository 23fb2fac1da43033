#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "charp/poly.hpp"
#include "charp/rat.hpp"

namespace charp {

class PrimeTable;
using TablePtr = std::shared_ptr<const PrimeTable>;

/// A declared finite set of monic irreducible "prime" polynomials over which
/// divisors live. Univariate entries are verified irreducible; multivariate
/// entries are accepted as user-asserted.
class PrimeTable {
 public:
  PrimeTable(RingPtr ring, std::vector<Poly> primes);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Poly>& primes() const { return primes_; }
  int size() const { return (int)primes_.size(); }
  const Poly& prime(int i) const { return primes_[i]; }
  int index_of(const Poly& p) const;  // -1 if absent

  bool same(const PrimeTable& o) const;

  static TablePtr make(RingPtr ring, std::vector<Poly> primes);
  static TablePtr empty(RingPtr ring) { return make(std::move(ring), {}); }

  /// New table extended with the monic irreducible factors of a univariate f.
  TablePtr extended_with_factors(const Poly& f) const;

 private:
  RingPtr ring_;
  std::vector<Poly> primes_;
};

enum class DivisorCmp { Equal, Geq, Leq, Incomparable };

/// A formal Q-divisor over a prime table: exact rational coefficients,
/// zero coefficients never stored.
class QDivisor {
 public:
  QDivisor() = default;
  explicit QDivisor(TablePtr table) : table_(std::move(table)) {}

  static QDivisor zero(TablePtr table) { return QDivisor(std::move(table)); }
  static QDivisor single(TablePtr table, int prime_index, Rat c);

  const TablePtr& table() const { return table_; }
  const std::map<int, Rat>& coeffs() const { return c_; }
  Rat coeff(int prime_index) const;
  bool is_zero() const { return c_.empty(); }

  QDivisor operator+(const QDivisor& o) const;
  QDivisor operator-(const QDivisor& o) const;
  QDivisor operator-() const;
  QDivisor scale(const Rat& r) const;

  QDivisor ceil() const;
  QDivisor floor() const;

  bool is_effective() const;
  bool is_integral() const;

  /// Re-key onto a larger table containing all primes of this one.
  QDivisor retable(const TablePtr& bigger) const;

  std::string str() const;

 private:
  void set(int i, const Rat& r);
  TablePtr table_;
  std::map<int, Rat> c_;
};

DivisorCmp divisor_cmp(const QDivisor& a, const QDivisor& b);

/// div(f) over the table: coefficient at P is ord_P(f). Every irreducible
/// factor of f must lie in the table (the unit residual is verified);
/// otherwise UncoveredFactor is raised naming the residual.
QDivisor divisor_of(const Poly& f, const TablePtr& table);

/// ord_P(f) by repeated exact division.
int order_at(const Poly& f, const Poly& prime);

/// Pull back a divisor along a ring map (base prime P contributes
/// a_P * ord_C(image of P) at each total-ring prime C).
QDivisor pullback_divisor(const RingMap& map, const QDivisor& base_divisor,
                          const TablePtr& total_table);

/// Convenience: extend a univariate table so f factors over it.
TablePtr ensure_covers(const TablePtr& table, const Poly& f);

}  // namespace charp
