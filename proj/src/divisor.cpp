#include "charp/divisor.hpp"

#include <algorithm>
#include <sstream>

#include "charp/factor.hpp"

namespace charp {

namespace {

bool is_univariate_or_constant(const Poly& f) {
  int var = -1;
  for (const auto& t : f.terms()) {
    for (size_t i = 0; i < t.m.size(); ++i) {
      if (t.m[i] == 0) continue;
      if (var == -1) var = (int)i;
      if (var != (int)i) return false;
    }
  }
  return true;
}

}  // namespace

PrimeTable::PrimeTable(RingPtr ring, std::vector<Poly> primes)
    : ring_(std::move(ring)), primes_(std::move(primes)) {
  for (auto& p : primes_) {
    check(!p.is_zero() && !p.is_constant(), Errc::Domain, "prime table entry is constant");
    check(p.ring() == ring_ || p.ring()->same(*ring_), Errc::RingMismatch,
          "prime from a different ring");
    p = p.monic();
    if (is_univariate_or_constant(p))
      check(is_irreducible_univariate(p), Errc::Domain,
            "reducible univariate entry '" + p.str() + "' in prime table");
  }
  for (size_t i = 0; i < primes_.size(); ++i)
    for (size_t j = i + 1; j < primes_.size(); ++j)
      check(!(primes_[i] == primes_[j]), Errc::Domain, "duplicate prime table entry");
}

int PrimeTable::index_of(const Poly& p) const {
  for (size_t i = 0; i < primes_.size(); ++i)
    if (primes_[i] == p) return (int)i;
  return -1;
}

bool PrimeTable::same(const PrimeTable& o) const {
  if (!ring_->same(*o.ring_) || primes_.size() != o.primes_.size()) return false;
  for (size_t i = 0; i < primes_.size(); ++i)
    if (!(primes_[i] == o.primes_[i])) return false;
  return true;
}

TablePtr PrimeTable::make(RingPtr ring, std::vector<Poly> primes) {
  return std::make_shared<const PrimeTable>(std::move(ring), std::move(primes));
}

TablePtr PrimeTable::extended_with_factors(const Poly& f) const {
  check(is_univariate_or_constant(f), Errc::Multivariate,
        "automatic table extension needs univariate input");
  std::vector<Poly> primes = primes_;
  for (auto& [g, m] : univariate_factor(f)) {
    bool present = false;
    for (const auto& p : primes)
      if (p == g) { present = true; break; }
    if (!present) primes.push_back(g);
  }
  return make(ring_, std::move(primes));
}

TablePtr ensure_covers(const TablePtr& table, const Poly& f) {
  if (f.is_constant()) return table;
  return table->extended_with_factors(f);
}

QDivisor QDivisor::single(TablePtr table, int prime_index, Rat c) {
  QDivisor d(std::move(table));
  d.set(prime_index, c);
  return d;
}

Rat QDivisor::coeff(int prime_index) const {
  auto it = c_.find(prime_index);
  return it == c_.end() ? Rat(0) : it->second;
}

void QDivisor::set(int i, const Rat& r) {
  check(i >= 0 && i < table_->size(), Errc::Domain, "prime index out of range");
  if (r.is_zero())
    c_.erase(i);
  else
    c_[i] = r;
}

namespace {
void require_same_table(const QDivisor& a, const QDivisor& b) {
  check(a.table() && b.table() && (a.table() == b.table() || a.table()->same(*b.table())),
        Errc::TableMismatch, "divisors over different prime tables");
}
}  // namespace

QDivisor QDivisor::operator+(const QDivisor& o) const {
  require_same_table(*this, o);
  QDivisor r(table_);
  r.c_ = c_;
  for (const auto& [i, v] : o.c_) {
    Rat s = r.coeff(i) + v;
    r.set(i, s);
  }
  return r;
}

QDivisor QDivisor::operator-() const {
  QDivisor r(table_);
  for (const auto& [i, v] : c_) r.c_[i] = -v;
  return r;
}

QDivisor QDivisor::operator-(const QDivisor& o) const { return *this + (-o); }

QDivisor QDivisor::scale(const Rat& s) const {
  QDivisor r(table_);
  if (s.is_zero()) return r;
  for (const auto& [i, v] : c_) r.c_[i] = v * s;
  return r;
}

QDivisor QDivisor::ceil() const {
  QDivisor r(table_);
  for (const auto& [i, v] : c_) r.set(i, Rat(v.ceil()));
  return r;
}

QDivisor QDivisor::floor() const {
  QDivisor r(table_);
  for (const auto& [i, v] : c_) r.set(i, Rat(v.floor()));
  return r;
}

bool QDivisor::is_effective() const {
  for (const auto& [i, v] : c_)
    if (v.is_negative()) return false;
  return true;
}

bool QDivisor::is_integral() const {
  for (const auto& [i, v] : c_)
    if (!v.is_integer()) return false;
  return true;
}

QDivisor QDivisor::retable(const TablePtr& bigger) const {
  QDivisor r(bigger);
  for (const auto& [i, v] : c_) {
    int j = bigger->index_of(table_->prime(i));
    check(j >= 0, Errc::TableMismatch, "retable: prime missing in target table");
    r.set(j, v);
  }
  return r;
}

std::string QDivisor::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, v] : c_) {
    Rat shown = v;
    if (first) {
      if (v.is_negative()) { os << "-"; shown = -v; }
    } else {
      os << (v.is_negative() ? " - " : " + ");
      shown = v.is_negative() ? -v : v;
    }
    first = false;
    os << shown.str() << "[" << table_->prime(i).str() << "]";
  }
  return os.str();
}

DivisorCmp divisor_cmp(const QDivisor& a, const QDivisor& b) {
  require_same_table(a, b);
  bool geq = true, leq = true;
  auto consider = [&](int i) {
    Rat x = a.coeff(i), y = b.coeff(i);
    if (x < y) geq = false;
    if (y < x) leq = false;
  };
  for (const auto& [i, v] : a.coeffs()) consider(i);
  for (const auto& [i, v] : b.coeffs()) consider(i);
  if (geq && leq) return DivisorCmp::Equal;
  if (geq) return DivisorCmp::Geq;
  if (leq) return DivisorCmp::Leq;
  return DivisorCmp::Incomparable;
}

int order_at(const Poly& f, const Poly& prime) {
  check(!f.is_zero(), Errc::Domain, "order of zero polynomial");
  int ord = 0;
  Poly cur = f;
  while (true) {
    auto q = cur.exact_div(prime);
    if (!q) return ord;
    cur = *q;
    ++ord;
  }
}

QDivisor divisor_of(const Poly& f, const TablePtr& table) {
  check(!f.is_zero(), Errc::Domain, "divisor of zero");
  check(f.ring() == table->ring() || f.ring()->same(*table->ring()), Errc::RingMismatch,
        "polynomial and table from different rings");
  QDivisor d(table);
  Poly residual = f;
  for (int i = 0; i < table->size(); ++i) {
    int ord = 0;
    while (true) {
      auto q = residual.exact_div(table->prime(i));
      if (!q) break;
      residual = *q;
      ++ord;
    }
    if (ord > 0) d = d + QDivisor::single(table, i, Rat(ord));
  }
  check(residual.is_constant(), Errc::UncoveredFactor,
        "divisor_of: residual factor '" + residual.str() + "' not covered by the prime table");
  return d;
}

QDivisor pullback_divisor(const RingMap& map, const QDivisor& base_divisor,
                          const TablePtr& total_table) {
  QDivisor out(total_table);
  const TablePtr& base_table = base_divisor.table();
  for (const auto& [i, a] : base_divisor.coeffs()) {
    Poly image = map.apply(base_table->prime(i));
    QDivisor dv = divisor_of(image, total_table);
    out = out + dv.scale(a);
  }
  return out;
}

}  // namespace charp
