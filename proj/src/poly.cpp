#include "charp/poly.hpp"

#include <algorithm>
#include <sstream>

namespace charp {

PolyRing::PolyRing(FieldCtx f, std::vector<std::string> v, Order o, int elim)
    : field(f), vars(std::move(v)), order(o), elim_block(elim) {
  check(!vars.empty(), Errc::Domain, "ring needs at least one variable");
  check(elim_block >= 0 && elim_block < (int)vars.size(), Errc::Domain, "bad elimination block");
  for (size_t i = 0; i < vars.size(); ++i)
    for (size_t j = i + 1; j < vars.size(); ++j)
      check(vars[i] != vars[j], Errc::Domain, "duplicate variable name '" + vars[i] + "'");
}

int PolyRing::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return (int)i;
  return -1;
}

namespace {

// Compare a slice [lo,hi) of two exponent vectors in the given base order.
int cmp_slice(const Mono& a, const Mono& b, int lo, int hi, Order order) {
  if (order == Order::Lex) {
    for (int i = lo; i < hi; ++i) {
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }
  long long da = 0, db = 0;
  for (int i = lo; i < hi; ++i) { da += a[i]; db += b[i]; }
  if (da != db) return da < db ? -1 : 1;
  for (int i = hi - 1; i >= lo; --i) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;  // reverse lex: smaller tail wins
  }
  return 0;
}

}  // namespace

int PolyRing::cmp(const Mono& a, const Mono& b) const {
  const int n = nvars();
  if (elim_block > 0) {
    int c = cmp_slice(a, b, 0, elim_block, order);
    if (c != 0) return c;
    return cmp_slice(a, b, elim_block, n, order);
  }
  return cmp_slice(a, b, 0, n, order);
}

bool PolyRing::same(const PolyRing& o) const {
  return field == o.field && vars == o.vars && order == o.order && elim_block == o.elim_block;
}

RingPtr PolyRing::make(uint32_t p, std::vector<std::string> vars, Order o) {
  return std::make_shared<const PolyRing>(FieldCtx(p), std::move(vars), o);
}

RingPtr PolyRing::make(FieldCtx f, std::vector<std::string> vars, Order o, int elim) {
  return std::make_shared<const PolyRing>(f, std::move(vars), o, elim);
}

void require_same_ring(const Poly& a, const Poly& b) {
  check(a.ring() && b.ring() && (a.ring() == b.ring() || a.ring()->same(*b.ring())),
        Errc::RingMismatch, "operands live in different rings");
}

bool mono_divides(const Mono& a, const Mono& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    long long s = (long long)a[i] + b[i];
    check(s <= INT32_MAX, Errc::Overflow, "exponent overflow");
    r[i] = (Exp)s;
  }
  return r;
}

Mono mono_div(const Mono& a, const Mono& b) {
  Mono r(b.size());
  for (size_t i = 0; i < b.size(); ++i) r[i] = b[i] - a[i];
  return r;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

int mono_total_degree(const Mono& m) {
  long long d = 0;
  for (Exp e : m) d += e;
  check(d <= INT32_MAX, Errc::Overflow, "degree overflow");
  return (int)d;
}

Poly Poly::constant(RingPtr ring, uint64_t c) {
  Poly r(ring);
  uint32_t cc = ring->field.reduce(c);
  if (cc != 0) r.t_.push_back({Mono(ring->nvars(), 0), cc});
  return r;
}

Poly Poly::variable(RingPtr ring, int idx) {
  check(idx >= 0 && idx < ring->nvars(), Errc::UnknownVariable, "variable index out of range");
  Poly r(ring);
  Mono m(ring->nvars(), 0);
  m[idx] = 1;
  r.t_.push_back({std::move(m), 1});
  return r;
}

Poly Poly::variable(RingPtr ring, const std::string& name) {
  int idx = ring->var_index(name);
  check(idx >= 0, Errc::UnknownVariable, "unknown variable '" + name + "'");
  return variable(ring, idx);
}

Poly Poly::monomial(RingPtr ring, Mono m, uint32_t c) {
  check((int)m.size() == ring->nvars(), Errc::Domain, "monomial arity mismatch");
  Poly r(ring);
  c %= ring->field.p();
  if (c != 0) r.t_.push_back({std::move(m), c});
  return r;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
  Poly r(std::move(ring));
  r.t_ = std::move(terms);
  r.normalize();
  return r;
}

void Poly::normalize() {
  const PolyRing& R = *ring_;
  std::sort(t_.begin(), t_.end(),
            [&R](const Term& a, const Term& b) { return R.cmp(a.m, b.m) > 0; });
  std::vector<Term> out;
  out.reserve(t_.size());
  for (auto& t : t_) {
    uint32_t c = t.c % R.field.p();
    if (!out.empty() && out.back().m == t.m) {
      out.back().c = R.field.add(out.back().c, c);
      if (out.back().c == 0) out.pop_back();
    } else if (c != 0) {
      out.push_back({std::move(t.m), c});
    }
  }
  t_ = std::move(out);
}

bool Poly::is_constant() const {
  if (t_.empty()) return true;
  return t_.size() == 1 && mono_total_degree(t_[0].m) == 0;
}

const Term& Poly::leading_term() const {
  check(!t_.empty(), Errc::Domain, "leading term of zero polynomial");
  return t_[0];
}

int Poly::degree(int var) const {
  int d = -1;
  for (const auto& t : t_) d = std::max(d, (int)t.m[var]);
  return d;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& t : t_) d = std::max(d, mono_total_degree(t.m));
  return d;
}

Poly Poly::operator+(const Poly& o) const {
  require_same_ring(*this, o);
  const PolyRing& R = *ring_;
  Poly r(ring_);
  r.t_.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() && j < o.t_.size()) {
    int c = R.cmp(t_[i].m, o.t_[j].m);
    if (c > 0) {
      r.t_.push_back(t_[i++]);
    } else if (c < 0) {
      r.t_.push_back(o.t_[j++]);
    } else {
      uint32_t s = R.field.add(t_[i].c, o.t_[j].c);
      if (s != 0) r.t_.push_back({t_[i].m, s});
      ++i;
      ++j;
    }
  }
  for (; i < t_.size(); ++i) r.t_.push_back(t_[i]);
  for (; j < o.t_.size(); ++j) r.t_.push_back(o.t_[j]);
  return r;
}

Poly Poly::operator-() const {
  Poly r(ring_);
  r.t_.reserve(t_.size());
  for (const auto& t : t_) r.t_.push_back({t.m, ring_->field.neg(t.c)});
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::mul_term(const Mono& m, uint32_t c) const {
  c %= ring_->field.p();
  Poly r(ring_);
  if (c == 0) return r;
  r.t_.reserve(t_.size());
  for (const auto& t : t_) r.t_.push_back({mono_mul(t.m, m), ring_->field.mul(t.c, c)});
  return r;
}

Poly Poly::mul_scalar(uint32_t c) const { return mul_term(Mono(ring_->nvars(), 0), c); }

Poly Poly::operator*(const Poly& o) const {
  require_same_ring(*this, o);
  const PolyRing& R = *ring_;
  if (is_zero() || o.is_zero()) return Poly(ring_);
  // Accumulate in an ordered map keyed by monomial.
  std::map<Mono, uint32_t> acc;
  for (const auto& a : t_) {
    for (const auto& b : o.t_) {
      Mono m = mono_mul(a.m, b.m);
      uint32_t prod = R.field.mul(a.c, b.c);
      auto it = acc.find(m);
      if (it == acc.end()) {
        acc.emplace(std::move(m), prod);
      } else {
        it->second = R.field.add(it->second, prod);
        if (it->second == 0) acc.erase(it);
      }
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) terms.push_back({m, c});
  Poly r(ring_);
  r.t_ = std::move(terms);
  std::sort(r.t_.begin(), r.t_.end(),
            [&R](const Term& a, const Term& b) { return R.cmp(a.m, b.m) > 0; });
  return r;
}

Poly Poly::pow(long long k) const {
  check(k >= 0, Errc::Domain, "negative exponent");
  Poly result = Poly::constant(ring_, 1);
  if (k == 0) return result;
  // Peel off p^e factors first: cheap Frobenius power in characteristic p.
  long long q = 1;
  const long long p = ring_->field.p();
  while (k % p == 0) { k /= p; q *= p; }
  Poly base = *this;
  long long kk = k;
  while (kk) {
    if (kk & 1) result = result * base;
    kk >>= 1;
    if (kk) base = base * base;
  }
  return q == 1 ? result : result.frob_pow(q);
}

Poly Poly::frob_pow(long long q) const {
  check(q >= 1, Errc::Domain, "bad Frobenius power");
  Poly r(ring_);
  r.t_.reserve(t_.size());
  for (const auto& t : t_) {
    Mono m(t.m.size());
    for (size_t i = 0; i < t.m.size(); ++i) {
      long long e = (long long)t.m[i] * q;
      check(e <= INT32_MAX, Errc::Overflow, "exponent overflow in Frobenius power");
      m[i] = (Exp)e;
    }
    r.t_.push_back({std::move(m), t.c});  // c^q = c in F_p
  }
  return r;
}

std::optional<Poly> Poly::exact_div(const Poly& b) const {
  require_same_ring(*this, b);
  check(!b.is_zero(), Errc::DivisionByZero, "division by zero polynomial");
  const PolyRing& R = *ring_;
  Poly rem = *this;
  std::vector<Term> quot;
  uint32_t lc_inv = R.field.inv(b.leading_coef());
  while (!rem.is_zero()) {
    const Term& lt = rem.leading_term();
    if (!mono_divides(b.leading_mono(), lt.m)) return std::nullopt;
    Mono qm = mono_div(b.leading_mono(), lt.m);
    uint32_t qc = R.field.mul(lt.c, lc_inv);
    quot.push_back({qm, qc});
    rem = rem - b.mul_term(qm, qc);
  }
  Poly q(ring_);
  q.t_ = std::move(quot);
  std::sort(q.t_.begin(), q.t_.end(),
            [&R](const Term& x, const Term& y) { return R.cmp(x.m, y.m) > 0; });
  return q;
}

Poly Poly::derivative(int var) const {
  Poly r(ring_);
  for (const auto& t : t_) {
    if (t.m[var] == 0) continue;
    uint32_t c = ring_->field.mul(t.c, ring_->field.reduce((uint64_t)t.m[var]));
    if (c == 0) continue;
    Mono m = t.m;
    m[var] -= 1;
    r.t_.push_back({std::move(m), c});
  }
  // Order is preserved under x^k -> x^{k-1} within one variable only for
  // univariate rings; re-sort to stay canonical in general.
  const PolyRing& R = *ring_;
  std::sort(r.t_.begin(), r.t_.end(),
            [&R](const Term& a, const Term& b) { return R.cmp(a.m, b.m) > 0; });
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return mul_scalar(ring_->field.inv(leading_coef()));
}

Poly Poly::substitute(const RingPtr& target, const std::vector<Poly>& images) const {
  check((int)images.size() == ring_->nvars(), Errc::Domain, "substitution arity mismatch");
  check(target->field == ring_->field, Errc::RingMismatch, "substitution across characteristics");
  Poly result = Poly::zero(target);
  for (const auto& t : t_) {
    Poly term = Poly::constant(target, t.c);
    for (size_t i = 0; i < images.size(); ++i) {
      if (t.m[i] == 0) continue;
      term = term * images[i].pow(t.m[i]);
    }
    result = result + term;
  }
  return result;
}

Poly Poly::transplant(const RingPtr& target) const {
  std::vector<Poly> images;
  images.reserve(ring_->nvars());
  for (int v = 0; v < ring_->nvars(); ++v) {
    int idx = target->var_index(ring_->vars[v]);
    if (idx < 0) {
      check(degree(v) <= 0, Errc::UnknownVariable,
            "variable '" + ring_->vars[v] + "' missing in target ring");
      images.push_back(Poly::zero(target));
    } else {
      images.push_back(Poly::variable(target, idx));
    }
  }
  return substitute(target, images);
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.t_.size() != b.t_.size()) return false;
  for (size_t i = 0; i < a.t_.size(); ++i)
    if (a.t_[i].c != b.t_[i].c || a.t_[i].m != b.t_[i].m) return false;
  return true;
}

int Poly::cmp(const Poly& a, const Poly& b) {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  size_t n = std::min(a.t_.size(), b.t_.size());
  for (size_t i = 0; i < n; ++i) {
    if (a.t_[i].m != b.t_[i].m) {
      int c = a.ring()->cmp(a.t_[i].m, b.t_[i].m);
      return c;
    }
    if (a.t_[i].c != b.t_[i].c) return a.t_[i].c < b.t_[i].c ? -1 : 1;
  }
  if (a.t_.size() != b.t_.size()) return a.t_.size() < b.t_.size() ? -1 : 1;
  return 0;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : t_) {
    if (!first) os << " + ";
    first = false;
    bool trivial_mono = mono_total_degree(t.m) == 0;
    bool printed = false;
    if (t.c != 1 || trivial_mono) {
      os << t.c;
      printed = true;
    }
    for (size_t i = 0; i < t.m.size(); ++i) {
      if (t.m[i] == 0) continue;
      if (printed) os << "*";
      os << ring_->vars[i];
      if (t.m[i] > 1) os << "^" << t.m[i];
      printed = true;
    }
  }
  return os.str();
}

}  // namespace charp
