#include "charp/ideal.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <sstream>

namespace charp {

namespace {
std::atomic<long long> g_step_cap{1'000'000};
}

void set_step_cap(long long cap) { g_step_cap.store(cap > 0 ? cap : 1); }
long long step_cap() { return g_step_cap.load(); }

struct Ideal::Cache {
  std::mutex mu;
  std::shared_ptr<const std::vector<Poly>> gb;
};

namespace {

struct StepBudget {
  long long left = step_cap();
  void tick(long long n = 1) {
    left -= n;
    check(left >= 0, Errc::ResourceExceeded, "Groebner step cap exceeded");
  }
};

Poly reduce_full(const Poly& f, const std::vector<Poly>& G, StepBudget& budget) {
  if (G.empty()) return f;
  Poly rem = f;
  std::vector<Term> tail;
  const PolyRing& R = *f.ring();
  while (!rem.is_zero()) {
    const Term& lt = rem.leading_term();
    bool reduced = false;
    for (const Poly& g : G) {
      if (mono_divides(g.leading_mono(), lt.m)) {
        Mono qm = mono_div(g.leading_mono(), lt.m);
        uint32_t qc = R.field.mul(lt.c, R.field.inv(g.leading_coef()));
        rem = rem - g.mul_term(qm, qc);
        budget.tick();
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      tail.push_back(lt);
      rem = rem - Poly::monomial(f.ring(), lt.m, lt.c);
    }
  }
  return Poly::from_terms(f.ring(), std::move(tail));
}

Poly s_poly(const Poly& a, const Poly& b) {
  const PolyRing& R = *a.ring();
  Mono l = mono_lcm(a.leading_mono(), b.leading_mono());
  Mono ma = mono_div(a.leading_mono(), l);
  Mono mb = mono_div(b.leading_mono(), l);
  uint32_t ca = R.field.inv(a.leading_coef());
  uint32_t cb = R.field.inv(b.leading_coef());
  return a.mul_term(ma, ca) - b.mul_term(mb, cb);
}

std::vector<Poly> buchberger(const RingPtr& ring, std::vector<Poly> gens) {
  StepBudget budget;
  std::vector<Poly> G;
  for (auto& g : gens)
    if (!g.is_zero()) G.push_back(g.monic());
  if (G.empty()) return {};

  struct Pair {
    size_t i, j;
    Mono lcm;
    int deg;
  };
  auto pair_less = [&ring](const Pair& a, const Pair& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    int c = ring->cmp(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  std::vector<Pair> pending;
  auto push_pair = [&](size_t i, size_t j) {
    Mono l = mono_lcm(G[i].leading_mono(), G[j].leading_mono());
    pending.push_back({i, j, l, mono_total_degree(l)});
  };
  for (size_t i = 0; i < G.size(); ++i)
    for (size_t j = i + 1; j < G.size(); ++j) push_pair(i, j);

  auto in_pending = [&](size_t i, size_t j) {
    for (const Pair& p : pending)
      if ((p.i == i && p.j == j) || (p.i == j && p.j == i)) return true;
    return false;
  };

  while (!pending.empty()) {
    auto it = std::min_element(pending.begin(), pending.end(), pair_less);
    Pair pr = *it;
    pending.erase(it);

    const Mono& li = G[pr.i].leading_mono();
    const Mono& lj = G[pr.j].leading_mono();
    // Buchberger's first criterion: coprime leading monomials.
    bool coprime = true;
    for (size_t k = 0; k < li.size(); ++k)
      if (li[k] > 0 && lj[k] > 0) { coprime = false; break; }
    if (coprime) continue;
    // Chain criterion: some g_k divides the lcm and both side pairs are done.
    bool skip = false;
    for (size_t k = 0; k < G.size() && !skip; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (mono_divides(G[k].leading_mono(), pr.lcm) && !in_pending(pr.i, k) &&
          !in_pending(pr.j, k))
        skip = true;
    }
    if (skip) continue;

    Poly s = reduce_full(s_poly(G[pr.i], G[pr.j]), G, budget);
    if (s.is_zero()) continue;
    G.push_back(s.monic());
    for (size_t i = 0; i + 1 < G.size(); ++i) push_pair(i, G.size() - 1);
  }

  // Minimalize: drop elements whose leading monomial is divisible by another's.
  std::vector<Poly> minimal;
  for (size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      if (mono_divides(G[j].leading_mono(), G[i].leading_mono())) {
        if (G[j].leading_mono() == G[i].leading_mono()) {
          redundant = j < i;  // keep one representative
        } else {
          redundant = true;
        }
      }
    }
    if (!redundant) minimal.push_back(G[i]);
  }

  // Interreduce tails.
  std::vector<Poly> reduced;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Poly r = reduce_full(minimal[i], others, budget);
    if (!r.is_zero()) reduced.push_back(r.monic());
  }
  std::sort(reduced.begin(), reduced.end(), [&ring](const Poly& a, const Poly& b) {
    return ring->cmp(a.leading_mono(), b.leading_mono()) > 0;
  });
  return reduced;
}

}  // namespace

std::vector<Poly> groebner_basis(const RingPtr& ring, std::vector<Poly> gens) {
  return buchberger(ring, std::move(gens));
}

Poly normal_form_against(const Poly& f, const std::vector<Poly>& basis) {
  StepBudget budget;
  return reduce_full(f, basis, budget);
}

Ideal::Ideal(RingPtr ring, std::vector<Poly> gens)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    check(g.ring() == ring_ || g.ring()->same(*ring_), Errc::RingMismatch,
          "generator from a different ring");
    gens_.push_back(std::move(g));
  }
}

Ideal Ideal::unit(RingPtr ring) {
  Poly one = Poly::constant(ring, 1);
  return Ideal(std::move(ring), {one});
}

const std::vector<Poly>& Ideal::groebner() const {
  check(ring_ != nullptr, Errc::Domain, "uninitialized ideal");
  {
    std::lock_guard<std::mutex> lk(cache_->mu);
    if (cache_->gb) return *cache_->gb;
  }
  auto gb = std::make_shared<const std::vector<Poly>>(buchberger(ring_, gens_));
  std::lock_guard<std::mutex> lk(cache_->mu);
  if (!cache_->gb) cache_->gb = std::move(gb);
  return *cache_->gb;
}

Poly Ideal::normal_form(const Poly& f) const {
  require_same_ring(f, gens_.empty() ? Poly::zero(ring_) : gens_[0]);
  StepBudget budget;
  return reduce_full(f, groebner(), budget);
}

bool Ideal::contains(const Poly& f) const { return normal_form(f).is_zero(); }

bool Ideal::contains(const Ideal& other) const {
  for (const Poly& g : other.groebner())
    if (!contains(g)) return false;
  return true;
}

bool Ideal::equals(const Ideal& o) const {
  check(ring_->same(*o.ring_), Errc::RingMismatch, "ideal comparison across rings");
  const auto& a = groebner();
  const auto& b = o.groebner();
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

bool Ideal::is_zero_ideal() const { return groebner().empty(); }

bool Ideal::is_unit_ideal() const {
  const auto& gb = groebner();
  return gb.size() == 1 && gb[0].is_unit_constant();
}

Ideal Ideal::sum(const Ideal& o) const {
  check(ring_->same(*o.ring_), Errc::RingMismatch, "ideal sum across rings");
  std::vector<Poly> g = gens_;
  for (const auto& x : o.gens_) g.push_back(x);
  return Ideal(ring_, std::move(g));
}

Ideal Ideal::product(const Ideal& o) const {
  check(ring_->same(*o.ring_), Errc::RingMismatch, "ideal product across rings");
  std::vector<Poly> g;
  for (const auto& a : gens_)
    for (const auto& b : o.gens_) g.push_back(a * b);
  return Ideal(ring_, std::move(g));
}

Ideal Ideal::multiply_poly(const Poly& f) const {
  std::vector<Poly> g;
  for (const auto& a : gens_) g.push_back(a * f);
  return Ideal(ring_, std::move(g));
}

RingPtr elimination_ring(const RingPtr& ring, const std::vector<std::string>& aux) {
  std::vector<std::string> vars = aux;
  for (const auto& v : ring->vars) {
    check(std::find(aux.begin(), aux.end(), v) == aux.end(), Errc::Domain,
          "elimination variable collides with ring variable");
    vars.push_back(v);
  }
  return PolyRing::make(ring->field, std::move(vars), Order::Grevlex, (int)aux.size());
}

namespace {

// Restrict a poly in an elimination ring to the trailing block, if possible.
std::optional<Poly> restrict_to_base(const Poly& f, const RingPtr& base, int naux) {
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    for (int i = 0; i < naux; ++i)
      if (t.m[i] != 0) return std::nullopt;
    Mono m(t.m.begin() + naux, t.m.end());
    terms.push_back({std::move(m), t.c});
  }
  return Poly::from_terms(base, std::move(terms));
}

}  // namespace

Ideal Ideal::intersect(const Ideal& o) const {
  check(ring_->same(*o.ring_), Errc::RingMismatch, "ideal intersection across rings");
  std::string aux = "w_";
  while (ring_->var_index(aux) >= 0) aux += "_";
  RingPtr E = elimination_ring(ring_, {aux});
  Poly w = Poly::variable(E, 0);
  Poly one_minus_w = Poly::constant(E, 1) - w;
  std::vector<Poly> gens;
  for (const auto& f : gens_) gens.push_back(w * f.transplant(E));
  for (const auto& g : o.gens_) gens.push_back(one_minus_w * g.transplant(E));
  std::vector<Poly> gb = buchberger(E, std::move(gens));
  std::vector<Poly> result;
  for (const auto& g : gb) {
    if (auto r = restrict_to_base(g, ring_, 1)) result.push_back(*r);
  }
  return Ideal(ring_, std::move(result));
}

Ideal Ideal::colon(const Poly& f) const {
  check(!f.is_zero(), Errc::DivisionByZero, "colon by zero");
  Ideal inter = intersect(Ideal(ring_, {f}));
  std::vector<Poly> result;
  for (const auto& g : inter.groebner()) {
    auto q = g.exact_div(f);
    check(q.has_value(), Errc::Internal, "colon division failed");
    result.push_back(*q);
  }
  return Ideal(ring_, std::move(result));
}

Ideal Ideal::colon(const Ideal& J) const {
  check(!J.gens().empty(), Errc::DivisionByZero, "colon by zero ideal");
  Ideal acc = colon(J.gens()[0]);
  for (size_t i = 1; i < J.gens().size(); ++i) acc = acc.intersect(colon(J.gens()[i]));
  return acc;
}

Ideal Ideal::power(long long n) const {
  check(n >= 0, Errc::Domain, "negative ideal power");
  if (n == 0) return Ideal::unit(ring_);
  if (is_unit_ideal()) return Ideal::unit(ring_);
  const auto& gb = groebner();
  if (gb.size() == 1) return Ideal(ring_, {gb[0].pow(n)});
  Ideal base(ring_, gb);
  Ideal result = Ideal::unit(ring_);
  long long k = n;
  while (k) {
    if (k & 1) {
      result = result.product(base);
      result = Ideal(ring_, result.groebner());
    }
    k >>= 1;
    if (k) {
      base = base.product(base);
      base = Ideal(ring_, base.groebner());
    }
  }
  return result;
}

Ideal Ideal::bracket_power(int e) const {
  check(e >= 0, Errc::Domain, "negative bracket power");
  long long q = 1;
  for (int i = 0; i < e; ++i) {
    q *= ring_->field.p();
    check(q <= INT32_MAX, Errc::Overflow, "bracket power exponent overflow");
  }
  std::vector<Poly> g;
  for (const auto& f : gens_) g.push_back(f.frob_pow(q));
  return Ideal(ring_, std::move(g));
}

std::string Ideal::str() const {
  const auto& gb = groebner();
  std::ostringstream os;
  os << "⟨";
  if (gb.empty()) os << "0";
  for (size_t i = 0; i < gb.size(); ++i) {
    if (i) os << ", ";
    os << gb[i].str();
  }
  os << "⟩";
  return os.str();
}

}  // namespace charp
