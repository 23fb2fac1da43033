#include "charp/frobenius.hpp"

namespace charp {

long long pe_power(uint32_t p, int e) {
  check(e >= 0, Errc::Domain, "negative Frobenius level");
  long long q = 1;
  for (int i = 0; i < e; ++i) {
    q *= p;
    check(q <= INT32_MAX, Errc::Overflow, "p^e overflow");
  }
  return q;
}

PeDecomposition pe_decompose(const Poly& f, int e) {
  check(e >= 1, Errc::Domain, "decomposition level must be >= 1");
  const RingPtr& ring = f.ring();
  const long long q = pe_power(ring->field.p(), e);
  PeDecomposition D;
  D.e = e;
  D.q = q;
  std::map<Mono, std::vector<Term>> buckets;
  for (const auto& t : f.terms()) {
    Mono b(t.m.size()), inner(t.m.size());
    for (size_t i = 0; i < t.m.size(); ++i) {
      b[i] = (Exp)(t.m[i] % q);
      inner[i] = (Exp)(t.m[i] / q);
    }
    buckets[b].push_back({std::move(inner), t.c});  // c^{1/q} = c in F_p
  }
  for (auto& [b, terms] : buckets) D.parts.emplace(b, Poly::from_terms(ring, std::move(terms)));

  // Reconstruction identity, asserted on every call.
  Poly back = Poly::zero(ring);
  for (const auto& [b, h] : D.parts) back = back + h.frob_pow(q).mul_term(b, 1);
  check(back == f, Errc::Internal, "p^e decomposition failed to reconstruct");
  return D;
}

Poly pe_part(const Poly& f, int e, const Mono& b) {
  const RingPtr& ring = f.ring();
  const long long q = pe_power(ring->field.p(), e);
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    bool match = true;
    for (size_t i = 0; i < t.m.size() && match; ++i)
      if (t.m[i] % q != b[i]) match = false;
    if (!match) continue;
    Mono inner(t.m.size());
    for (size_t i = 0; i < t.m.size(); ++i) inner[i] = (Exp)(t.m[i] / q);
    terms.push_back({std::move(inner), t.c});
  }
  return Poly::from_terms(ring, std::move(terms));
}

Ideal frob_root(const Ideal& I, int e) {
  check(e >= 1, Errc::Domain, "Frobenius root level must be >= 1");
  std::vector<Poly> gens;
  for (const Poly& g : I.groebner()) {
    PeDecomposition D = pe_decompose(g, e);
    for (auto& [b, h] : D.parts) gens.push_back(h);
  }
  return Ideal(I.ring(), std::move(gens));
}

Ideal cartier_apply(const Poly& u, int e, const Ideal& I) {
  check(!u.is_zero(), Errc::Domain, "Cartier operator with zero key");
  return frob_root(I.multiply_poly(u), e);
}

Poly apply_pmap(const Poly& u, int e, const Poly& g) {
  require_same_ring(u, g);
  const long long q = pe_power(u.ring()->field.p(), e);
  Mono b(u.ring()->nvars(), (Exp)(q - 1));
  return pe_part(u * g, e, b);
}

bool in_bracket_of_max_ideal(const Poly& f, long long q) {
  for (const auto& t : f.terms()) {
    bool covered = false;
    for (Exp e : t.m)
      if ((long long)e >= q) { covered = true; break; }
    if (!covered) return false;  // this term survives outside m^{[q]}
  }
  return true;
}

bool fedder_test(const Poly& h) {
  const uint32_t p = h.ring()->field.p();
  check(!h.is_zero(), Errc::Domain, "Fedder test of zero");
  Poly hp = h.pow(p - 1);
  return !in_bracket_of_max_ideal(hp, p);
}

bool fedder_test(const Ideal& I) {
  const RingPtr& ring = I.ring();
  const uint32_t p = ring->field.p();
  Ideal colon = I.bracket_power(1).colon(I);
  // Contained in m^{[p]} iff every basis element is.
  std::vector<Poly> mp_gens;
  for (int i = 0; i < ring->nvars(); ++i) mp_gens.push_back(Poly::variable(ring, i).pow(p));
  Ideal mp(ring, std::move(mp_gens));
  for (const Poly& g : colon.groebner())
    if (!mp.contains(g)) return true;
  return false;
}

}  // namespace charp
