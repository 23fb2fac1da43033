#pragma once

#include <random>
#include <vector>

#include "charp/parse.hpp"
#include "charp/poly.hpp"

namespace charp::testutil {

inline Poly random_poly(std::mt19937_64& rng, const RingPtr& ring, int max_terms, int max_exp) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> exp(0, max_exp);
  std::uniform_int_distribution<uint32_t> coef(0, ring->field.p() - 1);
  std::vector<Term> terms;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Mono m(ring->nvars());
    for (int v = 0; v < ring->nvars(); ++v) m[v] = exp(rng);
    terms.push_back({std::move(m), coef(rng)});
  }
  return Poly::from_terms(ring, std::move(terms));
}

inline Poly random_nonzero_poly(std::mt19937_64& rng, const RingPtr& ring, int max_terms,
                                int max_exp) {
  while (true) {
    Poly f = random_poly(rng, ring, max_terms, max_exp);
    if (!f.is_zero()) return f;
  }
}

/// All monic univariate polynomials of exact degree d over F_p (for the
/// brute-force factorization and irreducibility oracles).
inline std::vector<Poly> monic_of_degree(const RingPtr& ring, int var, int d) {
  std::vector<Poly> out;
  uint32_t p = ring->field.p();
  long long count = 1;
  for (int i = 0; i < d; ++i) count *= p;
  for (long long code = 0; code < count; ++code) {
    std::vector<Term> terms;
    Mono lead(ring->nvars(), 0);
    lead[var] = d;
    terms.push_back({lead, 1});
    long long c = code;
    for (int i = 0; i < d; ++i) {
      uint32_t ci = (uint32_t)(c % p);
      c /= p;
      if (ci) {
        Mono m(ring->nvars(), 0);
        m[var] = i;
        terms.push_back({m, ci});
      }
    }
    out.push_back(Poly::from_terms(ring, std::move(terms)));
  }
  return out;
}

}  // namespace charp::testutil
