#include "charp/factor.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>

namespace charp {

namespace {

std::atomic<uint64_t> g_seed{0x9e3779b97f4a7c15ull};

// Dense univariate arithmetic over F_p; coefficient index = exponent.
using UPoly = std::vector<uint32_t>;

void trim(UPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const UPoly& f) { return (int)f.size() - 1; }

UPoly umul(const UPoly& a, const UPoly& b, const FieldCtx& F) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
  }
  return r;
}

UPoly umod(UPoly f, const UPoly& g, const FieldCtx& F) {
  int dg = deg(g);
  uint32_t lci = F.inv(g.back());
  while (deg(f) >= dg) {
    uint32_t c = F.mul(f.back(), lci);
    int shift = deg(f) - dg;
    if (c != 0) {
      for (int i = 0; i <= dg; ++i) {
        if (g[i] == 0) continue;
        f[i + shift] = F.sub(f[i + shift], F.mul(c, g[i]));
      }
    }
    f.pop_back();
    trim(f);
  }
  return f;
}

UPoly udivexact(UPoly f, const UPoly& g, const FieldCtx& F) {
  int dg = deg(g);
  uint32_t lci = F.inv(g.back());
  UPoly q(std::max(0, deg(f) - dg) + 1, 0);
  while (deg(f) >= dg) {
    uint32_t c = F.mul(f.back(), lci);
    int shift = deg(f) - dg;
    q[shift] = c;
    for (int i = 0; i <= dg; ++i) {
      if (g[i] == 0) continue;
      f[i + shift] = F.sub(f[i + shift], F.mul(c, g[i]));
    }
    trim(f);
  }
  check(f.empty(), Errc::Internal, "inexact division in factorization");
  trim(q);
  return q;
}

void umonic(UPoly& f, const FieldCtx& F) {
  if (f.empty()) return;
  uint32_t inv = F.inv(f.back());
  if (inv == 1) return;
  for (auto& c : f) c = F.mul(c, inv);
}

UPoly ugcd(UPoly a, UPoly b, const FieldCtx& F) {
  while (!b.empty()) {
    UPoly r = umod(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  umonic(a, F);
  return a;
}

UPoly uderiv(const UPoly& f, const FieldCtx& F) {
  UPoly r;
  if (f.size() <= 1) return r;
  r.resize(f.size() - 1, 0);
  for (size_t i = 1; i < f.size(); ++i) r[i - 1] = F.mul(f[i], F.reduce(i));
  trim(r);
  return r;
}

UPoly upowmod(UPoly b, uint64_t e, const UPoly& m, const FieldCtx& F) {
  UPoly r{1};
  b = umod(std::move(b), m, F);
  while (e) {
    if (e & 1) r = umod(umul(r, b, F), m, F);
    e >>= 1;
    if (e) b = umod(umul(b, b, F), m, F);
  }
  return r;
}

// x^(p^k) mod f by iterated p-th powers.
UPoly frob_iterate(const UPoly& start, int k, const UPoly& f, const FieldCtx& F) {
  UPoly x = start;
  for (int i = 0; i < k; ++i) x = upowmod(x, F.p(), f, F);
  return x;
}

// Distinct-degree factorization of a squarefree monic f.
std::vector<std::pair<UPoly, int>> ddf(UPoly f, const FieldCtx& F) {
  std::vector<std::pair<UPoly, int>> out;
  UPoly xq{0, 1};  // x
  xq = umod(xq, f, F);
  int d = 0;
  while (deg(f) > 0) {
    ++d;
    if (2 * d > deg(f)) {
      out.push_back({f, deg(f)});
      break;
    }
    xq = upowmod(xq, F.p(), f, F);
    // gcd(x^(p^d) - x, f)
    UPoly diff = xq;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = F.sub(diff[1], 1);
    trim(diff);
    UPoly g = ugcd(f, diff, F);
    if (deg(g) > 0) {
      out.push_back({g, d});
      f = udivexact(f, g, F);
      xq = umod(xq, f, F);
    }
  }
  return out;
}

// Equal-degree splitting (Cantor-Zassenhaus); f monic squarefree, all
// irreducible factors of degree d.
void edf(const UPoly& f, int d, const FieldCtx& F, std::mt19937_64& rng,
         std::vector<UPoly>& out) {
  if (deg(f) == d) {
    out.push_back(f);
    return;
  }
  const uint32_t p = F.p();
  while (true) {
    UPoly r(deg(f), 0);
    for (auto& c : r) c = (uint32_t)(rng() % p);
    trim(r);
    if (deg(r) < 1) continue;
    UPoly g = ugcd(f, r, F);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      edf(g, d, F, rng, out);
      edf(udivexact(f, g, F), d, F, rng, out);
      return;
    }
    UPoly h;
    if (p == 2) {
      // Trace map r + r^2 + r^4 + ... + r^(2^(d-1)) mod f.
      UPoly acc = umod(r, f, F);
      UPoly pow = acc;
      for (int i = 1; i < d; ++i) {
        pow = umod(umul(pow, pow, F), f, F);
        acc.resize(std::max(acc.size(), pow.size()), 0);
        for (size_t j = 0; j < pow.size(); ++j) acc[j] = F.add(acc[j], pow[j]);
        trim(acc);
      }
      h = acc;
    } else {
      uint64_t e = 1;
      for (int i = 0; i < d; ++i) e *= p;
      h = upowmod(r, (e - 1) / 2, f, F);
      if (h.empty()) h.resize(1, 0);
      h[0] = F.sub(h[0], 1);
      trim(h);
    }
    UPoly g2 = ugcd(f, h, F);
    if (deg(g2) > 0 && deg(g2) < deg(f)) {
      edf(g2, d, F, rng, out);
      edf(udivexact(f, g2, F), d, F, rng, out);
      return;
    }
  }
}

// Squarefree decomposition in characteristic p (Yun-style with p-th root
// extraction when the derivative vanishes). Returns (squarefree part, mult).
void squarefree_decompose(UPoly f, const FieldCtx& F, int outer_mult,
                          std::map<std::vector<uint32_t>, int>& acc_unused,
                          std::vector<std::pair<UPoly, int>>& parts) {
  (void)acc_unused;
  const uint32_t p = F.p();
  UPoly fp = uderiv(f, F);
  if (fp.empty()) {
    // f = g(x^p); extract the p-th root (coefficients are fixed by Frobenius).
    UPoly g((deg(f)) / p + 1, 0);
    for (size_t i = 0; i < f.size(); ++i) {
      if (f[i] == 0) continue;
      check(i % p == 0, Errc::Internal, "zero derivative with non-p-power support");
      g[i / p] = f[i];
    }
    trim(g);
    std::map<std::vector<uint32_t>, int> dummy;
    squarefree_decompose(g, F, outer_mult * (int)p, dummy, parts);
    return;
  }
  UPoly c = ugcd(f, fp, F);
  UPoly w = udivexact(f, c, F);
  int i = 1;
  while (deg(w) > 0) {
    UPoly y = ugcd(w, c, F);
    UPoly z = udivexact(w, y, F);
    if (deg(z) > 0) parts.push_back({z, i * outer_mult});
    w = y;
    c = udivexact(c, y, F);
    ++i;
  }
  if (deg(c) > 0) {
    std::map<std::vector<uint32_t>, int> dummy;
    squarefree_decompose(c, F, outer_mult, dummy, parts);
  }
}

UPoly to_dense(const Poly& f, int var) {
  UPoly r(f.degree(var) + 1, 0);
  for (const auto& t : f.terms()) r[t.m[var]] = t.c;
  return r;
}

Poly from_dense(const UPoly& f, const RingPtr& ring, int var) {
  std::vector<Term> terms;
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    Mono m(ring->nvars(), 0);
    m[var] = (Exp)i;
    terms.push_back({std::move(m), f[i]});
  }
  return Poly::from_terms(ring, std::move(terms));
}

int the_variable(const Poly& f) {
  int var = -1;
  for (const auto& t : f.terms()) {
    for (size_t i = 0; i < t.m.size(); ++i) {
      if (t.m[i] == 0) continue;
      if (var == -1) var = (int)i;
      check(var == (int)i, Errc::Multivariate, "univariate operation on multivariate input");
    }
  }
  return var;  // -1 for constants
}

}  // namespace

void set_factor_seed(uint64_t seed) { g_seed.store(seed ? seed : 1); }

std::vector<std::pair<Poly, int>> univariate_factor(const Poly& f) {
  check(!f.is_zero(), Errc::Domain, "factorization of zero");
  const FieldCtx& F = f.ring()->field;
  int var = the_variable(f);
  std::vector<std::pair<Poly, int>> result;
  if (var == -1) return result;  // unit scalar: empty factor list

  UPoly dense = to_dense(f, var);
  umonic(dense, F);
  std::vector<std::pair<UPoly, int>> sf;
  std::map<std::vector<uint32_t>, int> dummy;
  squarefree_decompose(dense, F, 1, dummy, sf);

  std::mt19937_64 rng(g_seed.load());
  std::map<Poly, int, decltype([](const Poly& a, const Poly& b) {
             return Poly::cmp(a, b) < 0;
           })>
      acc;
  for (auto& [part, mult] : sf) {
    for (auto& [g, d] : ddf(part, F)) {
      std::vector<UPoly> irr;
      edf(g, d, F, rng, irr);
      for (auto& u : irr) acc[from_dense(u, f.ring(), var)] += mult;
    }
  }
  for (auto& [g, m] : acc) result.push_back({g, m});

  // Re-multiplication identity, checked on every call.
  Poly prod = Poly::constant(f.ring(), f.leading_coef());
  for (auto& [g, m] : result) prod = prod * g.pow(m);
  check(prod == f, Errc::Internal, "factorization re-multiplication failed");
  return result;
}

bool is_irreducible_univariate(const Poly& f) {
  if (f.is_zero() || f.is_constant()) return false;
  auto fs = univariate_factor(f);
  return fs.size() == 1 && fs[0].second == 1;
}

}  // namespace charp
