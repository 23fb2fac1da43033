#include "charp/testideal.hpp"

#include <numeric>

#include "charp/factor.hpp"
#include "charp/frobenius.hpp"
#include "charp/upoly.hpp"

namespace charp {

long long ceil_t_qminus1(const Rat& t, long long q) { return (t * Rat(q - 1)).ceil(); }

namespace {

// Key of the round-up ceil((q-1) * delta) as a polynomial product.
Poly roundup_key(const QDivisor& delta, long long q) {
  const RingPtr& ring = delta.table()->ring();
  Poly u = Poly::constant(ring, 1);
  for (const auto& [i, c] : delta.coeffs()) {
    long long k = (c * Rat(q - 1)).ceil();
    if (k > 0) u = u * delta.table()->prime(i).pow(k);
  }
  return u;
}

// Multiplicative order of p modulo m (0 when p divides m or m <= 1).
int integrality_period(uint32_t p, long long m, int cap) {
  if (m <= 1) return 1;
  if (m % p == 0) return 0;
  long long pk = 1;
  for (int d = 1; d <= cap; ++d) {
    pk = pk * (p % m) % m;
    if (pk == 1 % m) return d;
  }
  return 0;
}

long long denominator_lcm(const QDivisor& d) {
  long long m = 1;
  for (const auto& [i, c] : d.coeffs()) m = std::lcm(m, c.den());
  return m;
}

// Skoda reduction: split off the integer part of an effective divisor.
// Returns (shift polynomial f, residual divisor with coefficients in [0,1)).
std::pair<Poly, QDivisor> split_integer_part(const QDivisor& delta) {
  const RingPtr& ring = delta.table()->ring();
  Poly f = Poly::constant(ring, 1);
  QDivisor rest(delta.table());
  for (const auto& [i, c] : delta.coeffs()) {
    long long fl = c.floor();
    if (fl > 0) f = f * delta.table()->prime(i).pow(fl);
    Rat frac = c - Rat(fl);
    if (!frac.is_zero()) rest = rest + QDivisor::single(delta.table(), i, frac);
  }
  return {f, rest};
}

Ideal ideal_power_cached(const Ideal& a, long long n) {
  if (n == 0 || a.is_unit_ideal()) return Ideal::unit(a.ring());
  return a.power(n);
}

}  // namespace

Ideal tau_regular(const QDivisor& delta, const Ideal& a, const Rat& t, const ChainOptions& opt) {
  const RingPtr& ring = delta.table()->ring();
  check(delta.is_effective(), Errc::Domain, "tau_regular needs an effective divisor");
  check(!a.gens().empty() && !a.is_zero_ideal(), Errc::Domain, "coefficient ideal must be nonzero");
  check(!t.is_negative(), Errc::Domain, "exponent t must be nonnegative");
  const uint32_t p = ring->field.p();

  auto [fshift, d0] = split_integer_part(delta);

  // Test element: the product of the residual support primes, times a power
  // of a generator of a when the ideal part is in play. Both factors land in
  // the test ideal (monotonicity plus the Skoda identity), and a power of the
  // product is a genuine test element since inverting it makes the pair
  // trivial.
  Poly c = Poly::constant(ring, 1);
  for (const auto& [i, v] : d0.coeffs()) c = c * d0.table()->prime(i);
  bool use_a = !a.is_unit_ideal() && t > Rat(0);
  if (use_a) {
    const Poly& g = a.groebner().front();
    long long k = std::max((long long)1, t.ceil());
    c = c * g.pow(k);
  }

  long long period = integrality_period(p, denominator_lcm(d0), opt.e_cap);
  int needed_idle = std::max(2, period > 0 ? (int)period : 2);

  Ideal J(ring, {c});
  int idle = 0;
  int last_e = 0;
  for (int e = 1; e <= opt.e_cap; ++e) {
    last_e = e;
    const long long q = pe_power(p, e);
    Poly U = roundup_key(d0, q);
    Ideal A = ideal_power_cached(a, ceil_t_qminus1(t, q));
    bool grew_at_level = false;
    for (int it = 0; it < opt.max_level_iters; ++it) {
      Ideal step = cartier_apply(U, e, A.product(J));
      Ideal next = Ideal(ring, J.sum(step).groebner());
      if (next.equals(J)) break;
      J = next;
      grew_at_level = true;
      check(it + 1 < opt.max_level_iters, Errc::ResourceExceeded,
            "tau chain did not stabilize within per-level iteration cap");
    }
    if (grew_at_level)
      idle = 0;
    else if (++idle >= needed_idle)
      break;
  }
  check(idle >= needed_idle, Errc::ResourceExceeded,
        "tau chain still ascending at e-cap " + std::to_string(opt.e_cap) +
            "; last value " + J.str());

  // Certify the fixed point under every level up to the one reached.
  for (int e = 1; e <= last_e; ++e) {
    const long long q = pe_power(p, e);
    Poly U = roundup_key(d0, q);
    Ideal A = ideal_power_cached(a, ceil_t_qminus1(t, q));
    check(J.contains(cartier_apply(U, e, A.product(J))), Errc::Internal,
          "stabilized chain is not closed at level " + std::to_string(e));
  }
  return Ideal(ring, J.multiply_poly(fshift).groebner());
}

std::string FractionalIdeal::str() const {
  if (den.is_unit_constant()) return num.str();
  return "(1/" + den.str() + ") " + num.str();
}

bool fractional_equal(const FractionalIdeal& a, const FractionalIdeal& b) {
  return a.num.multiply_poly(b.den).equals(b.num.multiply_poly(a.den));
}

FractionalIdeal tau_fractional(const QDivisor& delta, const Ideal& a, const Rat& t,
                               const ChainOptions& opt) {
  const RingPtr& ring = delta.table()->ring();
  Poly f = Poly::constant(ring, 1);
  for (const auto& [i, c] : delta.coeffs()) {
    if (c.is_negative()) f = f * delta.table()->prime(i).pow((-c).ceil());
  }
  QDivisor cleared = delta + divisor_of(f, delta.table());
  check(cleared.is_effective(), Errc::Internal, "clearing element failed");
  Ideal num = tau_regular(cleared, a, t, opt);
  return FractionalIdeal{num, f};
}

Ideal tau_hypersurface(const RingPtr& ambient, const Poly& h, const std::optional<Poly>& seed,
                       const ChainOptions& opt) {
  check(!h.is_zero() && !h.is_constant(), Errc::Domain, "hypersurface equation must be nonunit");
  const uint32_t p = ambient->field.p();

  // Reducedness: verifiable for univariate h, user-asserted otherwise.
  bool univ = true;
  {
    int var = -1;
    for (const auto& t : h.terms())
      for (size_t i = 0; i < t.m.size(); ++i)
        if (t.m[i] != 0) {
          if (var == -1) var = (int)i;
          if (var != (int)i) univ = false;
        }
  }
  if (univ) {
    for (auto& [g, m] : univariate_factor(h))
      check(m == 1, Errc::Domain, "hypersurface equation is not reduced");
  }

  Ideal hI(ambient, {h});
  Poly c = Poly::zero(ambient);
  if (seed) {
    c = *seed;
    check(!c.is_zero() && !hI.contains(c), Errc::NeedTestElement,
          "supplied test element lies in <h>");
  } else {
    for (int v = 0; v < ambient->nvars(); ++v) {
      Poly dv = h.derivative(v);
      if (!dv.is_zero() && !hI.contains(dv)) { c = dv; break; }
    }
    check(!c.is_zero(), Errc::NeedTestElement,
          "no Jacobian test element available; supply one explicitly");
  }

  Poly key = h.pow(p - 1);
  Ideal J(ambient, {c, h});
  for (int it = 0;; ++it) {
    check(it < opt.max_level_iters, Errc::ResourceExceeded,
          "hypersurface tau chain did not stabilize; last value " + J.str());
    Ideal next = Ideal(ambient, J.sum(cartier_apply(key, 1, J)).groebner());
    if (next.equals(J)) break;
    J = next;
  }
  return J;
}

bool is_strongly_F_regular(const QDivisor& delta, const Ideal& a, const Rat& t,
                           const ChainOptions& opt) {
  return tau_regular(delta, a, t, opt).is_unit_ideal();
}

bool is_strongly_F_regular_hypersurface(const RingPtr& ambient, const Poly& h,
                                        const ChainOptions& opt) {
  return tau_hypersurface(ambient, h, std::nullopt, opt).is_unit_ideal();
}

SfpVerdict is_sharply_F_pure(const QDivisor& delta, const Ideal& a, const Rat& t, int e_cap) {
  const RingPtr& ring = delta.table()->ring();
  check(delta.is_effective(), Errc::Domain, "sharp F-purity check needs an effective divisor");
  const uint32_t p = ring->field.p();
  SfpVerdict v;
  for (int e = 1; e <= e_cap; ++e) {
    const long long q = pe_power(p, e);
    Poly U = roundup_key(delta, q);
    Ideal A = ideal_power_cached(a, ceil_t_qminus1(t, q));
    Ideal UA = A.multiply_poly(U);
    bool witness = false;
    for (const Poly& g : UA.groebner())
      if (!in_bracket_of_max_ideal(g, q)) { witness = true; break; }
    if (witness) {
      v.fpure = true;
      v.conclusive = true;
      v.witness_e = e;
      return v;
    }
  }
  v.fpure = false;
  int d = integrality_period(p, denominator_lcm(delta), e_cap);
  bool trivial_a = a.is_unit_ideal() || t.is_zero();
  // With an integrality period d and trivial coefficient ideal, splittings at
  // level kd compose down to level d, so a miss at the period is final.
  v.conclusive = (d > 0 && d <= e_cap && trivial_a);
  return v;
}

SfpVerdict is_sharply_F_pure_hypersurface(const Poly& h, const Ideal& a, const Rat& t, int e_cap) {
  const RingPtr& ring = h.ring();
  const uint32_t p = ring->field.p();
  SfpVerdict v;
  for (int e = 1; e <= e_cap; ++e) {
    const long long q = pe_power(p, e);
    Poly U = h.pow(q - 1);
    Ideal A = ideal_power_cached(a, ceil_t_qminus1(t, q));
    Ideal UA = A.multiply_poly(U);
    bool witness = false;
    for (const Poly& g : UA.groebner())
      if (!in_bracket_of_max_ideal(g, q)) { witness = true; break; }
    if (witness) {
      v.fpure = true;
      v.conclusive = true;
      v.witness_e = e;
      return v;
    }
  }
  v.fpure = false;
  v.conclusive = a.is_unit_ideal() || t.is_zero();  // Fedder at e=1 decides
  return v;
}

long long nu_value(const Poly& f, int e) {
  const RingPtr& ring = f.ring();
  check(!f.is_zero(), Errc::Domain, "nu of zero");
  const long long q = pe_power(ring->field.p(), e);
  for (const auto& t : f.terms())
    check(mono_total_degree(t.m) > 0, Errc::Domain, "nu needs f in the coordinate maximal ideal");

  auto reduce = [&](const Poly& g) {
    std::vector<Term> keep;
    for (const auto& t : g.terms()) {
      bool inside = false;
      for (Exp x : t.m)
        if ((long long)x >= q) { inside = true; break; }
      if (!inside) keep.push_back(t);
    }
    return Poly::from_terms(ring, std::move(keep));
  };

  Poly cur = Poly::constant(ring, 1);
  long long r = 0;
  while (true) {
    Poly next = reduce(cur * f);
    if (next.is_zero()) return r;
    cur = std::move(next);
    ++r;
  }
}

std::vector<FptBracket> fpt_estimate(const Poly& f, int e_max) {
  std::vector<FptBracket> out;
  Rat prev_lo(0);
  for (int e = 1; e <= e_max; ++e) {
    long long q = pe_power(f.ring()->field.p(), e);
    long long nu = nu_value(f, e);
    FptBracket b{e, q, nu, Rat(nu, q), Rat(nu + 1, q)};
    check(!(b.lo < prev_lo), Errc::Internal, "normalized nu sequence not monotone");
    prev_lo = b.lo;
    out.push_back(b);
  }
  return out;
}

namespace {

struct PulledBack {
  TablePtr total_table;
  QDivisor pullback;  // of deltaX
  QDivisor ram_T;     // div(s)
};

PulledBack pull_setup(const ExtensionPres& ext, const TraceLike& T, const QDivisor& deltaX) {
  const RingPtr& total = ext.total_ring();
  check(T.den.is_unit_constant(), Errc::Unsupported, "fractional trace-like keys not supported");
  Poly s = T.num.mul_scalar(total->field.inv(T.den.leading_coef()));
  check(!s.is_zero(), Errc::ZeroTrace, "zero trace-like map");
  TablePtr tbl = ensure_covers(PrimeTable::empty(total), s);
  RingMap down = ext.base_to_total();
  for (const auto& [i, c] : deltaX.coeffs())
    tbl = ensure_covers(tbl, down.apply(deltaX.table()->prime(i)));
  PulledBack pb;
  pb.total_table = tbl;
  pb.pullback = pullback_divisor(down, deltaX, tbl);
  pb.ram_T = divisor_of(s, tbl);
  return pb;
}

// Choose a base element whose pullback clears deltaY to an effective divisor.
Poly clearing_element(const ExtensionPres& ext, const QDivisor& deltaY,
                      const TablePtr& base_table) {
  const RingPtr& base = ext.base_ring();
  Poly f = Poly::constant(base, 1);
  if (deltaY.is_effective()) return f;
  RingMap down = ext.base_to_total();
  std::vector<long long> need(base_table->size(), 0);
  for (const auto& [j, c] : deltaY.coeffs()) {
    if (!c.is_negative()) continue;
    bool covered = false;
    for (int i = 0; i < base_table->size() && !covered; ++i) {
      Poly img = down.apply(base_table->prime(i));
      int e = order_at(img, deltaY.table()->prime(j));
      if (e >= 1) {
        need[i] = std::max(need[i], ((-c) * Rat(1, e)).ceil());
        covered = true;
      }
    }
    check(covered, Errc::UncoveredFactor,
          "no base-table prime lies under '" + deltaY.table()->prime(j).str() + "'");
  }
  for (int i = 0; i < base_table->size(); ++i)
    if (need[i] > 0) f = f * base_table->prime(i).pow(need[i]);
  return f;
}

Ideal trace_image_of_ideal(const ExtensionPres& ext, const Poly& s, const Ideal& tauY) {
  const RingPtr& base = ext.base_ring();
  std::vector<Poly> gens;
  Poly x = Poly::variable(ext.total_ring(), 0);
  for (const Poly& g : tauY.groebner())
    for (int j = 0; j < ext.degree(); ++j) gens.push_back(ext.psi(s * g * x.pow(j)));
  return Ideal(base, std::move(gens));
}

}  // namespace

TransformReport verify_transformation(const ExtensionPres& ext, const TraceLike& T,
                                      const QDivisor& deltaX, const Ideal& a, const Rat& t,
                                      const ChainOptions& opt) {
  const RingPtr& base = ext.base_ring();
  const RingPtr& total = ext.total_ring();
  check(deltaX.is_effective(), Errc::Unsupported,
        "verify_transformation expects an effective divisor on the base");
  PulledBack pb = pull_setup(ext, T, deltaX);
  QDivisor deltaY = pb.pullback - pb.ram_T;

  Poly f = clearing_element(ext, deltaY, deltaX.table());
  RingMap down = ext.base_to_total();
  QDivisor deltaY_eff = deltaY;
  if (!f.is_unit_constant()) {
    Poly fimg = down.apply(f);
    TablePtr tbl = ensure_covers(pb.total_table, fimg);
    deltaY_eff = deltaY.retable(tbl) + divisor_of(fimg, tbl);
  }
  check(deltaY_eff.is_effective(), Errc::Internal, "clearing failed to make Delta_Y effective");

  std::vector<Poly> a_img;
  for (const Poly& g : a.gens()) a_img.push_back(down.apply(g));
  Ideal aS(total, std::move(a_img));

  Ideal tauY = tau_regular(deltaY_eff, aS, t, opt);
  Poly s = T.num.mul_scalar(total->field.inv(T.den.leading_coef()));
  Ideal lhs = trace_image_of_ideal(ext, s, tauY);  // = f * T(tau(Y; Delta_Y))

  Ideal tauX = tau_regular(deltaX, a, t, opt);
  Ideal rhs = tauX.multiply_poly(f);

  TransformReport rep;
  rep.pass = lhs.equals(rhs);
  rep.lhs = Ideal(base, lhs.groebner()).str();
  rep.rhs = Ideal(base, rhs.groebner()).str();
  rep.detail = "Delta_Y = " + deltaY.str() +
               (f.is_unit_constant() ? "" : " (cleared by " + f.str() + ")");
  return rep;
}

TransformReport verify_intersection(const ExtensionPres& ext, const QDivisor& deltaX,
                                    const Ideal& a, const Rat& t, const ChainOptions& opt) {
  const RingPtr& base = ext.base_ring();
  const RingPtr& total = ext.total_ring();
  check(ext.is_trace_surjective() == TriState::True, Errc::Domain,
        "verify_intersection requires a surjective trace");
  TraceLike tr = ext.trace_key();
  PulledBack pb = pull_setup(ext, tr, deltaX);
  QDivisor deltaY = pb.pullback - pb.ram_T;
  check(deltaY.is_effective(), Errc::Unsupported,
        "the structure-sheaf form needs an effective Delta_Y");

  RingMap down = ext.base_to_total();
  std::vector<Poly> a_img;
  for (const Poly& g : a.gens()) a_img.push_back(down.apply(g));
  Ideal tauY = tau_regular(deltaY, Ideal(total, std::move(a_img)), t, opt);

  // Intersect with the base subring by elimination: in F_p[x, T'] compute
  // <gens(tauY), T' - t(x)> and keep the T'-only part.
  std::string aux = base->vars[0] + "_";
  RingPtr E = PolyRing::make(total->field, {total->vars[0], aux}, Order::Lex);
  std::vector<Poly> gens;
  for (const Poly& g : tauY.groebner()) {
    std::vector<Poly> imgs{Poly::variable(E, 0)};
    gens.push_back(g.substitute(E, imgs));
  }
  {
    std::vector<Poly> imgs{Poly::variable(E, 0)};
    gens.push_back(Poly::variable(E, 1) - ext.base_image().substitute(E, imgs));
  }
  std::vector<Poly> inter;
  for (const Poly& g : groebner_basis(E, gens)) {
    bool pure = true;
    for (const auto& tm : g.terms())
      if (tm.m[0] != 0) pure = false;
    if (!pure) continue;
    std::vector<Term> terms;
    for (const auto& tm : g.terms()) terms.push_back({Mono{tm.m[1]}, tm.c});
    inter.push_back(Poly::from_terms(base, std::move(terms)));
  }
  Ideal lhs(base, std::move(inter));
  Ideal rhs = tau_regular(deltaX, a, t, opt);

  TransformReport rep;
  rep.pass = lhs.equals(rhs);
  rep.lhs = lhs.str();
  rep.rhs = rhs.str();
  rep.detail = "Delta_Y = " + deltaY.str();
  return rep;
}

ContainmentReport verify_containment_extension(const ExtensionPres& ext, const QDivisor& deltaX,
                                               const Ideal& a, const Rat& t,
                                               const ChainOptions& opt) {
  const RingPtr& total = ext.total_ring();
  TraceLike tr = ext.trace_key();
  PulledBack pb = pull_setup(ext, tr, deltaX);
  QDivisor deltaY = pb.pullback - pb.ram_T;
  check(deltaX.is_effective() && deltaY.is_effective(), Errc::Domain,
        "containment check needs effective divisors on both sides");

  RingMap down = ext.base_to_total();
  std::vector<Poly> a_img;
  for (const Poly& g : a.gens()) a_img.push_back(down.apply(g));
  Ideal tauY = tau_regular(deltaY, Ideal(total, std::move(a_img)), t, opt);

  Ideal tauX = tau_regular(deltaX, a, t, opt);
  std::vector<Poly> ext_gens;
  for (const Poly& g : tauX.groebner()) ext_gens.push_back(down.apply(g));
  Ideal extended(total, std::move(ext_gens));

  ContainmentReport rep;
  rep.pass = tauY.contains(extended);
  rep.strict = rep.pass && !tauY.equals(extended);
  rep.extended = extended.str();
  rep.tau_total = tauY.str();
  return rep;
}

SkodaReport skoda_check(const QDivisor& delta, const Ideal& a, const Rat& t, const Poly& f,
                        const ChainOptions& opt) {
  Ideal lhs = tau_regular(delta + divisor_of(f, delta.table()), a, t, opt);
  Ideal rhs = tau_regular(delta, a, t, opt).multiply_poly(f);
  SkodaReport rep;
  rep.pass = lhs.equals(rhs);
  rep.lhs = lhs.str();
  rep.rhs = Ideal(lhs.ring(), rhs.groebner()).str();
  return rep;
}

CertificateReport surjectivity_certificate(const ExtensionPres& ext, const QDivisor& deltaX,
                                           const ChainOptions& opt) {
  CertificateReport rep;

  // Condition (ii): the base pair is strongly F-regular.
  if (ext.kind() == ExtensionPres::Kind::Monogenic) {
    rep.sfr_ok = is_strongly_F_regular(deltaX, Ideal::unit(ext.base_ring()), Rat(0), opt);
  } else {
    const Ideal& brel = ext.base_relations();
    if (brel.groebner().size() == 1 && deltaX.is_zero()) {
      rep.sfr_ok = is_strongly_F_regular_hypersurface(ext.base_ring(), brel.groebner()[0], opt);
    } else if (brel.is_zero_ideal()) {
      rep.sfr_ok = is_strongly_F_regular(deltaX, Ideal::unit(ext.base_ring()), Rat(0), opt);
    } else {
      rep.reason = "base singularity type unsupported for the F-regularity test";
      return rep;
    }
  }
  if (!rep.sfr_ok) {
    rep.reason = "base pair is not strongly F-regular";
    return rep;
  }

  // Condition (i): pullback(Delta_X) - Ram effective.
  if (ext.kind() != ExtensionPres::Kind::Monogenic || !ext.has_identification()) {
    rep.reason = "ramification divisor unavailable for this presentation";
    return rep;
  }
  check(ext.separable(), Errc::ZeroTrace, "certificate needs a separable extension");
  TraceLike tr = ext.trace_key();
  PulledBack pb = pull_setup(ext, tr, deltaX);
  rep.effective_ok = (pb.pullback - pb.ram_T).is_effective();
  if (!rep.effective_ok) {
    rep.reason = "pullback(Delta_X) - Ram is not effective";
    return rep;
  }
  rep.certified = true;
  rep.reason = "certified";

  // Cross-check against the direct test when conclusive.
  TriState direct = ext.is_trace_surjective();
  check(direct != TriState::False, Errc::Internal,
        "certificate contradicts the direct surjectivity test");
  return rep;
}

}  // namespace charp
