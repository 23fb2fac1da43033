#include "charp/pmap.hpp"

#include "charp/frobenius.hpp"
#include "charp/upoly.hpp"

namespace charp {

PMapKey::PMapKey(RingPtr r, int level, Poly key) : ring(std::move(r)), e(level), u(std::move(key)) {
  check(e >= 1, Errc::Domain, "map level must be >= 1");
  check(!u.is_zero(), Errc::Domain, "zero key does not define a p^{-e}-linear map here");
  check(u.ring() == ring || u.ring()->same(*ring), Errc::RingMismatch, "key outside the ring");
}

long long PMapKey::q() const { return pe_power(ring->field.p(), e); }

Poly pmap_eval(const PMapKey& phi, const Poly& g) { return apply_pmap(phi.u, phi.e, g); }

QDivisor delta_of_key(const PMapKey& phi, const TablePtr& table) {
  QDivisor d = divisor_of(phi.u, table);
  return d.scale(Rat(1, phi.q() - 1));
}

PMapKey key_of_delta(const QDivisor& delta, int e, int e_cap) {
  const RingPtr& ring = delta.table()->ring();
  const uint32_t p = ring->field.p();
  check(delta.is_effective(), Errc::Domain, "key_of_delta needs an effective divisor");
  long long q = pe_power(p, e);
  QDivisor scaled = delta.scale(Rat(q - 1));
  if (!scaled.is_integral()) {
    for (int ee = 1; ee <= e_cap; ++ee) {
      long long qq = pe_power(p, ee);
      if (delta.scale(Rat(qq - 1)).is_integral())
        fail(Errc::NonIntegral, "(p^e-1)*Delta is not integral at e=" + std::to_string(e) +
                                    "; minimal feasible level is e=" + std::to_string(ee));
    }
    fail(Errc::NonIntegral, "(p^e-1)*Delta is not integral at e=" + std::to_string(e) +
                                "; no feasible level <= " + std::to_string(e_cap));
  }
  Poly u = Poly::constant(ring, 1);
  for (const auto& [i, c] : scaled.coeffs()) u = u * delta.table()->prime(i).pow(c.num());
  return PMapKey(ring, e, u);
}

PMapKey iterate_map(const PMapKey& phi, int n) {
  check(n >= 1, Errc::Domain, "iteration count must be >= 1");
  long long q = phi.q();
  // Key u^(1 + q + ... + q^(n-1)) at level n*e, assembled as a product of
  // Frobenius powers to keep the arithmetic cheap.
  Poly key = phi.u;
  long long qk = 1;
  for (int k = 1; k < n; ++k) {
    qk *= q;
    check(qk <= INT32_MAX, Errc::Overflow, "iteration exponent overflow");
    key = key * phi.u.frob_pow(qk);
  }
  return PMapKey(phi.ring, phi.e * n, key);
}

namespace {

// Reduce a univariate fraction num/den: divide by the gcd and make the
// denominator monic.
void reduce_fraction(Poly& num, Poly& den) {
  Poly g = upoly_gcd(num, den);
  if (!g.is_constant()) {
    num = *num.exact_div(g);
    den = *den.exact_div(g);
  }
  if (!den.is_zero() && den.leading_coef() != 1) {
    uint32_t inv = den.ring()->field.inv(den.leading_coef());
    num = num.mul_scalar(inv);
    den = den.mul_scalar(inv);
  }
}

}  // namespace

TransposeResult transpose_key(const ExtensionPres& ext, const PMapKey& phi, const TraceLike& T) {
  check(ext.kind() == ExtensionPres::Kind::Monogenic, Errc::NonMonogenic,
        "transpose needs a monogenic extension");
  const RingPtr& total = ext.total_ring();
  check(phi.ring->same(*ext.base_ring()), Errc::RingMismatch, "map does not live on the base");
  check(!T.num.is_zero(), Errc::ZeroTrace, "the zero map cannot be transposed along");
  check(T.den.is_unit_constant(), Errc::Unsupported, "fractional trace-like keys not supported");

  const long long q = phi.q();
  Poly u_img = RingMap{ext.base_ring(), total, {ext.base_image()}}.apply(phi.u);
  Poly s = T.num.mul_scalar(total->field.inv(T.den.leading_coef()));
  Poly w = ext.comparison_element(phi.e);

  // Exact transpose key y = u(image) * s^{1-q} * w^{-1} as a fraction.
  Poly num = u_img;
  Poly den = s.pow(q - 1) * w;
  reduce_fraction(num, den);

  TransposeResult out;
  out.key_num = num;
  out.key_den = den;
  out.exists = den.is_unit_constant();
  if (out.exists && den.leading_coef() != 1) {
    out.key_num = num.mul_scalar(total->field.inv(den.leading_coef()));
    out.key_den = Poly::constant(total, 1);
  }

  // Divisor route: pullback(Delta_phi) >= R_T, with the comparison element's
  // divisorial content accounted for (it is a unit scalar in this model).
  TablePtr tbl = ensure_covers(PrimeTable::empty(total), u_img * s * w);
  QDivisor pb = divisor_of(u_img, tbl).scale(Rat(1, q - 1));
  QDivisor ram_T = divisor_of(s, tbl);
  QDivisor wdiv = divisor_of(w, tbl);
  QDivisor obstruction = pb - ram_T - wdiv.scale(Rat(1, q - 1));
  bool divisor_exists = obstruction.is_effective();
  check(divisor_exists == out.exists, Errc::Internal,
        "transpose existence: division and divisor routes disagree");
  out.delta = pb - ram_T;

  if (!out.exists) return out;

  // Re-verify the defining commutativity T o phi_T = phi o T^{1/q} on the
  // spanning monomials x^{j/q}, 0 <= j < n q^2.
  PMapKey phibar(total, phi.e, out.key_num);
  const long long jmax = (long long)ext.degree() * q * q;
  Poly x = Poly::variable(total, 0);
  for (long long j = 0; j < jmax; ++j) {
    Poly xj = x.pow(j);
    Poly lhs = ext.psi(s * pmap_eval(phibar, xj));
    Poly rhs = pmap_eval(phi, ext.psi(s * xj));
    check(lhs == rhs, Errc::Internal, "transpose verification failed at j=" + std::to_string(j));
  }

  // The transpose's divisor matches the predicted one exactly.
  QDivisor check_delta = divisor_of(out.key_num, tbl).scale(Rat(1, q - 1));
  check(divisor_cmp(check_delta, out.delta) == DivisorCmp::Equal, Errc::Internal,
        "transpose divisor law violated");
  return out;
}

CommuteWitness commute_check(const ExtensionPres& ext, const PMapKey& phi, const PMapKey& phibar,
                             const TraceLike& psi) {
  check(ext.kind() == ExtensionPres::Kind::Monogenic, Errc::NonMonogenic,
        "commutation check needs a monogenic extension");
  const RingPtr& total = ext.total_ring();
  check(phi.ring->same(*ext.base_ring()), Errc::RingMismatch, "phi must live on the base");
  check(phibar.ring->same(*total), Errc::RingMismatch, "phibar must live on the total ring");
  check(phi.e == phibar.e, Errc::Domain, "levels of phi and phibar differ");
  check(psi.den.is_unit_constant(), Errc::Unsupported, "fractional trace-like keys not supported");
  Poly s = psi.num.mul_scalar(total->field.inv(psi.den.leading_coef()));
  check(!s.is_zero(), Errc::ZeroTrace, "zero map");

  const long long q = phi.q();
  const long long jmax = (long long)ext.degree() * q * q;
  Poly x = Poly::variable(total, 0);
  CommuteWitness w;
  for (long long j = 0; j < jmax; ++j) {
    Poly xj = x.pow(j);
    Poly lhs = ext.psi(s * pmap_eval(phibar, xj));        // psi(phibar(x^{j/q}))
    Poly rhs = pmap_eval(phi, ext.psi(s * xj));           // phi(psi^{1/q}(x^{j/q}))
    if (!(lhs == rhs)) {
      w.commutes = false;
      w.j = j;
      w.lhs = lhs;
      w.rhs = rhs;
      return w;
    }
  }
  return w;
}

}  // namespace charp
