#pragma once

#include <optional>
#include <string>

#include "charp/divisor.hpp"
#include "charp/extension.hpp"

namespace charp {

/// A p^{-e}-linear map phi(-) = Phi_e(u^{1/p^e} . -) on a polynomial ring,
/// stored by its level e and key element u relative to the canonical
/// generator Phi_e (projection to the basis monomial (q-1,...,q-1)).
struct PMapKey {
  RingPtr ring;
  int e;
  Poly u;

  PMapKey(RingPtr r, int level, Poly key);
  long long q() const;
};

/// Apply the map to g (same ring as the key).
Poly pmap_eval(const PMapKey& phi, const Poly& g);

/// The Q-divisor of the map: (1/(p^e - 1)) div(u).
QDivisor delta_of_key(const PMapKey& phi, const TablePtr& table);

/// Inverse direction: u = prod P^{(p^e-1) coeff_P}. Requires (p^e-1)Delta
/// integral and effective; on failure reports the minimal feasible level, if
/// any exists below the cap.
PMapKey key_of_delta(const QDivisor& delta, int e, int e_cap = 16);

/// Frobenius iterate phi^n: key u^{1 + q + ... + q^(n-1)} at level n*e.
PMapKey iterate_map(const PMapKey& phi, int n);

struct TransposeResult {
  bool exists = false;
  Poly key_num;      // transpose key as an exact fraction over the total ring
  Poly key_den;
  QDivisor delta;    // pullback(Delta_phi) - R_T, only meaningful when exists
};

/// Transpose of a base-ring map along a base-linear map T = Psi(s . -):
/// exact key y = u(image) * s^{1-q} * w^{-1} with w the comparison element.
/// Existence is decided by exact division and cross-checked against the
/// divisor criterion pullback(Delta_phi) >= R_T; on success the commutation
/// T o phi_T = phi o T^{1/q} is re-verified on a spanning set.
TransposeResult transpose_key(const ExtensionPres& ext, const PMapKey& phi,
                              const TraceLike& T);

struct CommuteWitness {
  bool commutes = true;
  long long j = -1;  // witness monomial x^{j/q}
  Poly lhs;          // psi(phibar(x^{j/q}))
  Poly rhs;          // phi(psi^{1/q}(x^{j/q}))
};

/// Check psi o phibar = phi o psi^{1/q} on the spanning monomials x^{j/q}.
CommuteWitness commute_check(const ExtensionPres& ext, const PMapKey& phi,
                             const PMapKey& phibar, const TraceLike& psi);

}  // namespace charp
