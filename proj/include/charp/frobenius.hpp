#pragma once

#include <map>
#include <vector>

#include "charp/ideal.hpp"

namespace charp {

/// Coordinates of f in the free basis {x^b : 0 <= b_i < q} of F^e_* R over
/// the polynomial ring R: f = sum_b parts[b]^q * x^b.
struct PeDecomposition {
  int e = 0;
  long long q = 1;
  std::map<Mono, Poly> parts;  // only nonzero coordinates stored
};

long long pe_power(uint32_t p, int e);

PeDecomposition pe_decompose(const Poly& f, int e);

/// Single coordinate of the decomposition at basis exponent b.
Poly pe_part(const Poly& f, int e, const Mono& b);

/// The Frobenius root I^{[1/p^e]}: smallest J with I contained in J^{[p^e]}.
/// Computed from the reduced Groebner basis so the output is canonical.
Ideal frob_root(const Ideal& I, int e);

/// Cartier-type operator C_{u,e}(I) = (u * I)^{[1/p^e]}.
Ideal cartier_apply(const Poly& u, int e, const Ideal& I);

/// Evaluate the p^{-e}-linear map with key u on g: the coordinate of u*g at
/// the basis monomial (q-1, ..., q-1).
Poly apply_pmap(const Poly& u, int e, const Poly& g);

/// Fedder's criterion at the coordinate maximal ideal m = <x_1,...,x_n>:
/// the hypersurface R = A/(h) is F-pure at m iff h^{p-1} is outside m^{[p]}.
bool fedder_test(const Poly& h);

/// General form for R = A/I: F-pure at m iff (I^{[p]} : I) is not contained
/// in m^{[p]}.
bool fedder_test(const Ideal& I);

/// Membership in the bracket power m^{[q]} of the coordinate maximal ideal:
/// true iff every term has some exponent >= q.
bool in_bracket_of_max_ideal(const Poly& f, long long q);

}  // namespace charp
