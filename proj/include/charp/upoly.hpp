#pragma once

#include <utility>

#include "charp/poly.hpp"

namespace charp {

/// Helpers for univariate polynomials represented as sparse Poly values.

/// Index of the unique variable occurring in f, or -1 for constants.
/// Raises Errc::Multivariate when several variables occur.
int univariate_variable(const Poly& f);

/// Division with remainder: a = q*b + r, deg r < deg b. b nonzero.
std::pair<Poly, Poly> upoly_divmod(const Poly& a, const Poly& b);

/// Monic gcd.
Poly upoly_gcd(Poly a, Poly b);

}  // namespace charp
