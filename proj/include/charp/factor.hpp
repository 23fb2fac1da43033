#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "charp/poly.hpp"

namespace charp {

/// Factor a nonzero univariate polynomial into monic irreducibles.
/// Result is sorted canonically (degree, then term order) and the product
/// of factors^multiplicities times the leading scalar re-multiplies to the
/// input (asserted internally on every call). Multivariate input is an error.
std::vector<std::pair<Poly, int>> univariate_factor(const Poly& f);

/// Irreducibility check for univariate polynomials of degree >= 1.
bool is_irreducible_univariate(const Poly& f);

/// Seed for the randomized equal-degree splitting. Factor lists are sorted,
/// so results never depend on it.
void set_factor_seed(uint64_t seed);

}  // namespace charp
