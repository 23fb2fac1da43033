#pragma once

#include <string>
#include <string_view>

#include "charp/poly.hpp"

namespace charp {

/// Parse ASCII polynomial syntax: integer literals, identifiers
/// [a-z][a-zA-Z0-9_]*, operators + - * ^, parentheses. Multiplication is
/// always explicit. Syntax errors carry a 0-based character position.
Poly parse_poly(const RingPtr& ring, std::string_view text);

}  // namespace charp
