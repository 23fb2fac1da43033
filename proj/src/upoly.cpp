#include "charp/upoly.hpp"

#include "charp/error.hpp"

namespace charp {

int univariate_variable(const Poly& f) {
  int var = -1;
  for (const auto& t : f.terms()) {
    for (size_t i = 0; i < t.m.size(); ++i) {
      if (t.m[i] == 0) continue;
      if (var == -1) var = (int)i;
      check(var == (int)i, Errc::Multivariate, "expected univariate polynomial");
    }
  }
  return var;
}

std::pair<Poly, Poly> upoly_divmod(const Poly& a, const Poly& b) {
  require_same_ring(a, b);
  check(!b.is_zero(), Errc::DivisionByZero, "division by zero polynomial");
  int var = univariate_variable(b);
  if (var == -1) {
    // Division by a nonzero scalar.
    return {a.mul_scalar(a.ring()->field.inv(b.leading_coef())), Poly::zero(a.ring())};
  }
  univariate_variable(a);  // arity check
  const FieldCtx& F = a.ring()->field;
  int db = b.degree(var);
  uint32_t lci = F.inv(b.leading_coef());
  Poly rem = a;
  Poly quot = Poly::zero(a.ring());
  while (!rem.is_zero() && rem.degree(var) >= db) {
    int shift = rem.degree(var) - db;
    uint32_t c = F.mul(rem.leading_coef(), lci);
    Mono m(a.ring()->nvars(), 0);
    m[var] = shift;
    Poly piece = Poly::monomial(a.ring(), m, c);
    quot = quot + piece;
    rem = rem - b.mul_term(m, c);
  }
  return {quot, rem};
}

Poly upoly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = upoly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace charp
