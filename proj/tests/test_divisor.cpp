#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "charp/divisor.hpp"
#include "charp/extension.hpp"
#include "charp/parse.hpp"
#include "test_util.hpp"

using namespace charp;

namespace {

ExtensionPres ext_y_x2() {
  RingPtr base = PolyRing::make(3, {"y"});
  RingPtr total = PolyRing::make(3, {"x"});
  return ExtensionPres::monogenic(base, parse_poly(ExtensionPres::extension_ring(base), "T^2 - y"),
                                  total, parse_poly(total, "x"), {parse_poly(total, "x^2")});
}

ExtensionPres ext_nottame1() {
  RingPtr base = PolyRing::make(2, {"t"});
  RingPtr total = PolyRing::make(2, {"x"});
  return ExtensionPres::monogenic(base,
                                  parse_poly(ExtensionPres::extension_ring(base), "T^5 + T^2 + t"),
                                  total, parse_poly(total, "x"), {parse_poly(total, "x^2 + x^5")});
}

}  // namespace

TEST_CASE("prime table validation") {
  RingPtr R = PolyRing::make(2, {"x"});
  CHECK_THROWS_AS(PrimeTable::make(R, {parse_poly(R, "x^2 + x")}), Error);  // reducible
  CHECK_THROWS_AS(PrimeTable::make(R, {parse_poly(R, "x"), parse_poly(R, "x")}), Error);
  CHECK_THROWS_AS(PrimeTable::make(R, {parse_poly(R, "1")}), Error);
  TablePtr t = PrimeTable::make(R, {parse_poly(R, "x"), parse_poly(R, "x + 1")});
  CHECK(t->size() == 2);
}

TEST_CASE("divisor of a polynomial") {
  RingPtr R = PolyRing::make(2, {"x"});
  TablePtr t = PrimeTable::make(
      R, {parse_poly(R, "x"), parse_poly(R, "1 + x"), parse_poly(R, "1 + x + x^2")});
  QDivisor d = divisor_of(parse_poly(R, "x^2 * (1 + x^3)"), t);
  CHECK(d.str() == "2[x] + 1[x + 1] + 1[x^2 + x + 1]");
  CHECK(divisor_of(Poly::constant(R, 1), t).is_zero());

  RingPtr Ry = PolyRing::make(3, {"y"});
  TablePtr ty = PrimeTable::make(Ry, {parse_poly(Ry, "y")});
  CHECK(divisor_of(parse_poly(Ry, "y"), ty).str() == "1[y]");

  // uncovered factor errors carry the residual
  TablePtr small = PrimeTable::make(R, {parse_poly(R, "x")});
  try {
    divisor_of(parse_poly(R, "x * (1 + x)"), small);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UncoveredFactor);
    CHECK(std::string(e.what()).find("x + 1") != std::string::npos);
  }
}

TEST_CASE("rounding") {
  RingPtr R = PolyRing::make(2, {"x"});
  TablePtr t = PrimeTable::make(R, {parse_poly(R, "x")});
  QDivisor d = QDivisor::single(t, 0, Rat(3, 2));
  CHECK(d.ceil().str() == "2[x]");
  CHECK(d.floor().str() == "1[x]");
  QDivisor neg = QDivisor::single(t, 0, Rat(-1, 2));
  CHECK(neg.ceil().is_zero());
  CHECK(neg.floor().str() == "-1[x]");
  CHECK(divisor_cmp(d.floor(), d) == DivisorCmp::Leq);
  CHECK(divisor_cmp(d.ceil(), d) == DivisorCmp::Geq);
}

TEST_CASE("pullback worked examples") {
  {
    ExtensionPres E = ext_y_x2();
    TablePtr bt = PrimeTable::make(E.base_ring(), {parse_poly(E.base_ring(), "y")});
    TablePtr tt = PrimeTable::make(E.total_ring(), {parse_poly(E.total_ring(), "x")});
    QDivisor d = pullback_divisor(E.base_to_total(), QDivisor::single(bt, 0, Rat(1)), tt);
    CHECK(d.str() == "2[x]");
    CHECK(pullback_divisor(E.base_to_total(), QDivisor::zero(bt), tt).is_zero());
  }
  {
    ExtensionPres E = ext_nottame1();
    TablePtr bt = PrimeTable::make(E.base_ring(), {parse_poly(E.base_ring(), "t")});
    TablePtr tt = ensure_covers(PrimeTable::empty(E.total_ring()), E.base_image());
    QDivisor d = pullback_divisor(E.base_to_total(), QDivisor::single(bt, 0, Rat(1)), tt);
    CHECK(d.str() == "2[x] + 1[x + 1] + 1[x^2 + x + 1]");
  }
}

TEST_CASE("comparison semantics") {
  RingPtr R = PolyRing::make(2, {"x", "y"});
  TablePtr t = PrimeTable::make(R, {parse_poly(R, "x"), parse_poly(R, "y")});
  QDivisor dx2 = QDivisor::single(t, 0, Rat(2));
  QDivisor dx1 = QDivisor::single(t, 0, Rat(1));
  QDivisor dy = QDivisor::single(t, 1, Rat(1));
  CHECK(divisor_cmp(dx2, dx1) == DivisorCmp::Geq);
  CHECK(divisor_cmp(dx1, dy) == DivisorCmp::Incomparable);
  CHECK(divisor_cmp(dx1, dx1) == DivisorCmp::Equal);
  CHECK(!(dx2 - dy).is_effective());
  CHECK((dx2 - dx1).is_effective());
}

TEST_CASE("divisor_of is additive") {
  RingPtr R = PolyRing::make(3, {"x"});
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    Poly f = charp::testutil::random_nonzero_poly(rng, R, 4, 5);
    Poly g = charp::testutil::random_nonzero_poly(rng, R, 4, 5);
    TablePtr t = ensure_covers(PrimeTable::empty(R), f * g);
    QDivisor sum = divisor_of(f, t) + divisor_of(g, t);
    CHECK(divisor_cmp(divisor_of(f * g, t), sum) == DivisorCmp::Equal);
  }
}

TEST_CASE("pullback commutes with divisor_of") {
  ExtensionPres E = ext_nottame1();
  RingPtr base = E.base_ring();
  std::mt19937_64 rng(6);
  for (int i = 0; i < 40; ++i) {
    Poly f = charp::testutil::random_nonzero_poly(rng, base, 3, 4);
    TablePtr bt = ensure_covers(PrimeTable::empty(base), f);
    Poly img = E.base_to_total().apply(f);
    TablePtr tt = PrimeTable::empty(E.total_ring());
    for (int j = 0; j < bt->size(); ++j)
      tt = ensure_covers(tt, E.base_to_total().apply(bt->prime(j)));
    QDivisor lhs = pullback_divisor(E.base_to_total(), divisor_of(f, bt), tt);
    QDivisor rhs = divisor_of(img, tt);
    CHECK(divisor_cmp(lhs, rhs) == DivisorCmp::Equal);
  }
}

TEST_CASE("rounding-pullback inequality with the per-prime gap bound") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long long> num(-6, 6);
  std::uniform_int_distribution<long long> den(1, 4);
  int cases = 0;
  for (int variant = 0; variant < 2; ++variant) {
    ExtensionPres E = variant == 0 ? ext_y_x2() : ext_nottame1();
    RingPtr base = E.base_ring();
    Poly bp = Poly::variable(base, 0);
    TablePtr bt = PrimeTable::make(base, {bp});
    TablePtr tt = ensure_covers(PrimeTable::empty(E.total_ring()), E.base_image());
    RingMap down = E.base_to_total();
    QDivisor index_div = divisor_of(down.apply(bp), tt);  // ramification indices
    for (int i = 0; i < 60; ++i) {
      QDivisor D = QDivisor::single(bt, 0, Rat(num(rng), den(rng)));
      QDivisor lhs = pullback_divisor(down, D.ceil(), tt);
      QDivisor rhs = pullback_divisor(down, D, tt).ceil();
      QDivisor gap = lhs - rhs;
      CHECK(gap.is_effective());
      for (const auto& [j, e] : index_div.coeffs()) {
        CHECK(!(gap.coeff(j) > e - Rat(1)));  // gap <= ord_C(t) - 1 at each prime
      }
      ++cases;
    }
  }
  CHECK(cases >= 100);
}
