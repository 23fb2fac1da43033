#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "charp/ideal.hpp"
#include "charp/parse.hpp"
#include "test_util.hpp"

using namespace charp;
using charp::testutil::random_poly;

namespace {

Ideal make(const RingPtr& R, std::initializer_list<const char*> gens) {
  std::vector<Poly> g;
  for (const char* s : gens) g.push_back(parse_poly(R, s));
  return Ideal(R, std::move(g));
}

}  // namespace

TEST_CASE("reduced basis worked examples") {
  RingPtr R2 = PolyRing::make(2, {"x"});
  Ideal I = make(R2, {"x^2", "x"});
  REQUIRE(I.groebner().size() == 1);
  CHECK(I.groebner()[0] == parse_poly(R2, "x"));

  RingPtr R3 = PolyRing::make(3, {"y", "x"}, Order::Lex);  // lex with y > x
  Ideal J = make(R3, {"y - x^2"});
  REQUIRE(J.groebner().size() == 1);
  CHECK(J.groebner()[0].str() == "y + 2*x^2");
}

TEST_CASE("reduced basis properties on a mixed ideal") {
  RingPtr R = PolyRing::make(3, {"x", "y"});
  Ideal I = make(R, {"x^2*y + x", "y^2 + 1"});
  const auto& gb = I.groebner();
  REQUIRE(!gb.empty());
  // every input generator reduces to zero against the basis
  for (const Poly& g : I.gens()) CHECK(normal_form_against(g, gb).is_zero());
  // basis is monic and auto-reduced
  for (const Poly& g : gb) {
    CHECK(g.leading_coef() == 1);
    for (const Poly& h : gb) {
      if (&g == &h) continue;
      for (const auto& t : g.terms()) CHECK(!mono_divides(h.leading_mono(), t.m));
    }
  }
  // basis generates the same ideal as the input
  Ideal J(R, gb);
  for (const Poly& g : gb) CHECK(I.contains(g));
  for (const Poly& g : I.gens()) CHECK(J.contains(g));
}

TEST_CASE("normal form worked examples") {
  RingPtr R = PolyRing::make(2, {"u", "x"});  // u senior so that u^2 leads
  Ideal I = make(R, {"u^2 + x*u + x"});
  CHECK(I.normal_form(parse_poly(R, "u^2")) == parse_poly(R, "x*u + x"));
  CHECK(I.normal_form(parse_poly(R, "u^2 + x*u + x")).is_zero());

  RingPtr R1 = PolyRing::make(2, {"x"});
  CHECK(make(R1, {"x"}).normal_form(parse_poly(R1, "1")) == parse_poly(R1, "1"));
}

TEST_CASE("normal form is linear over the field") {
  RingPtr R = PolyRing::make(5, {"x", "y"});
  Ideal I = make(R, {"x^2 + y", "y^3 + x"});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    Poly f = random_poly(rng, R, 4, 4);
    Poly g = random_poly(rng, R, 4, 4);
    CHECK(I.normal_form(f + g) == I.normal_form(f) + I.normal_form(g));
    CHECK(I.normal_form(f.mul_scalar(3)) == I.normal_form(f).mul_scalar(3));
    CHECK(I.contains(f - I.normal_form(f)));
  }
}

TEST_CASE("membership and equality") {
  RingPtr R = PolyRing::make(2, {"x", "y", "z"});
  Ideal I = make(R, {"x^2", "y^2", "z^2"});
  // monomial membership is exponentwise divisibility: brute-force oracle
  CHECK(!I.contains(parse_poly(R, "x*y*z")));
  CHECK(I.contains(parse_poly(R, "x^2*y")));
  CHECK(make(R, {"x", "y"}).equals(make(R, {"y", "x"})));
  CHECK(!make(R, {"x"}).equals(make(R, {"x^2"})));
}

TEST_CASE("sum, product, intersection, colon") {
  RingPtr R = PolyRing::make(3, {"x", "y"});
  CHECK(make(R, {"x^2"}).colon(parse_poly(R, "x")).equals(make(R, {"x"})));
  CHECK(make(R, {"x"}).intersect(make(R, {"y"})).equals(make(R, {"x*y"})));

  // degree-bounded membership scan for the intersection
  Ideal inter = make(R, {"x"}).intersect(make(R, {"y"}));
  for (const char* m : {"x*y", "x^2*y", "x*y^2"}) CHECK(inter.contains(parse_poly(R, m)));
  for (const char* m : {"x", "y", "x^2", "y^2", "x^2 + y"}) CHECK(!inter.contains(parse_poly(R, m)));

  std::mt19937_64 rng(8);
  for (int i = 0; i < 25; ++i) {
    Poly h = charp::testutil::random_nonzero_poly(rng, R, 4, 3);
    CHECK(make(R, {h.str().c_str()}).colon(h).is_unit_ideal());
  }

  Ideal A = make(R, {"x^2", "x*y"});
  Ideal B = make(R, {"y^2"});
  CHECK(A.sum(B).contains(parse_poly(R, "x^2 + y^2")));
  CHECK(A.product(B).equals(make(R, {"x^2*y^2", "x*y^3"})));
}

TEST_CASE("colon containment properties") {
  RingPtr R = PolyRing::make(2, {"x", "y"});
  std::mt19937_64 rng(21);
  for (int i = 0; i < 25; ++i) {
    Ideal I(R, {random_poly(rng, R, 3, 3), random_poly(rng, R, 3, 3)});
    Poly f = charp::testutil::random_nonzero_poly(rng, R, 3, 2);
    Ideal C = I.colon(f);
    CHECK(I.contains(C.multiply_poly(f)));
    CHECK(C.contains(I));
  }
}

TEST_CASE("bracket powers") {
  RingPtr R = PolyRing::make(2, {"x", "y", "z"});
  CHECK(make(R, {"x", "y", "z"}).bracket_power(1).equals(make(R, {"x^2", "y^2", "z^2"})));
  CHECK(make(R, {"x + y"}).bracket_power(1).equals(make(R, {"x^2 + y^2"})));

  RingPtr R3 = PolyRing::make(3, {"x", "y"});
  Ideal B = make(R3, {"x", "y"}).bracket_power(1);
  CHECK(B.equals(make(R3, {"x^3", "y^3"})));
  CHECK(B.contains(parse_poly(R3, "x^3 + y^3")));
}

TEST_CASE("bracket power is independent of the generating set") {
  for (uint32_t p : {2u, 3u}) {
    RingPtr R = PolyRing::make(p, {"x", "y"});
    std::mt19937_64 rng(60 + p);
    for (int i = 0; i < 20; ++i) {
      Ideal I(R, {random_poly(rng, R, 3, 2), random_poly(rng, R, 3, 2),
                  random_poly(rng, R, 3, 2)});
      Ideal from_gens = I.bracket_power(1);
      Ideal from_gb = Ideal(R, I.groebner()).bracket_power(1);
      CHECK(from_gens.equals(from_gb));
    }
  }
}

TEST_CASE("reduced basis is independent of generator order and duplication") {
  for (uint32_t p : {2u, 3u, 5u}) {
    RingPtr R = PolyRing::make(p, {"x", "y"});
    std::mt19937_64 rng(100 + p);
    for (int i = 0; i < 100; ++i) {
      std::vector<Poly> gens{random_poly(rng, R, 3, 3), random_poly(rng, R, 3, 3),
                             random_poly(rng, R, 2, 2)};
      Ideal I(R, gens);
      std::vector<Poly> shuffled = gens;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      shuffled.push_back(gens[0]);  // duplicate one generator
      Ideal J(R, shuffled);
      CHECK(I.groebner() == J.groebner());
    }
  }
}

TEST_CASE("step cap raises ResourceExceeded") {
  RingPtr R = PolyRing::make(2, {"x", "y", "z"});
  Ideal I = make(R, {"x^5 + y^4*z + z^3", "x^2*y^2 + y*z^2 + x", "x^4*z + y^3 + z^2*x"});
  long long save = step_cap();
  set_step_cap(3);
  CHECK_THROWS_AS((void)I.groebner(), Error);
  set_step_cap(save);
  CHECK(!I.groebner().empty());  // same ideal succeeds under the default cap
}

TEST_CASE("elimination ring block order") {
  RingPtr R = PolyRing::make(2, {"x", "y"});
  RingPtr E = elimination_ring(R, {"w"});
  CHECK(E->nvars() == 3);
  CHECK(E->elim_block == 1);
  // any monomial containing w beats any w-free monomial
  Mono w{1, 0, 0}, big{0, 9, 9};
  CHECK(E->cmp(w, big) > 0);
}
