#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "charp/frobenius.hpp"
#include "charp/parse.hpp"
#include "test_util.hpp"

using namespace charp;
using charp::testutil::random_poly;

TEST_CASE("p^e decomposition worked examples") {
  RingPtr R = PolyRing::make(2, {"x", "y"});
  // x^3 y^5 = (x y^2)^2 * x y
  auto D = pe_decompose(parse_poly(R, "x^3*y^5"), 1);
  REQUIRE(D.parts.size() == 1);
  CHECK(D.parts.begin()->first == Mono{1, 1});
  CHECK(D.parts.begin()->second == parse_poly(R, "x*y^2"));

  RingPtr R1 = PolyRing::make(2, {"x"});
  auto D2 = pe_decompose(parse_poly(R1, "x^2"), 1);
  REQUIRE(D2.parts.size() == 1);
  CHECK(D2.parts.begin()->first == Mono{0});
  CHECK(D2.parts.begin()->second == parse_poly(R1, "x"));

  // x + x^7 = (1 + x^3)^2 * x
  auto D3 = pe_decompose(parse_poly(R1, "x + x^7"), 1);
  REQUIRE(D3.parts.size() == 1);
  CHECK(D3.parts.begin()->first == Mono{1});
  CHECK(D3.parts.begin()->second == parse_poly(R1, "1 + x^3"));
}

TEST_CASE("decomposition reconstructs the input") {
  for (uint32_t p : {2u, 3u, 5u}) {
    RingPtr R = PolyRing::make(p, {"x", "y"});
    std::mt19937_64 rng(7 + p);
    for (int i = 0; i < 170; ++i) {
      Poly f = random_poly(rng, R, 6, 12);
      for (int e = 1; e <= 3; ++e) {
        auto D = pe_decompose(f, e);  // reconstruction asserted internally
        Poly back = Poly::zero(R);
        for (auto& [b, h] : D.parts) back = back + h.frob_pow(D.q).mul_term(b, 1);
        CHECK(back == f);
      }
    }
  }
}

namespace {

// Brute-force minimal Frobenius root of a monomial ideal: componentwise
// floor of each generator exponent vector.
Ideal monomial_frob_root_oracle(const Ideal& I, int e) {
  long long q = pe_power(I.ring()->field.p(), e);
  std::vector<Poly> gens;
  for (const Poly& g : I.gens()) {
    REQUIRE(g.term_count() == 1);
    Mono m = g.leading_mono();
    for (auto& x : m) x = (Exp)(x / q);
    gens.push_back(Poly::monomial(I.ring(), m, 1));
  }
  return Ideal(I.ring(), gens);
}

}  // namespace

TEST_CASE("Frobenius root worked examples") {
  RingPtr R = PolyRing::make(2, {"x", "y"});
  CHECK(frob_root(Ideal(R, {parse_poly(R, "x^3*y^5")}), 1)
            .equals(Ideal(R, {parse_poly(R, "x*y^2")})));
  RingPtr R1 = PolyRing::make(2, {"x"});
  CHECK(frob_root(Ideal(R1, {parse_poly(R1, "x^2")}), 1).equals(Ideal(R1, {parse_poly(R1, "x")})));
  CHECK(frob_root(Ideal::unit(R1), 2).is_unit_ideal());
}

TEST_CASE("Frobenius root minimality against the monomial oracle") {
  for (uint32_t p : {2u, 3u, 5u}) {
    RingPtr R = PolyRing::make(p, {"x", "y"});
    std::mt19937_64 rng(90 + p);
    std::uniform_int_distribution<int> exp(0, 8);
    for (int i = 0; i < 40; ++i) {
      std::vector<Poly> gens;
      for (int k = 0; k < 3; ++k)
        gens.push_back(Poly::monomial(R, Mono{exp(rng), exp(rng)}, 1));
      Ideal I(R, gens);
      for (int e = 1; e <= 2; ++e) {
        Ideal root = frob_root(I, e);
        Ideal oracle = monomial_frob_root_oracle(I, e);
        CHECK(root.equals(oracle));
        // containment I <= root^{[q]} and minimality over smaller candidates
        CHECK(root.bracket_power(e).contains(I));
      }
    }
  }
}

TEST_CASE("Frobenius root exhaustive minimality on a small grid") {
  RingPtr R = PolyRing::make(2, {"x", "y"});
  Ideal I(R, {parse_poly(R, "x^3*y^2"), parse_poly(R, "x*y^5")});
  Ideal root = frob_root(I, 1);
  // every monomial candidate ideal K with I <= K^{[2]} contains the root
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c)
        for (int d = 0; d <= 3; ++d) {
          Ideal K(R, {Poly::monomial(R, Mono{a, b}, 1), Poly::monomial(R, Mono{c, d}, 1)});
          if (K.bracket_power(1).contains(I)) CHECK(K.contains(root));
        }
}

TEST_CASE("Frobenius root inverts bracket powers") {
  for (uint32_t p : {2u, 3u, 5u}) {
    RingPtr R = PolyRing::make(p, {"x", "y"});
    std::mt19937_64 rng(400 + p);
    for (int i = 0; i < 40; ++i) {
      Ideal I(R, {random_poly(rng, R, 3, 3), random_poly(rng, R, 3, 3)});
      for (int e = 1; e <= 2; ++e) {
        Ideal back = frob_root(I.bracket_power(e), e);
        CHECK(back.equals(I));
      }
    }
  }
}

TEST_CASE("Cartier operator worked examples") {
  RingPtr R = PolyRing::make(3, {"x"});
  CHECK(cartier_apply(Poly::constant(R, 1), 1, Ideal(R, {parse_poly(R, "x^3")}))
            .equals(Ideal(R, {parse_poly(R, "x")})));
  CHECK(cartier_apply(parse_poly(R, "x^2"), 1, Ideal::unit(R)).is_unit_ideal());
  CHECK_THROWS_AS(cartier_apply(Poly::zero(R), 1, Ideal::unit(R)), Error);
}

TEST_CASE("Cartier projection formula") {
  for (uint32_t p : {2u, 3u}) {
    RingPtr R = PolyRing::make(p, {"x", "y"});
    std::mt19937_64 rng(300 + p);
    for (int i = 0; i < 30; ++i) {
      Poly u = charp::testutil::random_nonzero_poly(rng, R, 3, 3);
      Poly v = charp::testutil::random_nonzero_poly(rng, R, 2, 2);
      Ideal I(R, {random_poly(rng, R, 2, 3), random_poly(rng, R, 2, 3)});
      if (I.is_zero_ideal()) continue;
      Ideal lhs = cartier_apply(u * v.frob_pow(p), 1, I);
      Ideal rhs = cartier_apply(u, 1, I).multiply_poly(v);
      CHECK(lhs.equals(rhs));
    }
  }
}

TEST_CASE("apply_pmap worked examples") {
  RingPtr Ry = PolyRing::make(3, {"y"});
  CHECK(apply_pmap(Poly::constant(Ry, 1), 1, parse_poly(Ry, "y^2")) == Poly::constant(Ry, 1));

  RingPtr Rx = PolyRing::make(2, {"x"});
  Poly u = parse_poly(Rx, "(1 + x^3)^2");
  CHECK(apply_pmap(u, 1, parse_poly(Rx, "x")) == parse_poly(Rx, "1 + x^3"));

  RingPtr Rt = PolyRing::make(2, {"t"});
  CHECK(apply_pmap(parse_poly(Rt, "t^2"), 1, parse_poly(Rt, "t")) == parse_poly(Rt, "t"));
}

TEST_CASE("apply_pmap is additive and p^{-e}-linear") {
  RingPtr R = PolyRing::make(3, {"x", "y"});
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Poly u = charp::testutil::random_nonzero_poly(rng, R, 3, 4);
    Poly g = random_poly(rng, R, 3, 4);
    Poly h = random_poly(rng, R, 3, 4);
    Poly r = random_poly(rng, R, 2, 2);
    CHECK(apply_pmap(u, 1, g + h) == apply_pmap(u, 1, g) + apply_pmap(u, 1, h));
    CHECK(apply_pmap(u, 1, r.frob_pow(3) * g) == r * apply_pmap(u, 1, g));
  }
}

TEST_CASE("Fedder criterion worked examples") {
  RingPtr D4 = PolyRing::make(2, {"x", "y", "z"});
  CHECK(fedder_test(parse_poly(D4, "z^2 + x*y*z + x*y^2 + x^2*y")));

  RingPtr R1 = PolyRing::make(2, {"x"});
  CHECK(!fedder_test(parse_poly(R1, "x^2")));

  for (uint32_t p : {2u, 3u, 5u}) {
    RingPtr R = PolyRing::make(p, {"x", "y"});
    CHECK(fedder_test(parse_poly(R, "x*y")));
  }
}

TEST_CASE("hypersurface Fedder agrees with the ideal form") {
  for (uint32_t p : {2u, 3u}) {
    RingPtr R = PolyRing::make(p, {"x", "y"});
    std::mt19937_64 rng(200 + p);
    int done = 0;
    while (done < 25) {
      Poly h = random_poly(rng, R, 4, 3);
      if (h.is_zero() || h.is_constant()) continue;
      ++done;
      CHECK(fedder_test(h) == fedder_test(Ideal(R, {h})));
    }
  }
}
