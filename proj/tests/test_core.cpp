#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "charp/factor.hpp"
#include "charp/parse.hpp"
#include "charp/rat.hpp"
#include "test_util.hpp"

using namespace charp;
using charp::testutil::monic_of_degree;
using charp::testutil::random_poly;

TEST_CASE("field context and primality") {
  CHECK_THROWS_AS(FieldCtx(4), Error);
  CHECK_THROWS_AS(FieldCtx(1), Error);
  CHECK_THROWS_AS(FieldCtx(91), Error);  // 7 * 13
  FieldCtx F(2147483647);                // 2^31 - 1 is prime
  CHECK(F.mul(F.inv(12345), 12345) == 1);
  FieldCtx F3(3);
  CHECK(F3.add(2, 2) == 1);
  CHECK(F3.neg(0) == 0);
}

TEST_CASE("rational arithmetic") {
  CHECK(Rat(3, 2).floor() == 1);
  CHECK(Rat(3, 2).ceil() == 2);
  CHECK(Rat(-1, 2).ceil() == 0);
  CHECK(Rat(-1, 2).floor() == -1);
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK((Rat(1, 2) + Rat(1, 3)) == Rat(5, 6));
  CHECK((Rat(1, 2) * Rat(2, 3)) == Rat(1, 3));
  CHECK(Rat(7).is_integer());
  CHECK_THROWS_AS(Rat(1, 0), Error);
}

TEST_CASE("parsing basics") {
  RingPtr R2 = PolyRing::make(2, {"x", "y"});
  Poly f = parse_poly(R2, "x^2 + y^3");
  REQUIRE(f.term_count() == 2);
  CHECK(f.degree(0) == 2);
  CHECK(f.degree(1) == 3);

  RingPtr R3 = PolyRing::make(3, {"x"});
  CHECK(parse_poly(R3, "3*x").is_zero());

  RingPtr D4 = PolyRing::make(2, {"x", "y", "z"});
  Poly h = parse_poly(D4, "z^2 + x*y*z + x*y^2 + x^2*y");
  CHECK(h.term_count() == 4);
  CHECK(h.total_degree() == 3);

  // implicit multiplication is not allowed: xy is one unknown identifier
  CHECK_THROWS_AS(parse_poly(R2, "x y"), Error);
  CHECK_THROWS_AS(parse_poly(R2, "xy"), Error);
  CHECK_THROWS_AS(parse_poly(R2, "x + "), Error);
  CHECK_THROWS_AS(parse_poly(R2, "(x"), Error);

  // error positions are reported
  try {
    parse_poly(R2, "x + q");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("position 4") != std::string::npos);
  }

  CHECK(parse_poly(R2, "100000000000000000000000001").str() == "1");  // mod 2, digitwise
}

TEST_CASE("parse o format is the identity") {
  for (uint32_t p : {2u, 3u, 5u, 7u}) {
    RingPtr R = PolyRing::make(p, {"x", "y"});
    std::mt19937_64 rng(77 + p);
    for (int i = 0; i < 200; ++i) {
      Poly f = random_poly(rng, R, 6, 5);
      CHECK(parse_poly(R, f.str()) == f);
    }
  }
}

TEST_CASE("arithmetic worked examples") {
  RingPtr R = PolyRing::make(2, {"x"});
  Poly one_x = parse_poly(R, "1 + x");
  CHECK((one_x * one_x) == parse_poly(R, "1 + x^2"));
  Poly f = parse_poly(R, "1 + x^3");
  CHECK((f * f) == parse_poly(R, "1 + x^6"));
  CHECK(f.pow(2) == parse_poly(R, "1 + x^6"));
  CHECK((parse_poly(R, "x") * Poly::zero(R)).is_zero());
}

TEST_CASE("ring axioms on random triples") {
  for (uint32_t p : {2u, 3u, 5u, 7u}) {
    RingPtr R = PolyRing::make(p, {"x", "y"});
    std::mt19937_64 rng(1000 + p);
    for (int i = 0; i < 1000; ++i) {
      Poly a = random_poly(rng, R, 3, 3);
      Poly b = random_poly(rng, R, 3, 3);
      Poly c = random_poly(rng, R, 3, 3);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a - a == Poly::zero(R));
    }
  }
}

TEST_CASE("freshman's dream (a+b)^{p^e} = a^{p^e} + b^{p^e}") {
  for (uint32_t p : {2u, 3u, 5u, 7u}) {
    int emax = p <= 3 ? 3 : 2;
    RingPtr R = PolyRing::make(p, {"x"});
    std::mt19937_64 rng(42 + p);
    for (int i = 0; i < 10; ++i) {
      Poly a = random_poly(rng, R, 3, 2);
      Poly b = random_poly(rng, R, 3, 2);
      long long q = 1;
      for (int e = 1; e <= emax; ++e) {
        q *= p;
        CHECK((a + b).pow(q) == a.pow(q) + b.pow(q));
      }
    }
  }
}

TEST_CASE("repeated squaring matches naive products") {
  RingPtr R = PolyRing::make(5, {"x", "y"});
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    Poly a = random_poly(rng, R, 3, 2);
    Poly naive = Poly::constant(R, 1);
    for (int k = 1; k <= 6; ++k) {
      naive = naive * a;
      CHECK(a.pow(k) == naive);
    }
  }
  CHECK(Poly::zero(R).pow(0) == Poly::constant(R, 1));
}

TEST_CASE("exact division") {
  RingPtr R3 = PolyRing::make(3, {"x", "y"});
  Poly a = parse_poly(R3, "x^3 * y^5");
  CHECK(*a.exact_div(parse_poly(R3, "x")) == parse_poly(R3, "x^2 * y^5"));
  CHECK(!parse_poly(R3, "y").exact_div(parse_poly(R3, "x")).has_value());
  CHECK_THROWS_AS((void)a.exact_div(Poly::zero(R3)), Error);

  // x^2 + x^5 = x^2 (1 + x^3) over F_2, so division by 1 + x^3 is exact.
  RingPtr R2 = PolyRing::make(2, {"x"});
  Poly lhs = parse_poly(R2, "x^2 + x^5");
  CHECK(parse_poly(R2, "x^2") * parse_poly(R2, "1 + x^3") == lhs);
  CHECK(*lhs.exact_div(parse_poly(R2, "1 + x^3")) == parse_poly(R2, "x^2"));
}

namespace {

// Brute-force factorization by trial division over all monic polynomials of
// ascending degree: the independent oracle for the factor routine.
std::vector<std::pair<Poly, int>> factor_by_trial_division(Poly f) {
  std::vector<std::pair<Poly, int>> out;
  const RingPtr& R = f.ring();
  int var = 0;
  while (f.degree(var) < 0 && var + 1 < R->nvars()) ++var;
  for (int d = 1; f.total_degree() > 0; ) {
    bool found = false;
    for (const Poly& cand : monic_of_degree(R, var, d)) {
      if (auto q = f.exact_div(cand)) {
        int mult = 1;
        f = *q;
        while (auto q2 = f.exact_div(cand)) {
          f = *q2;
          ++mult;
        }
        out.push_back({cand, mult});
        found = true;
        break;
      }
    }
    if (!found) ++d;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return Poly::cmp(a.first, b.first) < 0;
  });
  return out;
}

}  // namespace

TEST_CASE("univariate factorization worked examples") {
  RingPtr R2 = PolyRing::make(2, {"x"});
  Poly f = parse_poly(R2, "x^2 * (1 + x^3)");
  auto fs = univariate_factor(f);
  REQUIRE(fs.size() == 3);
  CHECK(fs[0].first == parse_poly(R2, "x"));
  CHECK(fs[0].second == 2);
  CHECK(fs[1].first == parse_poly(R2, "1 + x"));
  CHECK(fs[1].second == 1);
  CHECK(fs[2].first == parse_poly(R2, "1 + x + x^2"));
  CHECK(fs[2].second == 1);
  CHECK(fs == factor_by_trial_division(f));

  auto x4 = univariate_factor(parse_poly(R2, "x^4"));
  REQUIRE(x4.size() == 1);
  CHECK(x4[0].first == parse_poly(R2, "x"));
  CHECK(x4[0].second == 4);

  RingPtr R3 = PolyRing::make(3, {"x", "y"});
  CHECK_THROWS_AS(univariate_factor(parse_poly(R3, "x^2 - y")), Error);
}

TEST_CASE("factorization against the trial-division oracle") {
  for (uint32_t p : {2u, 3u, 5u}) {
    RingPtr R = PolyRing::make(p, {"x"});
    std::mt19937_64 rng(500 + p);
    for (int i = 0; i < 40; ++i) {
      Poly f = charp::testutil::random_nonzero_poly(rng, R, 6, 9);
      if (f.is_constant()) continue;
      CHECK(univariate_factor(f) == factor_by_trial_division(f));
    }
  }
}

TEST_CASE("factors are irreducible and deterministic across seeds") {
  RingPtr R = PolyRing::make(3, {"x"});
  Poly f = parse_poly(R, "x^8 + x^6 + 2*x^4 + x + 1");
  set_factor_seed(111);
  auto a = univariate_factor(f);
  set_factor_seed(999);
  auto b = univariate_factor(f);
  CHECK(a == b);
  for (auto& [g, m] : a) CHECK(is_irreducible_univariate(g));
  set_factor_seed(0x9e3779b97f4a7c15ull);
}

TEST_CASE("derivative and monic normalization") {
  RingPtr R = PolyRing::make(3, {"x", "y"});
  Poly f = parse_poly(R, "x^3 + x^2*y + 2*y");
  CHECK(f.derivative(0) == parse_poly(R, "2*x*y"));  // 3x^2 vanishes mod 3
  CHECK(parse_poly(R, "2*x + 2").monic() == parse_poly(R, "x + 1"));
}
