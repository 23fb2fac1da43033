#include "charp/fixtures.hpp"

#include "charp/frobenius.hpp"
#include "charp/parse.hpp"
#include "charp/pmap.hpp"
#include "charp/testideal.hpp"

namespace charp {

namespace {

struct Checker {
  FixtureResult r;

  void expect(const std::string& name, const std::string& expected, const std::string& got,
              const std::string& note) {
    r.checks.push_back({name, expected == got, expected, got, note});
  }
  void expect_bool(const std::string& name, bool expected, bool got, const std::string& note) {
    expect(name, expected ? "true" : "false", got ? "true" : "false", note);
  }
};

// R = F_3[y] inside S = F_3[x] with y = x^2.
ExtensionPres make_y_x2() {
  RingPtr base = PolyRing::make(3, {"y"});
  RingPtr extr = ExtensionPres::extension_ring(base);
  RingPtr total = PolyRing::make(3, {"x"});
  return ExtensionPres::monogenic(base, parse_poly(extr, "T^2 - y"), total,
                                  parse_poly(total, "x"), {parse_poly(total, "x^2")});
}

// R = F_2[t] inside S = F_2[x] with t = x^2 + x^5 = x^2(1 + x^3).
ExtensionPres make_nottame1() {
  RingPtr base = PolyRing::make(2, {"t"});
  RingPtr extr = ExtensionPres::extension_ring(base);
  RingPtr total = PolyRing::make(2, {"x"});
  return ExtensionPres::monogenic(base, parse_poly(extr, "T^5 + T^2 + t"), total,
                                  parse_poly(total, "x"), {parse_poly(total, "x^2 + x^5")});
}

// Artin-Schreier cover of the affine line in characteristic two: etale.
ExtensionPres make_artin_schreier() {
  RingPtr base = PolyRing::make(2, {"t"});
  RingPtr extr = ExtensionPres::extension_ring(base);
  RingPtr total = PolyRing::make(2, {"x"});
  return ExtensionPres::monogenic(base, parse_poly(extr, "T^2 + T + t"), total,
                                  parse_poly(total, "x"), {parse_poly(total, "x^2 + x")});
}

// Kummer cover y = x^n with p not dividing n.
ExtensionPres make_kummer(uint32_t p, int n) {
  RingPtr base = PolyRing::make(p, {"y"});
  RingPtr extr = ExtensionPres::extension_ring(base);
  RingPtr total = PolyRing::make(p, {"x"});
  Poly g = parse_poly(extr, "T^" + std::to_string(n) + " - y");
  return ExtensionPres::monogenic(base, g, total, parse_poly(total, "x"),
                                  {parse_poly(total, "x^" + std::to_string(n))});
}

// Degree-two cover of the D4 rational double point, etale in codimension one.
ExtensionPres make_d4_cover() {
  RingPtr ambient = PolyRing::make(2, {"x", "y", "z", "u", "v"});
  std::vector<Poly> rels{parse_poly(ambient, "u^2 + x*u + x"),
                         parse_poly(ambient, "v^2 + y*v + y"),
                         parse_poly(ambient, "z + x*v + y*u")};
  std::vector<Poly> basis{parse_poly(ambient, "1"), parse_poly(ambient, "u")};
  return ExtensionPres::presented(ambient, Ideal(ambient, rels), basis, {"x", "y", "z"});
}

FixtureResult fixture_y_x2() {
  Checker c;
  c.r.id = "y-x2";
  ExtensionPres E = make_y_x2();
  RingPtr base = E.base_ring();
  RingPtr total = E.total_ring();

  c.expect("trace-1", "2", E.trace_of(parse_poly(total, "1")).str(),
           "2x2 multiplication matrix over the power basis");
  c.expect("trace-x", "0", E.trace_of(parse_poly(total, "x")).str(),
           "2x2 multiplication matrix over the power basis");
  c.expect("trace-x2", "2*y", E.trace_of(parse_poly(total, "x^2")).str(),
           "2x2 multiplication matrix over the power basis");

  TablePtr tt = ensure_covers(PrimeTable::empty(total), parse_poly(total, "x"));
  c.expect("ram", "1[x]", E.ramification_divisor(tt).str(), "div of dg/dT = 2x");
  TraceLike tr = E.trace_key();
  c.expect("trace-key", "2*x", tr.num.str(), "solved from Psi(s*T^i) = Tr(T^i)");
  c.expect("trace-key-divisor", "1[x]", divisor_of(tr.num, tt).str(),
           "same divisor as the ramification divisor");

  // A map transposes along the trace exactly when y divides its key.
  for (const char* utext : {"y", "y^2", "y^2 + y"}) {
    PMapKey phi(base, 1, parse_poly(base, utext));
    c.expect_bool(std::string("transpose-exists-") + utext, true,
                  transpose_key(E, phi, tr).exists, "key divisible by y");
  }
  for (const char* utext : {"1", "y + 1", "y^2 + 1"}) {
    PMapKey phi(base, 1, parse_poly(base, utext));
    c.expect_bool(std::string("transpose-absent-") + utext, false,
                  transpose_key(E, phi, tr).exists, "key not divisible by y");
  }
  {
    PMapKey phi(base, 1, parse_poly(base, "y"));
    TransposeResult t = transpose_key(E, phi, tr);
    c.expect("transpose-delta-y", "0", t.delta.str(), "pullback((1/2)[y]) - Ram = 1[x] - 1[x]");
  }

  TablePtr bt = ensure_covers(PrimeTable::empty(base), parse_poly(base, "y"));
  auto rows = E.tame_report(bt, tt);
  bool tame_ok = rows.size() == 1 && rows[0].index == 2 && rows[0].cls == TameRow::Class::Tame;
  c.expect_bool("tame-at-y", true, tame_ok, "index 2 with p = 3");
  return c.r;
}

FixtureResult fixture_nottame1() {
  Checker c;
  c.r.id = "nottame1";
  ExtensionPres E = make_nottame1();
  RingPtr base = E.base_ring();
  RingPtr total = E.total_ring();

  Poly gp = E.ext_to_total().apply(E.g_derivative());
  TablePtr tt = ensure_covers(PrimeTable::empty(total), gp * parse_poly(total, "x^2 + x^5"));
  c.expect("ram", "4[x]", E.ramification_divisor(tt).str(), "div of dg/dT = x^4");

  TablePtr bt = ensure_covers(PrimeTable::empty(base), parse_poly(base, "t"));
  auto rows = E.tame_report(bt, tt);
  bool wild_ok = false, unram = true;
  for (const auto& row : rows) {
    if (tt->prime(row.total_prime) == parse_poly(total, "x")) {
      wild_ok = row.index == 2 && row.cls == TameRow::Class::Wild;
    } else if (row.cls != TameRow::Class::Unramified || row.index != 1) {
      unram = false;
    }
  }
  c.expect_bool("wild-at-x", true, wild_ok, "index 2 = p over the prime t");
  c.expect_bool("unramified-elsewhere", true, unram, "factor multiplicity 1");

  PMapKey phi(base, 1, parse_poly(base, "t^2"));
  TransposeResult t = transpose_key(E, phi, E.trace_key());
  c.expect_bool("transpose-exists", true, t.exists, "pullback(2[t]) >= 4[x]");
  c.expect("transpose-image-of-sqrt-x", "x^3 + 1",
           apply_pmap(t.key_num, 1, parse_poly(total, "x")).str(),
           "divide t = x^2(1+x^3) by x^2 after applying the map");
  c.expect("transpose-delta", "2[x + 1] + 2[x^2 + x + 1]", t.delta.str(),
           "pullback(2[t]) - 4[x], i.e. 2 div(1+x^3)");
  return c.r;
}

FixtureResult fixture_nocommute() {
  Checker c;
  c.r.id = "nocommute";
  ExtensionPres E = make_y_x2();
  RingPtr base = E.base_ring();
  RingPtr total = E.total_ring();

  // phi: (1, y^{1/3}, y^{2/3}) -> (1, 1, y); its unique extension phibar:
  // (1, x^{1/3}, x^{2/3}) -> (1, x, 1); tau(1) = 1, tau(x) = y^2.
  PMapKey phi(base, 1, parse_poly(base, "y^3 + y^2 + y"));
  PMapKey phibar(total, 1, parse_poly(total, "x^4 + x^2 + 1"));
  c.expect("phi-1", "1", pmap_eval(phi, parse_poly(base, "1")).str(), "key reconstruction");
  c.expect("phi-y", "1", pmap_eval(phi, parse_poly(base, "y")).str(), "key reconstruction");
  c.expect("phi-y2", "y", pmap_eval(phi, parse_poly(base, "y^2")).str(), "key reconstruction");

  TraceLike tau{parse_poly(total, "x^4 + x"), Poly::constant(total, 1)};  // y^2 + x
  CommuteWitness w = commute_check(E, phi, phibar, tau);
  c.expect_bool("splitting-fails-to-commute", true, !w.commutes,
                "tau is a splitting but not a trace multiple");
  c.expect("witness-monomial", "1", std::to_string(w.j), "x^{1/3}");
  c.expect("witness-lhs", "y^2", w.lhs.str(), "tau(phibar(x^{1/3})) = tau(x)");
  c.expect("witness-rhs", "y", w.rhs.str(), "phi(tau^{1/3}(x^{1/3})) = phi(y^{2/3})");

  CommuteWitness w2 = commute_check(E, phi, phibar, E.trace_key());
  c.expect_bool("trace-commutes", true, w2.commutes, "the extension commutes with the trace");

  // Field scalars c with c^q = c keep the diagram commutative.
  TraceLike scaled{E.trace_key().num.mul_scalar(2), Poly::constant(total, 1)};
  CommuteWitness w3 = commute_check(E, phi, phibar, scaled);
  c.expect_bool("scaled-trace-commutes", true, w3.commutes, "prime-field scalars are Frobenius-fixed");
  return c.r;
}

FixtureResult fixture_nonoptimal() {
  Checker c;
  c.r.id = "nonoptimal";
  ExtensionPres E = make_y_x2();
  RingPtr base = E.base_ring();
  TablePtr bt = ensure_covers(PrimeTable::empty(base), parse_poly(base, "y"));
  QDivisor deltaX = divisor_of(parse_poly(base, "y"), bt);

  ContainmentReport r =
      verify_containment_extension(E, deltaX, Ideal::unit(base), Rat(1), ChainOptions{});
  c.expect_bool("containment", true, r.pass, "extended test ideal inside the upstairs one");
  c.expect_bool("strict", true, r.strict, "x^2 O_Y strictly inside x O_Y");
  c.expect("extended", "⟨x^2⟩", r.extended, "image of tau(X; div y) = <y>");
  c.expect("tau-upstairs", "⟨x⟩", r.tau_total, "tau(Y; div x) = <x>");
  return c.r;
}

FixtureResult fixture_artin_d4() {
  Checker c;
  c.r.id = "artin-d4";
  RingPtr A = PolyRing::make(2, {"x", "y", "z"});
  Poly h = parse_poly(A, "z^2 + x*y*z + x*y^2 + x^2*y");

  c.expect_bool("fedder-f-pure", true, fedder_test(h), "monomial xyz survives outside m^[2]");
  c.expect("tau", "⟨x, y, z⟩", tau_hypersurface(A, h).str(),
           "level-one Cartier chain from a Jacobian seed");
  c.expect_bool("not-strongly-f-regular", true, !is_strongly_F_regular_hypersurface(A, h),
                "tau is the maximal ideal, not the unit ideal");
  {
    SfpVerdict v = is_sharply_F_pure_hypersurface(h, Ideal::unit(A), Rat(1), 4);
    c.expect_bool("sharply-f-pure", true, v.fpure && v.witness_e == 1, "witness at e = 1");
  }

  ExtensionPres E = make_d4_cover();
  c.expect_bool("base-relations", true,
                E.base_relations().equals(Ideal(E.base_ring(), {h.transplant(E.base_ring())})),
                "eliminating u, v recovers the D4 equation");
  c.expect("trace-u", "x", E.trace_of_presented(parse_poly(E.ambient_ring(), "u")).str(),
           "coordinate solve over the fraction field");
  c.expect("trace-v", "y", E.trace_of_presented(parse_poly(E.ambient_ring(), "v")).str(),
           "coordinate solve over the fraction field");
  c.expect("trace-uv", "x*y + z", E.trace_of_presented(parse_poly(E.ambient_ring(), "u*v")).str(),
           "coordinate solve over the fraction field");
  c.expect("trace-image", "⟨x, y, z⟩", E.trace_image_ideal().str(),
           "stabilized sweep over algebra monomials");
  c.expect_bool("trace-not-surjective", true, E.is_trace_surjective() == TriState::False,
                "image is the maximal ideal");
  {
    CertificateReport r = surjectivity_certificate(
        E, QDivisor::zero(PrimeTable::empty(E.base_ring())), ChainOptions{});
    c.expect_bool("no-certificate", true, !r.certified && !r.sfr_ok,
                  "base is F-pure but not strongly F-regular");
  }
  return c.r;
}

FixtureResult fixture_transform_family() {
  Checker c;
  c.r.id = "transform-family";
  ChainOptions opt;

  {
    ExtensionPres E = make_y_x2();
    RingPtr base = E.base_ring();
    TablePtr bt = ensure_covers(PrimeTable::empty(base), parse_poly(base, "y"));
    TraceLike tr = E.trace_key();
    int yi = bt->index_of(parse_poly(base, "y"));
    for (auto [num, den] : {std::pair<int, int>{0, 1}, {1, 2}, {1, 1}, {3, 2}}) {
      QDivisor d = QDivisor::single(bt, yi, Rat(num, den));
      TransformReport r = verify_transformation(E, tr, d, Ideal::unit(base), Rat(1), opt);
      c.expect_bool("transform-y-x2-" + Rat(num, den).str(), true, r.pass, r.detail);
    }
    TransformReport ri = verify_intersection(E, QDivisor::single(bt, yi, Rat(1)),
                                             Ideal::unit(base), Rat(1), opt);
    c.expect_bool("intersection-y-x2", true, ri.pass, "tau_Y cap base = tau_X");
    TransformReport ri2 = verify_intersection(E, QDivisor::single(bt, yi, Rat(1, 2)),
                                              Ideal::unit(base), Rat(1), opt);
    c.expect_bool("intersection-y-x2-half", true, ri2.pass, "tau_Y cap base = tau_X");
  }
  {
    ExtensionPres E = make_nottame1();
    RingPtr base = E.base_ring();
    TablePtr bt = ensure_covers(PrimeTable::empty(base), parse_poly(base, "t"));
    QDivisor d = QDivisor::single(bt, 0, Rat(2));
    TraceLike tr = E.trace_key();
    TransformReport r = verify_transformation(E, tr, d, Ideal::unit(base), Rat(1), opt);
    c.expect_bool("transform-nottame1", true, r.pass, r.detail);
    c.expect("tau-x-nottame1", "⟨t^2⟩",
             tau_regular(d, Ideal::unit(base), Rat(1), opt).str(),
             "Skoda: tau(2[t]) = t^2 tau(0)");
    TransformReport ri = verify_intersection(E, d, Ideal::unit(base), Rat(1), opt);
    c.expect_bool("intersection-nottame1", true, ri.pass,
                  "trace is globally surjective: Tr(1) = 5 = 1");
    ContainmentReport rc = verify_containment_extension(E, d, Ideal::unit(base), Rat(1), opt);
    c.expect_bool("containment-nottame1", true, rc.pass && rc.strict,
                  "wildly ramified, so the containment is strict");
  }
  {
    ExtensionPres E = make_artin_schreier();
    RingPtr base = E.base_ring();
    TablePtr bt = PrimeTable::empty(base);
    TransformReport r = verify_transformation(E, E.trace_key(), QDivisor::zero(bt),
                                              Ideal::unit(base), Rat(1), opt);
    c.expect_bool("transform-etale", true, r.pass, "both sides are the unit ideal");
    CertificateReport cr = surjectivity_certificate(E, QDivisor::zero(bt), opt);
    c.expect_bool("certificate-etale", true, cr.certified, "Ram = 0 over a regular base");
  }
  {
    ExtensionPres E = make_kummer(3, 4);
    RingPtr base = E.base_ring();
    TablePtr bt = ensure_covers(PrimeTable::empty(base), parse_poly(base, "y"));
    QDivisor d = QDivisor::single(bt, bt->index_of(parse_poly(base, "y")), Rat(3, 4));
    CertificateReport cr = surjectivity_certificate(E, d, opt);
    c.expect_bool("certificate-kummer", true, cr.certified,
                  "pullback((3/4)[y]) = 3[x] = Ram and the base pair is F-regular");
    c.expect_bool("kummer-surjective", true, E.is_trace_surjective() == TriState::True,
                  "Tr(1) = 4 is a unit mod 3");
  }
  return c.r;
}

}  // namespace

const std::vector<std::string>& fixture_ids() {
  static const std::vector<std::string> ids{"y-x2",       "nottame1",  "nocommute",
                                            "nonoptimal", "artin-d4",  "transform-family"};
  return ids;
}

FixtureResult run_fixture(const std::string& id) {
  if (id == "y-x2") return fixture_y_x2();
  if (id == "nottame1") return fixture_nottame1();
  if (id == "nocommute") return fixture_nocommute();
  if (id == "nonoptimal") return fixture_nonoptimal();
  if (id == "artin-d4") return fixture_artin_d4();
  if (id == "transform-family") return fixture_transform_family();
  fail(Errc::Domain, "unknown fixture id '" + id + "'");
}

}  // namespace charp
