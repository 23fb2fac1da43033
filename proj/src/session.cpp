#include "charp/session.hpp"

#include <sstream>

#include "charp/factor.hpp"
#include "charp/fixtures.hpp"
#include "charp/frobenius.hpp"
#include "charp/parse.hpp"

#include "json.hpp"

namespace charp {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

Rat parse_rat(const std::string& s) {
  auto parts = split(s, '/');
  check(parts.size() <= 2 && !parts.empty() && !parts[0].empty(), Errc::Parse,
        "bad rational '" + s + "'");
  try {
    long long n = std::stoll(parts[0]);
    long long d = parts.size() == 2 ? std::stoll(parts[1]) : 1;
    return Rat(n, d);
  } catch (const std::exception&) {
    fail(Errc::Parse, "bad rational '" + s + "'");
  }
}

struct Statement {
  int line = 0;
  std::string text;
};

class SessionImpl {
 public:
  explicit SessionImpl(const SessionOptions& opt) : opt_(opt) {
    chain_.e_cap = opt.max_e;
    if (opt.default_p != 0 && !opt.default_vars.empty()) {
      std::vector<std::string> vars;
      for (auto& v : split(opt.default_vars, ',')) vars.push_back(trim(v));
      ring_ = PolyRing::make(opt.default_p, vars, opt.default_order);
      table_ = PrimeTable::empty(ring_);
    }
  }

  /// Runs one statement, returning the produced output lines.
  std::vector<std::string> exec(const std::string& stmt);

  bool verify_failed() const { return verify_failed_; }

 private:
  RingPtr need_ring() const {
    check(ring_ != nullptr, Errc::Parse, "no ring declared (use: ring p=.. vars=..)");
    return ring_;
  }

  Poly poly_arg(const std::string& tok, RingPtr ring = nullptr) {
    if (!ring) ring = need_ring();
    auto it = polys_.find(tok);
    if (it != polys_.end() && it->second.ring()->same(*ring)) return it->second;
    if (it != polys_.end()) return it->second.transplant(ring);
    return parse_poly(ring, tok);
  }

  Ideal ideal_arg(const std::string& tok) {
    auto it = ideals_.find(tok);
    if (it != ideals_.end()) return it->second;
    if (tok == "1") return Ideal::unit(need_ring());
    if (tok.rfind("ideal(", 0) == 0 && tok.back() == ')') {
      std::string inner = tok.substr(6, tok.size() - 7);
      std::vector<Poly> gens;
      for (auto& g : split(inner, ','))
        if (!trim(g).empty()) gens.push_back(poly_arg(trim(g)));
      return Ideal(need_ring(), std::move(gens));
    }
    fail(Errc::Parse, "unknown ideal '" + tok + "'");
  }

  QDivisor div_arg(const std::string& tok) {
    auto it = divisors_.find(tok);
    if (it != divisors_.end()) return it->second;
    return parse_divisor(tok);
  }

  const ExtensionPres& ext_arg(const std::string& tok) {
    auto it = exts_.find(tok);
    check(it != exts_.end(), Errc::Parse, "unknown extension '" + tok + "'");
    return it->second;
  }

  /// Divisor literal: rat[prime] +/- rat[prime] ... or "0". Primes are
  /// looked up in the current table, which is auto-extended for univariate
  /// irreducible entries.
  QDivisor parse_divisor(const std::string& text) {
    std::string s = trim(text);
    if (s == "0") return QDivisor::zero(table_);
    QDivisor out = QDivisor::zero(table_);
    size_t pos = 0;
    int sign = 1;
    auto skip_ws = [&] { while (pos < s.size() && s[pos] == ' ') ++pos; };
    while (pos < s.size()) {
      skip_ws();
      if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        sign = s[pos] == '-' ? -1 : 1;
        ++pos;
        skip_ws();
      }
      std::string coef;
      while (pos < s.size() && s[pos] != '[') coef += s[pos++];
      coef = trim(coef);
      Rat c = coef.empty() ? Rat(1) : parse_rat(coef);
      check(pos < s.size() && s[pos] == '[', Errc::Parse, "expected '[' in divisor literal");
      ++pos;
      std::string prime;
      int depth = 1;
      while (pos < s.size() && depth > 0) {
        if (s[pos] == '[') ++depth;
        if (s[pos] == ']') {
          --depth;
          if (depth == 0) break;
        }
        prime += s[pos++];
      }
      check(pos < s.size() && s[pos] == ']', Errc::Parse, "unterminated '[' in divisor literal");
      ++pos;
      Poly P = parse_poly(need_ring(), prime).monic();
      int idx = table_->index_of(P);
      if (idx < 0) {
        table_ = table_->extended_with_factors(P);
        idx = table_->index_of(P);
        check(idx >= 0, Errc::UncoveredFactor, "'" + P.str() + "' is not irreducible");
      }
      out = out.retable(table_) + QDivisor::single(table_, idx, c * Rat(sign));
      sign = 1;
    }
    return out;
  }

  // Key=value argument helpers.
  static std::map<std::string, std::string> kv(const std::vector<std::string>& toks, size_t from) {
    std::map<std::string, std::string> m;
    for (size_t i = from; i < toks.size(); ++i) {
      auto eq = toks[i].find('=');
      check(eq != std::string::npos, Errc::Parse, "expected key=value, got '" + toks[i] + "'");
      m[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
    }
    return m;
  }
  static std::string kv_get(const std::map<std::string, std::string>& m, const std::string& k) {
    auto it = m.find(k);
    check(it != m.end(), Errc::Parse, "missing argument '" + k + "='");
    return it->second;
  }
  static std::string kv_get_or(const std::map<std::string, std::string>& m, const std::string& k,
                               const std::string& dflt) {
    auto it = m.find(k);
    return it == m.end() ? dflt : it->second;
  }

  SessionOptions opt_;
  ChainOptions chain_;
  RingPtr ring_;
  TablePtr table_;
  std::map<std::string, Poly> polys_;
  std::map<std::string, Ideal> ideals_;
  std::map<std::string, QDivisor> divisors_;
  std::map<std::string, ExtensionPres> exts_;
  bool verify_failed_ = false;
};

std::vector<std::string> SessionImpl::exec(const std::string& stmt) {
  std::vector<std::string> out;
  std::istringstream iss(stmt);
  std::vector<std::string> toks;
  for (std::string t; iss >> t;) toks.push_back(t);
  if (toks.empty()) return out;
  const std::string& cmd = toks[0];

  // Assignment: <name> = <expr...>
  if (toks.size() >= 3 && toks[1] == "=") {
    std::string rhs;
    for (size_t i = 2; i < toks.size(); ++i) {
      if (i > 2) rhs += " ";
      rhs += toks[i];
    }
    rhs = trim(rhs);
    if (rhs.rfind("ideal(", 0) == 0) {
      ideals_.insert_or_assign(cmd, ideal_arg(rhs));
    } else if (rhs.rfind("div ", 0) == 0) {
      divisors_.insert_or_assign(cmd, parse_divisor(rhs.substr(4)));
    } else {
      polys_.insert_or_assign(cmd, parse_poly(need_ring(), rhs));
    }
    return out;
  }

  if (cmd == "ring") {
    auto m = kv(toks, 1);
    uint32_t p = (uint32_t)std::stoul(kv_get(m, "p"));
    std::vector<std::string> vars;
    for (auto& v : split(kv_get(m, "vars"), ',')) vars.push_back(trim(v));
    std::string ord = kv_get_or(m, "order", "grevlex");
    check(ord == "lex" || ord == "grevlex", Errc::Parse, "order must be lex or grevlex");
    ring_ = PolyRing::make(p, vars, ord == "lex" ? Order::Lex : Order::Grevlex);
    table_ = PrimeTable::empty(ring_);
    polys_.clear();
    ideals_.clear();
    divisors_.clear();
    return out;
  }
  if (cmd == "table") {
    std::string rest = trim(stmt.substr(stmt.find("table") + 5));
    std::vector<Poly> primes;
    for (auto& s : split(rest, ','))
      if (!trim(s).empty()) primes.push_back(parse_poly(need_ring(), trim(s)));
    table_ = PrimeTable::make(need_ring(), std::move(primes));
    return out;
  }
  if (cmd == "parse") {
    out.push_back(poly_arg(toks.at(1)).str());
    return out;
  }
  if (cmd == "factor") {
    auto fs = univariate_factor(poly_arg(toks.at(1)));
    std::ostringstream os;
    for (size_t i = 0; i < fs.size(); ++i) {
      if (i) os << " * ";
      os << "(" << fs[i].first.str() << ")";
      if (fs[i].second > 1) os << "^" << fs[i].second;
    }
    out.push_back(fs.empty() ? "1" : os.str());
    return out;
  }
  if (cmd == "gb") {
    out.push_back(ideal_arg(toks.at(1)).str());
    return out;
  }
  if (cmd == "nf") {
    out.push_back(ideal_arg(toks.at(2)).normal_form(poly_arg(toks.at(1))).str());
    return out;
  }
  if (cmd == "member") {
    out.push_back(ideal_arg(toks.at(2)).contains(poly_arg(toks.at(1))) ? "true" : "false");
    return out;
  }
  if (cmd == "equal") {
    out.push_back(ideal_arg(toks.at(1)).equals(ideal_arg(toks.at(2))) ? "true" : "false");
    return out;
  }
  if (cmd == "sum" || cmd == "product" || cmd == "intersect") {
    Ideal A = ideal_arg(toks.at(1)), B = ideal_arg(toks.at(2));
    Ideal R = cmd == "sum" ? A.sum(B) : cmd == "product" ? A.product(B) : A.intersect(B);
    out.push_back(R.str());
    return out;
  }
  if (cmd == "colon") {
    out.push_back(ideal_arg(toks.at(1)).colon(poly_arg(toks.at(2))).str());
    return out;
  }
  if (cmd == "bracket") {
    auto m = kv(toks, 2);
    out.push_back(ideal_arg(toks.at(1)).bracket_power(std::stoi(kv_get(m, "e"))).str());
    return out;
  }
  if (cmd == "frobroot") {
    auto m = kv(toks, 2);
    out.push_back(frob_root(ideal_arg(toks.at(1)), std::stoi(kv_get(m, "e"))).str());
    return out;
  }
  if (cmd == "cartier") {
    auto m = kv(toks, 2);
    out.push_back(cartier_apply(poly_arg(kv_get(m, "u")), std::stoi(kv_get(m, "e")),
                                ideal_arg(toks.at(1)))
                      .str());
    return out;
  }
  if (cmd == "applypmap") {
    auto m = kv(toks, 1);
    out.push_back(
        apply_pmap(poly_arg(kv_get(m, "u")), std::stoi(kv_get(m, "e")), poly_arg(kv_get(m, "g")))
            .str());
    return out;
  }
  if (cmd == "fedder") {
    const std::string& arg = toks.at(1);
    bool fp = (ideals_.count(arg) || arg.rfind("ideal(", 0) == 0) ? fedder_test(ideal_arg(arg))
                                                                  : fedder_test(poly_arg(arg));
    out.push_back(std::string("F-pure: ") + (fp ? "true" : "false"));
    return out;
  }
  if (cmd == "divof") {
    Poly f = poly_arg(toks.at(1));
    table_ = ensure_covers(table_, f);
    out.push_back(divisor_of(f, table_).str());
    return out;
  }
  if (cmd == "round") {
    QDivisor d = div_arg(toks.at(2));
    out.push_back((toks.at(1) == "ceil" ? d.ceil() : d.floor()).str());
    return out;
  }
  if (cmd == "effective") {
    out.push_back(div_arg(toks.at(1)).is_effective() ? "true" : "false");
    return out;
  }
  if (cmd == "cmp") {
    switch (divisor_cmp(div_arg(toks.at(1)), div_arg(toks.at(2)))) {
      case DivisorCmp::Equal: out.push_back("equal"); break;
      case DivisorCmp::Geq: out.push_back("geq"); break;
      case DivisorCmp::Leq: out.push_back("leq"); break;
      case DivisorCmp::Incomparable: out.push_back("incomparable"); break;
    }
    return out;
  }
  if (cmd == "deltaof") {
    auto m = kv(toks, 1);
    Poly u = poly_arg(kv_get(m, "u"));
    table_ = ensure_covers(table_, u);
    PMapKey phi(need_ring(), std::stoi(kv_get(m, "e")), u);
    out.push_back(delta_of_key(phi, table_).str());
    return out;
  }
  if (cmd == "keyof") {
    auto m = kv(toks, 2);
    out.push_back(key_of_delta(div_arg(toks.at(1)), std::stoi(kv_get(m, "e"))).u.str());
    return out;
  }
  if (cmd == "iterate") {
    auto m = kv(toks, 1);
    PMapKey phi(need_ring(), std::stoi(kv_get(m, "e")), poly_arg(kv_get(m, "u")));
    PMapKey it = iterate_map(phi, std::stoi(kv_get(m, "n")));
    out.push_back("e=" + std::to_string(it.e) + " u=" + it.u.str());
    return out;
  }
  if (cmd == "ext") {
    check(toks.size() >= 3, Errc::Parse, "ext needs a name and a kind");
    const std::string& name = toks.at(1);
    const std::string& kind = toks.at(2);
    auto m = kv(toks, 3);
    uint32_t p = ring_ ? ring_->field.p() : opt_.default_p;
    if (m.count("p")) p = (uint32_t)std::stoul(m.at("p"));
    check(p != 0, Errc::Parse, "no characteristic available for ext");
    if (kind == "monogenic") {
      std::vector<std::string> bvars;
      for (auto& v : split(kv_get(m, "basevars"), ',')) bvars.push_back(trim(v));
      RingPtr base = PolyRing::make(p, bvars);
      RingPtr extr = ExtensionPres::extension_ring(base);
      Poly g = parse_poly(extr, kv_get(m, "g"));
      if (m.count("totalvars")) {
        std::vector<std::string> tvars;
        for (auto& v : split(kv_get(m, "totalvars"), ',')) tvars.push_back(trim(v));
        RingPtr total = PolyRing::make(p, tvars);
        Poly Timg = parse_poly(total, kv_get(m, "T"));
        std::vector<Poly> base_imgs;
        for (const auto& bv : bvars) base_imgs.push_back(parse_poly(total, kv_get(m, bv)));
        exts_.insert_or_assign(
            name, ExtensionPres::monogenic(base, g, total, Timg, std::move(base_imgs)));
      } else {
        exts_.insert_or_assign(name, ExtensionPres::monogenic(base, g));
      }
    } else if (kind == "presented") {
      std::vector<std::string> avars;
      for (auto& v : split(kv_get(m, "ambientvars"), ',')) avars.push_back(trim(v));
      RingPtr ambient = PolyRing::make(p, avars);
      std::vector<Poly> rels;
      for (auto& r : split(kv_get(m, "relations"), ','))
        if (!trim(r).empty()) rels.push_back(parse_poly(ambient, trim(r)));
      std::vector<Poly> basis;
      for (auto& b : split(kv_get(m, "basis"), ','))
        if (!trim(b).empty()) basis.push_back(parse_poly(ambient, trim(b)));
      std::vector<std::string> bvars;
      for (auto& v : split(kv_get(m, "basevars"), ',')) bvars.push_back(trim(v));
      exts_.insert_or_assign(name, ExtensionPres::presented(ambient, Ideal(ambient, rels),
                                                            std::move(basis), std::move(bvars)));
    } else {
      fail(Errc::Parse, "unknown extension kind '" + kind + "'");
    }
    return out;
  }
  if (cmd == "trace") {
    const ExtensionPres& E = ext_arg(toks.at(1));
    if (E.kind() == ExtensionPres::Kind::Monogenic) {
      Poly w = poly_arg(toks.at(2), E.total_ring());
      out.push_back(E.trace_of(w).str());
    } else {
      Poly w = poly_arg(toks.at(2), E.ambient_ring());
      out.push_back(E.trace_of_presented(w).str());
    }
    return out;
  }
  if (cmd == "tracekey") {
    TraceLike tr = ext_arg(toks.at(1)).trace_key();
    out.push_back(tr.num.str());
    return out;
  }
  if (cmd == "ram") {
    const ExtensionPres& E = ext_arg(toks.at(1));
    TablePtr t = ensure_covers(PrimeTable::empty(E.total_ring()),
                               E.ext_to_total().apply(E.g_derivative()));
    out.push_back(E.ramification_divisor(t).str());
    return out;
  }
  if (cmd == "tame") {
    const ExtensionPres& E = ext_arg(toks.at(1));
    TablePtr bt = PrimeTable::empty(E.base_ring());
    for (int i = 0; i < E.base_ring()->nvars(); ++i)
      bt = ensure_covers(bt, Poly::variable(E.base_ring(), i));
    TablePtr tt = PrimeTable::empty(E.total_ring());
    RingMap down = E.base_to_total();
    for (int i = 0; i < bt->size(); ++i) tt = ensure_covers(tt, down.apply(bt->prime(i)));
    for (const auto& row : E.tame_report(bt, tt)) {
      std::string cls = row.cls == TameRow::Class::Unramified ? "unramified"
                        : row.cls == TameRow::Class::Tame     ? "tame"
                                                              : "wild";
      out.push_back("[" + bt->prime(row.base_prime).str() + "] at [" +
                    tt->prime(row.total_prime).str() + "]: index " + std::to_string(row.index) +
                    ", " + cls);
    }
    return out;
  }
  if (cmd == "traceimage") {
    out.push_back(ext_arg(toks.at(1)).trace_image_ideal().str());
    return out;
  }
  if (cmd == "surjective") {
    switch (ext_arg(toks.at(1)).is_trace_surjective()) {
      case TriState::True: out.push_back("true"); break;
      case TriState::False: out.push_back("false"); break;
      case TriState::Inconclusive: out.push_back("inconclusive"); break;
    }
    return out;
  }
  if (cmd == "transpose") {
    const ExtensionPres& E = ext_arg(toks.at(1));
    auto m = kv(toks, 2);
    PMapKey phi(E.base_ring(), std::stoi(kv_get(m, "e")),
                poly_arg(kv_get(m, "u"), E.base_ring()));
    TransposeResult r = transpose_key(E, phi, E.trace_key());
    if (!r.exists) {
      out.push_back("exists: false");
    } else {
      out.push_back("exists: true; key " + r.key_num.str() + "; Delta " + r.delta.str());
    }
    return out;
  }
  if (cmd == "commute") {
    const ExtensionPres& E = ext_arg(toks.at(1));
    auto m = kv(toks, 2);
    int e = std::stoi(kv_get(m, "e"));
    PMapKey phi(E.base_ring(), e, poly_arg(kv_get(m, "u"), E.base_ring()));
    PMapKey phibar(E.total_ring(), e, poly_arg(kv_get(m, "ubar"), E.total_ring()));
    TraceLike psi{poly_arg(kv_get(m, "psi"), E.total_ring()),
                  Poly::constant(E.total_ring(), 1)};
    CommuteWitness w = commute_check(E, phi, phibar, psi);
    if (w.commutes) {
      out.push_back("commutes: true");
    } else {
      out.push_back("commutes: false; witness x^(" + std::to_string(w.j) + "/q): " +
                    w.lhs.str() + " vs " + w.rhs.str());
    }
    return out;
  }
  if (cmd == "tau") {
    auto m = kv(toks, 1);
    QDivisor d = m.count("delta") ? div_arg(m.at("delta")) : QDivisor::zero(table_);
    Ideal a = m.count("a") ? ideal_arg(m.at("a")) : Ideal::unit(need_ring());
    Rat t = m.count("t") ? parse_rat(m.at("t")) : Rat(1);
    if (d.is_effective()) {
      out.push_back(tau_regular(d, a, t, chain_).str());
    } else {
      out.push_back(tau_fractional(d, a, t, chain_).str());
    }
    return out;
  }
  if (cmd == "tauh") {
    auto m = kv(toks, 2);
    std::optional<Poly> seed;
    if (m.count("c")) seed = poly_arg(m.at("c"));
    out.push_back(tau_hypersurface(need_ring(), poly_arg(toks.at(1)), seed, chain_).str());
    return out;
  }
  if (cmd == "nu") {
    auto m = kv(toks, 2);
    out.push_back(std::to_string(nu_value(poly_arg(toks.at(1)), std::stoi(kv_get(m, "e")))));
    return out;
  }
  if (cmd == "fpt") {
    auto m = kv(toks, 2);
    auto seq = fpt_estimate(poly_arg(toks.at(1)), std::stoi(kv_get(m, "e")));
    const auto& b = seq.back();
    out.push_back("fpt in (" + b.lo.str() + ", " + b.hi.str() + "]  (nu=" +
                  std::to_string(b.nu) + ", q=" + std::to_string(b.q) + ")");
    return out;
  }
  if (cmd == "sfr") {
    auto m = kv(toks, 1);
    if (m.count("h")) {
      out.push_back(is_strongly_F_regular_hypersurface(need_ring(), poly_arg(m.at("h")), chain_)
                        ? "strongly F-regular: true"
                        : "strongly F-regular: false");
    } else {
      QDivisor d = m.count("delta") ? div_arg(m.at("delta")) : QDivisor::zero(table_);
      Ideal a = m.count("a") ? ideal_arg(m.at("a")) : Ideal::unit(need_ring());
      Rat t = m.count("t") ? parse_rat(m.at("t")) : Rat(1);
      out.push_back(is_strongly_F_regular(d, a, t, chain_) ? "strongly F-regular: true"
                                                           : "strongly F-regular: false");
    }
    return out;
  }
  if (cmd == "sfp") {
    auto m = kv(toks, 1);
    SfpVerdict v;
    if (m.count("h")) {
      Ideal a = m.count("a") ? ideal_arg(m.at("a")) : Ideal::unit(need_ring());
      Rat t = m.count("t") ? parse_rat(m.at("t")) : Rat(1);
      v = is_sharply_F_pure_hypersurface(poly_arg(m.at("h")), a, t, chain_.e_cap);
    } else {
      QDivisor d = m.count("delta") ? div_arg(m.at("delta")) : QDivisor::zero(table_);
      Ideal a = m.count("a") ? ideal_arg(m.at("a")) : Ideal::unit(need_ring());
      Rat t = m.count("t") ? parse_rat(m.at("t")) : Rat(1);
      v = is_sharply_F_pure(d, a, t, chain_.e_cap);
    }
    if (v.fpure)
      out.push_back("sharply F-pure: true (witness e=" + std::to_string(v.witness_e) + ")");
    else
      out.push_back(v.conclusive ? "sharply F-pure: false"
                                 : "sharply F-pure: false-up-to-cap");
    return out;
  }
  if (cmd == "certificate") {
    const ExtensionPres& E = ext_arg(toks.at(1));
    auto m = kv(toks, 2);
    QDivisor d = m.count("delta") ? div_arg(m.at("delta"))
                                  : QDivisor::zero(PrimeTable::empty(E.base_ring()));
    CertificateReport r = surjectivity_certificate(E, d, chain_);
    out.push_back((r.certified ? std::string("certified") : std::string("no-certificate")) +
                  ": " + r.reason);
    return out;
  }
  if (cmd == "transform" || cmd == "intersection" || cmd == "containment") {
    const ExtensionPres& E = ext_arg(toks.at(1));
    auto m = kv(toks, 2);
    QDivisor d = m.count("delta") ? div_arg(m.at("delta"))
                                  : QDivisor::zero(PrimeTable::empty(E.base_ring()));
    Ideal a = m.count("a") ? ideal_arg(m.at("a")) : Ideal::unit(E.base_ring());
    Rat t = m.count("t") ? parse_rat(m.at("t")) : Rat(1);
    if (cmd == "transform") {
      TransformReport r = verify_transformation(E, E.trace_key(), d, a, t, chain_);
      out.push_back(std::string(r.pass ? "PASS" : "FAIL") + ": Tr(tau_Y) = " + r.lhs +
                    ", tau_X (shifted) = " + r.rhs + "; " + r.detail);
    } else if (cmd == "intersection") {
      TransformReport r = verify_intersection(E, d, a, t, chain_);
      out.push_back(std::string(r.pass ? "PASS" : "FAIL") + ": tau_Y cap base = " + r.lhs +
                    ", tau_X = " + r.rhs + "; " + r.detail);
    } else {
      ContainmentReport r = verify_containment_extension(E, d, a, t, chain_);
      out.push_back(std::string(r.pass ? "PASS" : "FAIL") +
                    (r.strict ? " (strict)" : "") + ": extended = " + r.extended +
                    ", tau_Y = " + r.tau_total);
    }
    return out;
  }
  if (cmd == "verify") {
    std::vector<std::string> ids;
    if (toks.at(1) == "all")
      ids = fixture_ids();
    else
      ids.push_back(toks.at(1));
    int total = 0, passed = 0;
    for (const auto& id : ids) {
      FixtureResult r = run_fixture(id);
      for (const auto& c : r.checks) {
        ++total;
        if (c.pass) ++passed;
        std::string line = std::string(c.pass ? "PASS " : "FAIL ") + r.id + "." + c.name +
                           ": expected " + c.expected;
        if (!c.pass) line += ", got " + c.got;
        out.push_back(line);
      }
      if (!r.all_pass()) verify_failed_ = true;
    }
    out.push_back(std::to_string(passed) + "/" + std::to_string(total) + " checks passed");
    return out;
  }

  fail(Errc::Parse, "unknown statement '" + cmd + "'");
}

}  // namespace

Transcript run_session(const std::string& script, const SessionOptions& opt) {
  set_step_cap(opt.step_cap);
  if (opt.seed) set_factor_seed(opt.seed);
  SessionImpl impl(opt);
  Transcript tr;
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  std::ostringstream text;

  std::vector<Statement> stmts;
  {
    int lineno = 0;
    std::istringstream lines(script);
    for (std::string line; std::getline(lines, line);) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      for (auto& piece : split(line, ';')) {
        std::string s = trim(piece);
        if (!s.empty()) stmts.push_back({lineno, s});
      }
    }
  }

  for (const auto& st : stmts) {
    try {
      auto lines = impl.exec(st.text);
      for (const auto& l : lines) text << l << "\n";
      if (opt.json) {
        nlohmann::ordered_json rec;
        rec["line"] = st.line;
        rec["cmd"] = st.text;
        rec["output"] = lines;
        records.push_back(rec);
      }
    } catch (const Error& e) {
      std::string msg = "error (line " + std::to_string(st.line) + "): " + e.what();
      text << msg << "\n";
      if (opt.json) {
        nlohmann::ordered_json rec;
        rec["line"] = st.line;
        rec["cmd"] = st.text;
        rec["error"] = e.what();
        records.push_back(rec);
      }
      tr.exit_code = e.code() == Errc::Parse || e.code() == Errc::UnknownVariable ? 2
                     : e.code() == Errc::ResourceExceeded                         ? 3
                                                                                  : 1;
      break;
    }
  }
  if (tr.exit_code == 0 && impl.verify_failed()) tr.exit_code = 1;
  tr.text = text.str();
  if (opt.json) tr.json = records.dump(2) + "\n";
  return tr;
}

}  // namespace charp
