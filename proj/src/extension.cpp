#include "charp/extension.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "charp/frobenius.hpp"
#include "charp/linalg.hpp"
#include "charp/upoly.hpp"

namespace charp {

struct ExtensionPres::Cache {
  std::mutex mu;
  std::optional<std::vector<Poly>> trace_values;
  std::optional<std::vector<Poly>> t_powers;  // T^m mod g, m = 0..2n-2
  std::map<int, Poly> comparison;             // per level e
  // presented
  RingPtr elim;                      // extra vars senior, base vars junior
  std::optional<Ideal> relations_elim;
  std::optional<Ideal> base_relations;
  RingPtr base_only;
};

namespace {

std::vector<Poly> coeffs_in_var(const Poly& f, int var, int upto) {
  std::vector<Poly> out;
  out.reserve(upto + 1);
  std::vector<std::vector<Term>> buckets(upto + 1);
  for (const auto& t : f.terms()) {
    check(t.m[var] <= upto, Errc::Internal, "coefficient extraction bound too small");
    Mono m = t.m;
    m[var] = 0;
    buckets[t.m[var]].push_back({std::move(m), t.c});
  }
  for (int i = 0; i <= upto; ++i) out.push_back(Poly::from_terms(f.ring(), std::move(buckets[i])));
  return out;
}

}  // namespace

RingPtr ExtensionPres::extension_ring(const RingPtr& base) {
  std::vector<std::string> vars = base->vars;
  check(std::find(vars.begin(), vars.end(), "T") == vars.end(), Errc::Domain,
        "base ring may not use the reserved variable T");
  vars.push_back("T");
  return PolyRing::make(base->field, std::move(vars), Order::Grevlex);
}

ExtensionPres ExtensionPres::monogenic(RingPtr base, Poly g) {
  ExtensionPres e;
  e.kind_ = Kind::Monogenic;
  e.base_ = std::move(base);
  e.g_ = std::move(g);
  e.cache_ = std::make_shared<Cache>();
  e.validate_monogenic();
  return e;
}

ExtensionPres ExtensionPres::monogenic(RingPtr base, Poly g, RingPtr total, Poly T_img,
                                       std::vector<Poly> base_images) {
  ExtensionPres e = monogenic(std::move(base), std::move(g));
  e.total_ = std::move(total);
  e.T_image_ = std::move(T_img);
  e.base_images_ = std::move(base_images);

  check((int)e.base_images_.size() == e.base_->nvars(), Errc::Domain,
        "identification must map every base variable");
  // The relation g(T, t) = 0 must hold in the total ring.
  std::vector<Poly> images = e.base_images_;
  images.push_back(e.T_image_);
  Poly rel = e.g_.substitute(e.total_, images);
  check(rel.is_zero(), Errc::Domain,
        "identification fails the relation check: g(image) = " + rel.str());

  // Univariate fast path requirements (power-basis coordinates).
  check(e.total_->nvars() == 1, Errc::Unsupported, "total ring must be univariate");
  check(e.base_->nvars() == 1, Errc::Unsupported, "base ring must be univariate");
  check(e.T_image_ == Poly::variable(e.total_, 0), Errc::Unsupported,
        "unsupported extension shape: T must map to the total-ring variable");
  e.t_image_ = e.base_images_[0];
  check(e.t_image_.degree(0) == e.n_, Errc::Unsupported,
        "base-variable image must have degree equal to the extension degree");
  check(e.t_image_.leading_coef() == 1, Errc::Unsupported, "base-variable image must be monic");
  return e;
}

void ExtensionPres::validate_monogenic() {
  std::vector<std::string> vars = base_->vars;
  check(std::find(vars.begin(), vars.end(), "T") == vars.end(), Errc::Domain,
        "base ring may not use the reserved variable T");
  vars.push_back("T");
  ext_ring_ = PolyRing::make(base_->field, std::move(vars), Order::Grevlex);
  T_index_ = ext_ring_->nvars() - 1;
  g_ = g_.transplant(ext_ring_);
  n_ = g_.degree(T_index_);
  check(n_ >= 1, Errc::Domain, "minimal polynomial must involve T");
  // Monic in T: coefficient of T^n is the constant 1.
  Poly lead = coeffs_in_var(g_, T_index_, n_)[n_];
  check(lead.is_unit_constant() && lead.leading_coef() == 1, Errc::Domain,
        "minimal polynomial must be monic in T");
}

bool ExtensionPres::separable() const { return !g_derivative().is_zero(); }

Poly ExtensionPres::g_derivative() const { return g_.derivative(T_index_); }

const RingPtr& ExtensionPres::total_ring() const {
  check(total_ != nullptr, Errc::Unsupported, "extension has no total-ring identification");
  return total_;
}

const Poly& ExtensionPres::base_image() const {
  total_ring();
  return t_image_;
}

RingMap ExtensionPres::base_to_total() const {
  total_ring();
  return RingMap{base_, total_, base_images_};
}

RingMap ExtensionPres::ext_to_total() const {
  total_ring();
  std::vector<Poly> images = base_images_;
  images.push_back(T_image_);
  return RingMap{ext_ring_, total_, images};
}

Poly ExtensionPres::reduce_mod_g(const Poly& f_ext) const {
  Poly rem = f_ext;
  int dg = n_;
  while (true) {
    int d = rem.degree(T_index_);
    if (d < dg) return rem;
    // Subtract (leading T-coefficient) * T^{d-n} * g.
    auto coeffs = coeffs_in_var(rem, T_index_, d);
    Poly top = coeffs[d];
    Mono shift(ext_ring_->nvars(), 0);
    shift[T_index_] = d - dg;
    rem = rem - (top * g_).mul_term(shift, 1);
  }
}

std::vector<Poly> ExtensionPres::t_power_coords(const Poly& f_ext) const {
  Poly r = reduce_mod_g(f_ext);
  auto cs = coeffs_in_var(r, T_index_, std::max(0, r.degree(T_index_)));
  cs.resize(n_, Poly::zero(ext_ring_));
  // Coefficients involve only base variables; re-express in the base ring.
  std::vector<Poly> out;
  out.reserve(n_);
  for (auto& c : cs) out.push_back(c.transplant(base_));
  return out;
}

const std::vector<Poly>& ExtensionPres::trace_values() const {
  check(kind_ == Kind::Monogenic, Errc::NonMonogenic, "trace values need a monogenic extension");
  std::lock_guard<std::mutex> lk(cache_->mu);
  if (cache_->trace_values) return *cache_->trace_values;
  // T^m mod g for m = 0..2n-2, then Tr(T^i) = sum_k [T^{i+k} mod g]_k.
  std::vector<std::vector<Poly>> pow_coords;
  Poly cur = Poly::constant(ext_ring_, 1);
  for (int m = 0; m <= 2 * n_ - 2; ++m) {
    pow_coords.push_back(t_power_coords(cur));
    Mono t1(ext_ring_->nvars(), 0);
    t1[T_index_] = 1;
    cur = reduce_mod_g(cur.mul_term(t1, 1));
  }
  std::vector<Poly> tv;
  for (int i = 0; i < n_; ++i) {
    Poly s = Poly::zero(base_);
    for (int k = 0; k < n_; ++k) s = s + pow_coords[i + k][k];
    tv.push_back(s);
  }
  cache_->trace_values = std::move(tv);
  return *cache_->trace_values;
}

std::vector<std::vector<Poly>> ExtensionPres::trace_matrix() const {
  check(kind_ == Kind::Monogenic, Errc::NonMonogenic, "trace matrix needs a monogenic extension");
  // Gram matrix Tr(T^{i+j}); entries for i+j >= n come from reduced powers.
  std::vector<Poly> tr_pow;  // Tr(T^m), m = 0..2n-2
  Poly cur = Poly::constant(ext_ring_, 1);
  for (int m = 0; m <= 2 * n_ - 2; ++m) {
    auto coords = t_power_coords(cur);
    Poly tr = Poly::zero(base_);
    const auto& tv = trace_values();
    for (int i = 0; i < n_; ++i) tr = tr + coords[i] * tv[i];
    tr_pow.push_back(tr);
    Mono t1(ext_ring_->nvars(), 0);
    t1[T_index_] = 1;
    cur = reduce_mod_g(cur.mul_term(t1, 1));
  }
  std::vector<std::vector<Poly>> M(n_, std::vector<Poly>());
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) M[i].push_back(tr_pow[i + j]);
  return M;
}

std::vector<Poly> ExtensionPres::power_coords(const Poly& w_total) const {
  total_ring();
  check(w_total.ring() == total_ || w_total.ring()->same(*total_), Errc::RingMismatch,
        "element not in the total ring");
  // Expand w in powers of t = t_image: w = sum_k w_k(x) t^k with deg w_k < n,
  // then regroup by x-exponent. Valid because t_image is monic of degree n.
  std::vector<Poly> coords(n_, Poly::zero(base_));
  Poly cur = w_total;
  int k = 0;
  while (!cur.is_zero()) {
    auto [q, r] = upoly_divmod(cur, t_image_);
    for (const auto& t : r.terms()) {
      Mono m(1, (Exp)k);
      coords[t.m[0]] = coords[t.m[0]] + Poly::monomial(base_, m, t.c);
    }
    cur = q;
    ++k;
    check(k < (1 << 22), Errc::Internal, "runaway power-basis expansion");
  }
  return coords;
}

Poly ExtensionPres::from_power_coords(const std::vector<Poly>& coords) const {
  total_ring();
  check((int)coords.size() == n_, Errc::Domain, "coordinate vector has wrong length");
  Poly x = Poly::variable(total_, 0);
  Poly out = Poly::zero(total_);
  RingMap to_total{base_, total_, {t_image_}};
  for (int i = 0; i < n_; ++i) out = out + to_total.apply(coords[i]) * x.pow(i);
  return out;
}

Poly ExtensionPres::psi(const Poly& w_total) const { return power_coords(w_total)[n_ - 1]; }

Poly ExtensionPres::trace_of(const Poly& w_total) const {
  auto coords = power_coords(w_total);
  const auto& tv = trace_values();
  Poly out = Poly::zero(base_);
  for (int i = 0; i < n_; ++i) out = out + coords[i] * tv[i];
  return out;
}

TraceLike ExtensionPres::trace_key() const {
  check(kind_ == Kind::Monogenic, Errc::NonMonogenic, "trace key needs a monogenic extension");
  check(separable(), Errc::ZeroTrace,
        "inseparable extension: the trace is the zero map, supply a nonzero map instead");
  // Solve Psi(s * T^i) = Tr(T^i). The system matrix A_{ij} = [T^{i+j} mod g]
  // at coordinate n-1 is anti-unitriangular, so back-substitution stays in
  // the base ring.
  std::vector<std::vector<Poly>> A(n_, std::vector<Poly>());
  Poly cur = Poly::constant(ext_ring_, 1);
  std::vector<Poly> top_coord;  // [T^m mod g]_{n-1}, m = 0..2n-2
  for (int m = 0; m <= 2 * n_ - 2; ++m) {
    top_coord.push_back(t_power_coords(cur)[n_ - 1]);
    Mono t1(ext_ring_->nvars(), 0);
    t1[T_index_] = 1;
    cur = reduce_mod_g(cur.mul_term(t1, 1));
  }
  const auto& tv = trace_values();
  std::vector<Poly> s(n_, Poly::zero(base_));
  for (int i = 0; i < n_; ++i) {
    // Equation i: sum_j s_j * top_coord[i+j] = Tr(T^i); unknown s_{n-1-i}.
    Poly rhs = tv[i];
    for (int j = n_ - i; j < n_; ++j) rhs = rhs - s[j] * top_coord[i + j];
    check(top_coord[n_ - 1].is_unit_constant(), Errc::Internal, "unexpected system shape");
    s[n_ - 1 - i] = rhs;
  }
  bool all_zero = true;
  for (const auto& c : s)
    if (!c.is_zero()) all_zero = false;
  check(!all_zero, Errc::ZeroTrace, "trace key is zero");

  if (!has_identification()) {
    Poly s_ext = Poly::zero(ext_ring_);
    RingMap to_ext{base_, ext_ring_, {Poly::variable(ext_ring_, 0)}};
    Mono t1(ext_ring_->nvars(), 0);
    t1[T_index_] = 1;
    Poly T = Poly::monomial(ext_ring_, t1, 1);
    for (int j = 0; j < n_; ++j) s_ext = s_ext + to_ext.apply(s[j]) * T.pow(j);
    return TraceLike{s_ext, Poly::constant(ext_ring_, 1)};
  }
  Poly s_total = from_power_coords(s);
  // Cross-check against the ramification divisor (different = Fitting ideal
  // of the relative differentials, i.e. div(s) = div(g')).
  Poly gp = ext_to_total().apply(g_derivative());
  TablePtr tbl = ensure_covers(PrimeTable::empty(total_), s_total * gp);
  check(!(divisor_cmp(divisor_of(s_total, tbl), divisor_of(gp, tbl)) != DivisorCmp::Equal),
        Errc::Internal, "trace key divisor disagrees with the ramification divisor");
  return TraceLike{s_total, Poly::constant(total_, 1)};
}

QDivisor ExtensionPres::ramification_divisor(const TablePtr& total_table) const {
  check(kind_ == Kind::Monogenic, Errc::NonMonogenic,
        "ramification divisor needs a monogenic extension");
  check(separable(), Errc::ZeroTrace, "ramification divisor undefined: inseparable extension");
  Poly gp = ext_to_total().apply(g_derivative());
  return divisor_of(gp, total_table);
}

std::vector<TameRow> ExtensionPres::tame_report(const TablePtr& base_table,
                                                const TablePtr& total_table) const {
  const uint32_t p = base_->field.p();
  RingMap f = base_to_total();
  std::vector<TameRow> rows;
  for (int i = 0; i < base_table->size(); ++i) {
    Poly img = f.apply(base_table->prime(i));
    QDivisor dv = divisor_of(img, total_table);
    for (const auto& [j, mult] : dv.coeffs()) {
      TameRow row;
      row.base_prime = i;
      row.total_prime = j;
      row.index = (int)mult.num();
      // Residue fields are finite, hence perfect: residue extensions are
      // automatically separable and tameness is the index condition alone.
      if (row.index == 1)
        row.cls = TameRow::Class::Unramified;
      else if (row.index % (int)p == 0)
        row.cls = TameRow::Class::Wild;
      else
        row.cls = TameRow::Class::Tame;
      rows.push_back(row);
    }
  }
  return rows;
}

Poly ExtensionPres::comparison_element(int e) const {
  total_ring();
  {
    std::lock_guard<std::mutex> lk(cache_->mu);
    auto it = cache_->comparison.find(e);
    if (it != cache_->comparison.end()) return it->second;
  }
  const long long q = pe_power(base_->field.p(), e);
  const long long jmax = (long long)n_ * q * q;  // spanning set over q-th powers of R
  Poly x = Poly::variable(total_, 0);

  // Left side Psi(Phi_S(x^{j/q})) for each monomial of the spanning set.
  auto lhs_at = [&](long long j) -> Poly {
    if (j % q != q - 1) return Poly::zero(base_);
    return psi(x.pow((j - (q - 1)) / q));
  };
  // Right side coefficient of unknown monomial x^k at block j:
  // Phi_R(Psi^{1/q}((x^{k+j})^{1/q})) = level-e part of psi(x^{k+j}) at q-1.
  auto rhs_coef = [&](long long j, long long k) -> Poly {
    Poly top = psi(x.pow(j + k));
    Mono b(1, (Exp)(q - 1));
    return pe_part(top, e, b);
  };

  long long K = 1;
  const long long K_cap = 4 * (long long)n_ * q + 4;
  while (K <= K_cap) {
    LinearSystem sys(base_->field, (int)K);
    for (long long j = 0; j < jmax; ++j) {
      for (long long k = 0; k < K; ++k) sys.add_term((int)j, (int)k, rhs_coef(j, k));
      sys.set_rhs((int)j, lhs_at(j));
    }
    if (auto sol = sys.solve()) {
      std::vector<Term> terms;
      for (long long k = 0; k < K; ++k) {
        if ((*sol)[k] == 0) continue;
        terms.push_back({Mono(1, (Exp)k), (*sol)[k]});
      }
      Poly w = Poly::from_terms(total_, std::move(terms));
      check(!w.is_zero(), Errc::Internal, "degenerate comparison element");
      std::lock_guard<std::mutex> lk(cache_->mu);
      cache_->comparison.emplace(e, w);
      return w;
    }
    K *= 2;
  }
  fail(Errc::Internal, "comparison element not found within degree bound");
}

// ---------------- presented extensions ----------------

ExtensionPres ExtensionPres::presented(RingPtr ambient, Ideal relations, std::vector<Poly> basis,
                                       std::vector<std::string> base_vars) {
  ExtensionPres e;
  e.kind_ = Kind::Presented;
  e.ambient_ = std::move(ambient);
  e.relations_ = std::move(relations);
  e.basis_ = std::move(basis);
  e.base_var_names_ = std::move(base_vars);
  e.cache_ = std::make_shared<Cache>();
  e.validate_presented();
  return e;
}

void ExtensionPres::validate_presented() {
  check(!basis_.empty(), Errc::Domain, "presented extension needs a module basis");
  check(!base_var_names_.empty(), Errc::Domain, "presented extension needs base variables");
  for (const auto& v : base_var_names_)
    check(ambient_->var_index(v) >= 0, Errc::UnknownVariable,
          "base variable '" + v + "' not in the ambient ring");

  // Internal elimination ring: extra variables senior, base variables junior.
  std::vector<std::string> extra;
  for (const auto& v : ambient_->vars)
    if (std::find(base_var_names_.begin(), base_var_names_.end(), v) == base_var_names_.end())
      extra.push_back(v);
  check(!extra.empty(), Errc::Domain, "presented extension has no extension variables");
  std::vector<std::string> evars = extra;
  for (const auto& v : base_var_names_) evars.push_back(v);
  cache_->elim =
      PolyRing::make(ambient_->field, std::move(evars), Order::Grevlex, (int)extra.size());
  std::vector<Poly> rel_gens;
  for (const auto& g : relations_.gens()) rel_gens.push_back(g.transplant(cache_->elim));
  cache_->relations_elim = Ideal(cache_->elim, std::move(rel_gens));
  cache_->base_only = PolyRing::make(ambient_->field, base_var_names_, Order::Grevlex);
  base_ = cache_->base_only;

  // Base relations: eliminate the extension variables.
  std::vector<Poly> base_rel;
  int naux = (int)extra.size();
  for (const auto& g : cache_->relations_elim->groebner()) {
    bool pure = true;
    for (const auto& t : g.terms())
      for (int i = 0; i < naux && pure; ++i)
        if (t.m[i] != 0) pure = false;
    if (pure) base_rel.push_back(g.transplant(cache_->base_only));
  }
  cache_->base_relations = Ideal(cache_->base_only, std::move(base_rel));

  // The declared basis must be linearly independent over the base: a
  // dependence sum a_i b_i in I with some a_i nonzero mod the base relations
  // would show up in the coordinate solver as a nullspace vector. Checked to
  // a fixed degree bound.
  const Ideal& rel = *cache_->relations_elim;
  const int nb = (int)basis_.size();
  std::vector<Poly> basis_elim;
  for (const auto& b : basis_) basis_elim.push_back(b.transplant(cache_->elim));
  std::vector<Mono> base_monos;
  {
    // base-variable monomials of total degree <= 2 in the elimination ring
    std::vector<Mono> cur{Mono(cache_->elim->nvars(), 0)};
    base_monos = cur;
    for (int d = 0; d < 2; ++d) {
      std::vector<Mono> next;
      for (const auto& m : cur)
        for (int v = naux; v < cache_->elim->nvars(); ++v) {
          Mono mm = m;
          mm[v] += 1;
          next.push_back(mm);
        }
      for (const auto& m : next) base_monos.push_back(m);
      cur = next;
    }
  }
  LinearSystem dep(ambient_->field, nb * (int)base_monos.size());
  for (int i = 0; i < nb; ++i)
    for (size_t k = 0; k < base_monos.size(); ++k)
      dep.add_term(0, i * (int)base_monos.size() + (int)k,
                   rel.normal_form(basis_elim[i].mul_term(base_monos[k], 1)));
  for (const auto& v : dep.nullspace()) {
    // A genuine dependence needs some coefficient polynomial nonzero mod the
    // base relations.
    for (int i = 0; i < nb; ++i) {
      std::vector<Term> terms;
      for (size_t k = 0; k < base_monos.size(); ++k) {
        uint32_t c = v[i * base_monos.size() + k];
        if (c) {
          Mono m(base_monos[k].begin() + naux, base_monos[k].end());
          terms.push_back({m, c});
        }
      }
      Poly a = Poly::from_terms(cache_->base_only, std::move(terms));
      check(cache_->base_relations->normal_form(a).is_zero(), Errc::Domain,
            "declared basis is not free over the base");
    }
  }
}

const Ideal& ExtensionPres::base_relations() const {
  check(kind_ == Kind::Presented, Errc::Domain, "base relations need a presented extension");
  return *cache_->base_relations;
}

namespace {

std::vector<Mono> base_monomials_upto(const RingPtr& elim, int naux, int deg) {
  std::vector<Mono> out{Mono(elim->nvars(), 0)};
  std::vector<Mono> cur = out;
  for (int d = 0; d < deg; ++d) {
    std::vector<Mono> next;
    for (const auto& m : cur)
      for (int v = naux; v < elim->nvars(); ++v) {
        Mono mm = m;
        mm[v] += 1;
        next.push_back(mm);
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    for (const auto& m : next) out.push_back(m);
    cur = next;
  }
  return out;
}

Poly strip_aux(const Poly& f, const RingPtr& base_only, int naux) {
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    for (int i = 0; i < naux; ++i)
      check(t.m[i] == 0, Errc::Internal, "unexpected extension variable in base element");
    Mono m(t.m.begin() + naux, t.m.end());
    terms.push_back({m, t.c});
  }
  return Poly::from_terms(base_only, std::move(terms));
}

}  // namespace

Poly ExtensionPres::trace_of_presented(const Poly& w_ambient) const {
  check(kind_ == Kind::Presented, Errc::NonMonogenic, "presented trace on a monogenic extension");
  const Ideal& rel = *cache_->relations_elim;
  const RingPtr& E = cache_->elim;
  const int naux = E->elim_block;
  const int nb = (int)basis_.size();
  Poly w = w_ambient.transplant(E);
  std::vector<Poly> basis_elim;
  for (const auto& b : basis_) basis_elim.push_back(b.transplant(E));

  // Stage 1: find a common denominator d and numerators n_{ij} in the base
  // variables with d * w * b_i = sum_j n_{ij} b_j modulo the relations.
  for (int deg = 1; deg <= 6; ++deg) {
    auto monos = base_monomials_upto(E, naux, deg);
    const int M = (int)monos.size();
    // Unknown layout: d -> [0, M), n_{ij} -> M + (i*nb + j)*M + k.
    LinearSystem sys(E->field, M + nb * nb * M);
    for (int i = 0; i < nb; ++i) {
      Poly wbi = rel.normal_form(w * basis_elim[i]);
      for (int k = 0; k < M; ++k) {
        sys.add_term(i, k, rel.normal_form(wbi.mul_term(monos[k], 1)));
        for (int j = 0; j < nb; ++j) {
          Poly bj = rel.normal_form(basis_elim[j].mul_term(monos[k], 1));
          sys.add_term(i, M + (i * nb + j) * M + k, -bj);
        }
      }
    }
    for (const auto& v : sys.nullspace()) {
      std::vector<Term> dterms;
      for (int k = 0; k < M; ++k)
        if (v[k]) dterms.push_back({monos[k], v[k]});
      Poly d = Poly::from_terms(E, std::move(dterms));
      if (d.is_zero() || rel.normal_form(d).is_zero()) continue;
      // Trace numerator: sum of diagonal coordinates.
      Poly N = Poly::zero(E);
      for (int i = 0; i < nb; ++i) {
        std::vector<Term> nterms;
        for (int k = 0; k < M; ++k) {
          uint32_t c = v[M + (i * nb + i) * M + k];
          if (c) nterms.push_back({monos[k], c});
        }
        N = N + Poly::from_terms(E, nterms);
      }
      // Stage 2: divide in the base ring modulo the base relations.
      Poly Nb = strip_aux(N, cache_->base_only, naux);
      Poly db = strip_aux(d, cache_->base_only, naux);
      const Ideal& brel = *cache_->base_relations;
      for (int rdeg = 0; rdeg <= 6; ++rdeg) {
        std::vector<Mono> rmonos;
        {
          auto tmp = base_monomials_upto(
              PolyRing::make(cache_->base_only->field, cache_->base_only->vars), 0, rdeg);
          rmonos = tmp;
        }
        LinearSystem div(E->field, (int)rmonos.size());
        for (size_t k = 0; k < rmonos.size(); ++k)
          div.add_term(0, (int)k, brel.normal_form(db.mul_term(rmonos[k], 1)));
        div.set_rhs(0, brel.normal_form(Nb));
        if (auto sol = div.solve()) {
          std::vector<Term> rt;
          for (size_t k = 0; k < rmonos.size(); ++k)
            if ((*sol)[k]) rt.push_back({rmonos[k], (*sol)[k]});
          Poly r = Poly::from_terms(cache_->base_only, std::move(rt));
          return brel.normal_form(r);
        }
      }
      fail(Errc::Domain, "trace lies outside the base ring on the tested bound");
    }
  }
  fail(Errc::ResourceExceeded, "coordinate solve exceeded the degree ladder");
}

std::vector<std::vector<BaseFraction>> ExtensionPres::trace_matrix_presented() const {
  const int nb = (int)basis_.size();
  std::vector<std::vector<BaseFraction>> M(nb);
  Poly one = Poly::constant(cache_->base_only, 1);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      M[i].push_back(BaseFraction{trace_of_presented(basis_[i] * basis_[j]), one});
  return M;
}

Ideal ExtensionPres::trace_image_ideal() const {
  if (kind_ == Kind::Monogenic) {
    return Ideal(base_, trace_values());
  }
  // Presented: traces of extension-variable monomials generate Tr(S) as an
  // ideal of the base (trace is base-linear). Sweep with stabilization.
  const RingPtr& E = cache_->elim;
  const int naux = E->elim_block;
  std::vector<Poly> gens = cache_->base_relations->gens();
  Ideal current(cache_->base_only, gens);
  int idle = 0;
  for (int d = 0; d <= 6; ++d) {
    std::vector<Mono> monos;
    {
      std::vector<Mono> cur{Mono(ambient_->nvars(), 0)};
      for (int k = 0; k < d; ++k) {
        std::vector<Mono> next;
        for (const auto& m : cur)
          for (int v = 0; v < ambient_->nvars(); ++v) {
            if (cache_->elim->var_index(ambient_->vars[v]) >= naux) continue;  // extra vars only
            Mono mm = m;
            mm[v] += 1;
            next.push_back(mm);
          }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = next;
      }
      monos = cur;
    }
    std::vector<Poly> add = current.gens();
    for (const auto& m : monos)
      add.push_back(trace_of_presented(Poly::monomial(ambient_, m, 1)));
    Ideal next(cache_->base_only, std::move(add));
    if (next.equals(current)) {
      if (++idle >= 2) return current;
    } else {
      idle = 0;
      current = next;
    }
    if (current.is_unit_ideal()) return current;
  }
  fail(Errc::Inconclusive, "trace image sweep did not stabilize within the degree bound");
}

TriState ExtensionPres::is_trace_surjective() const {
  if (kind_ == Kind::Monogenic) {
    if (!separable()) return TriState::False;  // trace vanishes identically
    return trace_image_ideal().is_unit_ideal() ? TriState::True : TriState::False;
  }
  Ideal img = trace_image_ideal();  // raises Inconclusive when unstabilized
  return img.is_unit_ideal() ? TriState::True : TriState::False;
}

}  // namespace charp
