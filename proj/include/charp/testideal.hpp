#pragma once

#include <optional>
#include <string>
#include <vector>

#include "charp/divisor.hpp"
#include "charp/extension.hpp"
#include "charp/ideal.hpp"
#include "charp/rat.hpp"

namespace charp {

struct ChainOptions {
  int e_cap = 8;          // hard cap on the Frobenius level
  int max_level_iters = 64;  // per-level fixed-point iterations
};

/// Combined data of a triple (X, Delta, a^t) over a regular ambient ring or
/// a hypersurface quotient of one.
struct Triple {
  QDivisor delta;           // over the ambient's prime table
  Ideal a;                  // nonzero coefficient ideal
  Rat t;                    // nonnegative exact exponent
  std::optional<Poly> hypersurface;  // quotient equation h, when present
};

/// Big test ideal of (ambient, Delta, a^t) for effective Delta on a
/// polynomial ring: ascending chain of Cartier images seeded with a test
/// element, with per-level round-ups of (p^e - 1) Delta. The returned ideal
/// is verified closed under every level <= the stabilization level.
Ideal tau_regular(const QDivisor& delta, const Ideal& a, const Rat& t,
                  const ChainOptions& opt = {});

struct FractionalIdeal {
  Ideal num;
  Poly den;

  std::string str() const;
};

bool fractional_equal(const FractionalIdeal& a, const FractionalIdeal& b);

/// Test ideal for arbitrary (possibly non-effective) Delta, as the fractional
/// ideal (1/f) tau(Delta + div f) for a table-supported clearing element f.
FractionalIdeal tau_fractional(const QDivisor& delta, const Ideal& a, const Rat& t,
                               const ChainOptions& opt = {});

/// Big test ideal of the hypersurface quotient R = ambient/(h), returned as
/// its preimage ideal in the ambient (contains h). The chain stabilizes the
/// level-one Cartier operator with key h^{p-1} from a test-element seed; a
/// Jacobian generator outside <h> is derived when no seed is supplied.
Ideal tau_hypersurface(const RingPtr& ambient, const Poly& h,
                       const std::optional<Poly>& seed = std::nullopt,
                       const ChainOptions& opt = {});

bool is_strongly_F_regular(const QDivisor& delta, const Ideal& a, const Rat& t,
                           const ChainOptions& opt = {});
bool is_strongly_F_regular_hypersurface(const RingPtr& ambient, const Poly& h,
                                        const ChainOptions& opt = {});

struct SfpVerdict {
  bool fpure = false;
  bool conclusive = false;  // a negative verdict may be bounded-only
  int witness_e = 0;
};

/// Sharp F-purity at the origin: search e <= cap for a bracket-power witness.
/// When (p^e - 1) Delta has period d prime to p and a is trivial, a negative
/// verdict at the period is conclusive.
SfpVerdict is_sharply_F_pure(const QDivisor& delta, const Ideal& a, const Rat& t, int e_cap = 6);
SfpVerdict is_sharply_F_pure_hypersurface(const Poly& h, const Ideal& a, const Rat& t,
                                          int e_cap = 6);

/// nu_f(p^e) = max { r : f^r outside m^{[p^e]} } at the origin.
long long nu_value(const Poly& f, int e);

struct FptBracket {
  int e;
  long long q;
  long long nu;
  Rat lo;  // open end
  Rat hi;  // closed end
};

/// Brackets (nu/q, (nu+1)/q] for e = 1..e_max; widths shrink by 1/p each step
/// and the normalized sequence nu/q is monotone (asserted).
std::vector<FptBracket> fpt_estimate(const Poly& f, int e_max);

struct TransformReport {
  bool pass = false;
  std::string lhs;
  std::string rhs;
  std::string detail;
};

/// Mechanical check of T(tau(Y; Delta_{Y/T}, (a S)^t)) = tau(X; Delta_X, a^t)
/// for a monogenic identified extension, with Delta_{Y/T} = pullback(Delta_X)
/// - div(s). Non-effective Delta_{Y/T} is cleared through a base element and
/// the Skoda identity.
TransformReport verify_transformation(const ExtensionPres& ext, const TraceLike& T,
                                      const QDivisor& deltaX, const Ideal& a, const Rat& t,
                                      const ChainOptions& opt = {});

/// Check tau(Y; Delta_Y) \cap O_X = tau(X; Delta_X) under a surjective trace.
TransformReport verify_intersection(const ExtensionPres& ext, const QDivisor& deltaX,
                                    const Ideal& a, const Rat& t, const ChainOptions& opt = {});

struct ContainmentReport {
  bool pass = false;
  bool strict = false;
  std::string extended;
  std::string tau_total;
};

/// Check tau(X; Delta_X) . O_Y \subseteq tau(Y; Delta_Y) and report strictness.
ContainmentReport verify_containment_extension(const ExtensionPres& ext, const QDivisor& deltaX,
                                               const Ideal& a, const Rat& t,
                                               const ChainOptions& opt = {});

struct SkodaReport {
  bool pass = false;
  std::string lhs;
  std::string rhs;
};

/// Skoda identity tau(Delta + div f, a^t) = f . tau(Delta, a^t).
SkodaReport skoda_check(const QDivisor& delta, const Ideal& a, const Rat& t, const Poly& f,
                        const ChainOptions& opt = {});

struct CertificateReport {
  bool certified = false;
  bool effective_ok = false;
  bool sfr_ok = false;
  std::string reason;
};

/// Trace-surjectivity certificate: (i) pullback(Delta_X) - Ram effective and
/// (ii) the base pair strongly F-regular imply a surjective trace. Certified
/// results are cross-checked against the direct test when that is conclusive.
CertificateReport surjectivity_certificate(const ExtensionPres& ext, const QDivisor& deltaX,
                                           const ChainOptions& opt = {});

/// Helper shared by the chain algorithms: ceil(t * (q - 1)) exactly.
long long ceil_t_qminus1(const Rat& t, long long q);

}  // namespace charp
