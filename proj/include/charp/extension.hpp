#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "charp/divisor.hpp"
#include "charp/ideal.hpp"

namespace charp {

/// A base-linear map from the total ring of an extension back to the base,
/// written relative to the canonical generator Psi of Hom_R(S, R): the map is
/// Psi(s . -) with key s = num/den. For monogenic extensions Psi is the
/// projection onto the top power-basis coordinate T^{n-1}.
struct TraceLike {
  Poly num;
  Poly den;  // usually 1

  bool is_fractional() const { return !den.is_unit_constant(); }
};

struct BaseFraction {
  Poly num;
  Poly den;
};

struct TameRow {
  int base_prime;   // index into the base table
  int total_prime;  // index into the total table
  int index;        // ramification index
  enum class Class { Unramified, Tame, Wild } cls;
};

enum class TriState { True, False, Inconclusive };

/// A finite ring extension R c S. Either monogenic S = R[T]/(g), optionally
/// identified with a univariate polynomial ring, or presented by an ambient
/// polynomial ring, a relation ideal, a free module basis of the fraction
/// field, and the base subring variables.
class ExtensionPres {
 public:
  enum class Kind { Monogenic, Presented };

  /// Monogenic constructor. `g` is parsed/held in the internal extension
  /// ring base_vars + {T}, monic in T. The identification, when supplied,
  /// maps T and the base variables into `total` and is verified to kill g.
  static ExtensionPres monogenic(RingPtr base, Poly g_in_ext_ring);
  static ExtensionPres monogenic(RingPtr base, Poly g_in_ext_ring, RingPtr total,
                                 Poly t_image_of_T, std::vector<Poly> base_images);

  static ExtensionPres presented(RingPtr ambient, Ideal relations, std::vector<Poly> basis,
                                 std::vector<std::string> base_vars);

  /// The internal ring base_vars + {T} in which minimal polynomials live.
  static RingPtr extension_ring(const RingPtr& base);

  Kind kind() const { return kind_; }
  const RingPtr& base_ring() const { return base_; }

  // ---- monogenic interface ----
  const RingPtr& ext_ring() const { return ext_ring_; }  // base vars + T
  const Poly& min_poly() const { return g_; }
  int degree() const { return n_; }
  bool separable() const;
  Poly g_derivative() const;  // in ext ring

  bool has_identification() const { return total_ != nullptr; }
  const RingPtr& total_ring() const;
  /// Image of the base variable t in the total ring (univariate fast path).
  const Poly& base_image() const;
  RingMap base_to_total() const;
  RingMap ext_to_total() const;  // T and base vars together

  /// Coordinates over the power basis {1, x, ..., x^{n-1}}: length-n vector
  /// of base-ring polynomials. Requires the univariate identification.
  std::vector<Poly> power_coords(const Poly& w_total) const;
  Poly from_power_coords(const std::vector<Poly>& coords) const;
  /// Canonical generator Psi: top power-basis coordinate.
  Poly psi(const Poly& w_total) const;

  /// Trace values Tr(T^i), i = 0..n-1, as base-ring elements (any monogenic).
  const std::vector<Poly>& trace_values() const;
  /// Gram matrix Tr(T^{i+j}) of the trace form.
  std::vector<std::vector<Poly>> trace_matrix() const;
  /// Trace of an arbitrary total-ring element (identified monogenic).
  Poly trace_of(const Poly& w_total) const;

  /// Key of the trace relative to Psi, solved from Psi(s*T^i) = Tr(T^i) by
  /// back-substitution. Raises ZeroTrace for inseparable extensions. With an
  /// identification the key is returned in the total ring and its divisor is
  /// checked against the ramification divisor.
  TraceLike trace_key() const;

  QDivisor ramification_divisor(const TablePtr& total_table) const;
  std::vector<TameRow> tame_report(const TablePtr& base_table, const TablePtr& total_table) const;

  /// Comparison element w with Psi o Phi_S = Phi_R o Psi^{1/q}(w^{1/q} . -),
  /// solved on the monomial spanning set and cached per level e.
  Poly comparison_element(int e) const;

  // ---- presented interface ----
  const RingPtr& ambient_ring() const { return ambient_; }
  const Ideal& relations() const { return relations_; }
  const std::vector<Poly>& module_basis() const { return basis_; }
  const std::vector<std::string>& base_vars() const { return base_var_names_; }
  /// Relations among the base variables (elimination of the extra variables),
  /// as an ideal of the base ring.
  const Ideal& base_relations() const;
  /// Trace of an ambient element, as a base-ring element (normal form against
  /// the base relations). Fraction-field intermediates are cleared and
  /// membership back in the base ring is verified.
  Poly trace_of_presented(const Poly& w_ambient) const;
  std::vector<std::vector<BaseFraction>> trace_matrix_presented() const;

  // ---- common queries ----
  /// Ideal of the base generated by traces of module/algebra generators.
  Ideal trace_image_ideal() const;
  TriState is_trace_surjective() const;

 private:
  ExtensionPres() = default;
  void validate_monogenic();
  void validate_presented();
  Poly reduce_mod_g(const Poly& f_ext) const;            // division by g in T
  std::vector<Poly> t_power_coords(const Poly& f_ext) const;  // coeffs of T^i after reduction

  Kind kind_ = Kind::Monogenic;
  RingPtr base_;

  // monogenic
  RingPtr ext_ring_;
  Poly g_;
  int n_ = 0;
  int T_index_ = -1;
  RingPtr total_;
  Poly t_image_;                  // image of the base variable
  Poly T_image_;                  // image of T (must be the total variable)
  std::vector<Poly> base_images_;

  // presented
  RingPtr ambient_;
  Ideal relations_;
  std::vector<Poly> basis_;
  std::vector<std::string> base_var_names_;

  struct Cache;
  std::shared_ptr<Cache> cache_;
};

}  // namespace charp
