#pragma once

#include <memory>
#include <string>
#include <vector>

#include "charp/poly.hpp"

namespace charp {

/// Global reduction-step cap for Groebner computations. Exceeding it raises
/// Errc::ResourceExceeded instead of spinning forever.
void set_step_cap(long long cap);
long long step_cap();

/// An ideal in a polynomial ring, with a lazily computed reduced Groebner
/// basis. Generators are immutable after construction; the basis cache is
/// filled at most once and shared between copies.
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Poly> gens);

  static Ideal zero(RingPtr ring) { return Ideal(std::move(ring), {}); }
  static Ideal unit(RingPtr ring);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Poly>& gens() const { return gens_; }

  /// The unique reduced, monic, auto-reduced Groebner basis.
  const std::vector<Poly>& groebner() const;

  Poly normal_form(const Poly& f) const;
  bool contains(const Poly& f) const;
  bool contains(const Ideal& other) const;
  bool equals(const Ideal& o) const;

  bool is_zero_ideal() const;
  bool is_unit_ideal() const;

  Ideal sum(const Ideal& o) const;
  Ideal product(const Ideal& o) const;
  Ideal intersect(const Ideal& o) const;
  Ideal colon(const Poly& f) const;
  Ideal colon(const Ideal& J) const;
  Ideal power(long long n) const;
  Ideal bracket_power(int e) const;

  Ideal multiply_poly(const Poly& f) const;

  /// Display form using the reduced basis.
  std::string str() const;

 private:
  struct Cache;
  RingPtr ring_;
  std::vector<Poly> gens_;
  std::shared_ptr<Cache> cache_;
};

/// Reduced Groebner basis of the given generators (stateless entry point).
std::vector<Poly> groebner_basis(const RingPtr& ring, std::vector<Poly> gens);

/// Normal form against an explicit reduced (or at least autoreduced) basis.
Poly normal_form_against(const Poly& f, const std::vector<Poly>& basis);

/// Build the elimination extension of `ring`: fresh senior variables in a
/// leading block. Returned ring uses a block order, aux block first.
RingPtr elimination_ring(const RingPtr& ring, const std::vector<std::string>& aux);

}  // namespace charp
