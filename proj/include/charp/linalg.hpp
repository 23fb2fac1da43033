#pragma once

#include <map>
#include <optional>
#include <vector>

#include "charp/poly.hpp"

namespace charp {

/// Sparse-to-dense F_p linear system builder. Unknowns are scalars c_k; each
/// equation block is a polynomial identity sum_k c_k * A_{block,k} = rhs_block,
/// expanded monomial-by-monomial into scalar rows.
class LinearSystem {
 public:
  LinearSystem(FieldCtx field, int unknowns) : F_(field), cols_(unknowns) {}

  void add_term(int block, int unknown, const Poly& coef);
  void set_rhs(int block, const Poly& rhs);

  /// Any solution of the inhomogeneous system, or nullopt if inconsistent.
  std::optional<std::vector<uint32_t>> solve() const;

  /// Basis of the nullspace of the homogeneous part (rhs ignored).
  std::vector<std::vector<uint32_t>> nullspace() const;

 private:
  struct RowKey {
    int block;
    Mono m;
    bool operator<(const RowKey& o) const {
      if (block != o.block) return block < o.block;
      return m < o.m;
    }
  };
  std::vector<std::vector<uint32_t>> dense() const;  // rows x (cols+1)
  FieldCtx F_;
  int cols_;
  std::map<RowKey, std::map<int, uint32_t>> rows_;
  std::map<RowKey, uint32_t> rhs_;
};

}  // namespace charp
