#include "charp/linalg.hpp"

#include "charp/error.hpp"

namespace charp {

void LinearSystem::add_term(int block, int unknown, const Poly& coef) {
  check(unknown >= 0 && unknown < cols_, Errc::Internal, "unknown index out of range");
  for (const auto& t : coef.terms()) {
    auto& row = rows_[{block, t.m}];
    row[unknown] = F_.add(row.count(unknown) ? row[unknown] : 0, t.c);
    if (row[unknown] == 0) row.erase(unknown);
  }
}

void LinearSystem::set_rhs(int block, const Poly& rhs) {
  for (const auto& t : rhs.terms()) {
    auto key = RowKey{block, t.m};
    rhs_[key] = F_.add(rhs_.count(key) ? rhs_[key] : 0, t.c);
  }
}

std::vector<std::vector<uint32_t>> LinearSystem::dense() const {
  // Union of keys from coefficient rows and rhs rows.
  std::map<RowKey, std::map<int, uint32_t>> all = rows_;
  for (const auto& [k, v] : rhs_) all[k];  // ensure presence
  std::vector<std::vector<uint32_t>> M;
  M.reserve(all.size());
  for (const auto& [k, row] : all) {
    std::vector<uint32_t> r(cols_ + 1, 0);
    for (const auto& [j, c] : row) r[j] = c;
    auto it = rhs_.find(k);
    if (it != rhs_.end()) r[cols_] = it->second;
    M.push_back(std::move(r));
  }
  return M;
}

namespace {

// Row-reduce in place; returns pivot column per row.
std::vector<int> rref(std::vector<std::vector<uint32_t>>& M, int cols, const FieldCtx& F) {
  std::vector<int> pivots;
  size_t row = 0;
  for (int col = 0; col < cols && row < M.size(); ++col) {
    size_t sel = row;
    while (sel < M.size() && M[sel][col] == 0) ++sel;
    if (sel == M.size()) continue;
    std::swap(M[row], M[sel]);
    uint32_t inv = F.inv(M[row][col]);
    for (auto& v : M[row]) v = F.mul(v, inv);
    for (size_t r = 0; r < M.size(); ++r) {
      if (r == row || M[r][col] == 0) continue;
      uint32_t f = M[r][col];
      for (size_t c = 0; c < M[r].size(); ++c) M[r][c] = F.sub(M[r][c], F.mul(f, M[row][c]));
    }
    pivots.push_back(col);
    ++row;
  }
  M.resize(row);
  return pivots;
}

}  // namespace

std::optional<std::vector<uint32_t>> LinearSystem::solve() const {
  auto M = dense();
  auto pivots = rref(M, cols_ + 1, F_);
  // Inconsistent if some pivot lands in the rhs column.
  for (size_t r = 0; r < pivots.size(); ++r)
    if (pivots[r] == cols_) return std::nullopt;
  std::vector<uint32_t> x(cols_, 0);
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = M[r][cols_];
  return x;
}

std::vector<std::vector<uint32_t>> LinearSystem::nullspace() const {
  auto M = dense();
  for (auto& row : M) row[cols_] = 0;
  auto pivots = rref(M, cols_, F_);
  std::vector<bool> is_pivot(cols_, false);
  for (int p : pivots)
    if (p < cols_) is_pivot[p] = true;
  std::vector<std::vector<uint32_t>> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<uint32_t> v(cols_, 0);
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) {
      if (pivots[r] < cols_) v[pivots[r]] = F_.neg(M[r][free]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace charp
