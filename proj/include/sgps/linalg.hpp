#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sgps/numeric.hpp"

namespace sgps {

using SparseVec = std::map<std::size_t, Rational>;

/// Reduced row echelon form over a coefficient field; rows are sparse.
struct RowEchelon {
  std::vector<SparseVec> rows;
  std::vector<std::size_t> pivots;  // pivots[i] is the leading column of rows[i]
};

inline RowEchelon row_reduce(std::vector<SparseVec> rows, const CoefficientField& f) {
  for (auto& r : rows) {
    for (auto it = r.begin(); it != r.end();) {
      it->second = f.normalize(it->second);
      it = it->second == 0 ? r.erase(it) : std::next(it);
    }
  }
  std::vector<bool> used(rows.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> pivot_rows;  // (row, column)
  // Columns are visited in increasing order; the pivot row is the first unused row hitting it.
  std::set<std::size_t> columns;
  for (const auto& r : rows)
    for (const auto& [c, v] : r) columns.insert(c);
  for (std::size_t col : columns) {
    std::size_t pivot = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (used[i]) continue;
      auto it = rows[i].find(col);
      if (it != rows[i].end()) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows.size()) continue;
    used[pivot] = true;
    Rational inv = f.inv(rows[pivot].at(col));
    for (auto& [c, v] : rows[pivot]) v = f.mul(v, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == pivot) continue;
      auto it = rows[i].find(col);
      if (it == rows[i].end()) continue;
      Rational factor = it->second;
      for (const auto& [c, v] : rows[pivot]) {
        Rational nv = f.sub(rows[i][c], f.mul(factor, v));
        if (nv == 0) rows[i].erase(c);
        else rows[i][c] = nv;
      }
    }
    pivot_rows.emplace_back(pivot, col);
  }
  RowEchelon out;
  for (const auto& [row, col] : pivot_rows) {
    out.rows.push_back(std::move(rows[row]));
    out.pivots.push_back(col);
  }
  return out;
}

/// Basis of {v : rows * v = 0} in columns [0, ncols), one vector per free column.
inline std::vector<SparseVec> kernel_basis(const std::vector<SparseVec>& rows, std::size_t ncols,
                                           const CoefficientField& f) {
  auto ech = row_reduce(rows, f);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<SparseVec> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    SparseVec v;
    v[free] = 1;
    for (std::size_t i = 0; i < ech.rows.size(); ++i) {
      auto it = ech.rows[i].find(free);
      if (it != ech.rows[i].end()) v[ech.pivots[i]] = f.neg(it->second);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One solution of rows * v = rhs (free variables set to zero), or nullopt.
inline std::optional<SparseVec> solve_linear(std::vector<SparseVec> rows, const std::vector<Rational>& rhs,
                                             std::size_t ncols, const CoefficientField& f) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rhs[i] != 0) rows[i][ncols] = rhs[i];
  auto ech = row_reduce(std::move(rows), f);
  SparseVec sol;
  for (std::size_t i = 0; i < ech.rows.size(); ++i) {
    if (ech.pivots[i] == ncols) return std::nullopt;  // 0 = nonzero
    auto it = ech.rows[i].find(ncols);
    if (it != ech.rows[i].end()) sol[ech.pivots[i]] = it->second;
  }
  return sol;
}

}  // namespace sgps
