#include "lca/linalg.hpp"

#include <stdexcept>

namespace lca {

void axpy(SparseVector& dst, const Rational& scale, const SparseVector& src) {
  if (is_zero(scale)) return;
  for (const auto& [col, value] : src) {
    auto [it, inserted] = dst.try_emplace(col, 0);
    it->second += scale * value;
    if (is_zero(it->second)) dst.erase(it);
  }
}

Rational dot(const SparseVector& a, const SparseVector& b) {
  Rational total(0);
  const SparseVector& small = a.size() <= b.size() ? a : b;
  const SparseVector& large = a.size() <= b.size() ? b : a;
  for (const auto& [col, value] : small) {
    auto it = large.find(col);
    if (it != large.end()) total += value * it->second;
  }
  return total;
}

SparseVector EchelonBasis::reduce(SparseVector v) const {
  // Rows are zero in every other pivot column, so one pass over the pivots
  // present in v clears all of them.
  for (const auto& [pivot, row] : rows_) {
    auto it = v.find(pivot);
    if (it == v.end()) continue;
    const Rational factor = -it->second;
    axpy(v, factor, row);
  }
  return v;
}

bool EchelonBasis::insert(SparseVector v) {
  for (const auto& [col, value] : v)
    if (col >= columns_) throw std::out_of_range("row entry beyond column count");
  v = reduce(std::move(v));
  if (v.empty()) return false;

  const std::size_t pivot = v.begin()->first;
  const Rational inverse = 1 / v.begin()->second;
  for (auto& [col, value] : v) value *= inverse;

  for (auto& [other_pivot, row] : rows_) {
    auto it = row.find(pivot);
    if (it == row.end()) continue;
    const Rational factor = -it->second;
    axpy(row, factor, v);
  }
  rows_.emplace(pivot, std::move(v));
  return true;
}

std::vector<SparseVector> EchelonBasis::nullspace() const {
  std::vector<SparseVector> basis;
  for (std::size_t free = 0; free < columns_; ++free) {
    if (rows_.count(free) != 0) continue;
    SparseVector x;
    x.emplace(free, 1);
    for (const auto& [pivot, row] : rows_) {
      auto it = row.find(free);
      if (it != row.end()) x.emplace(pivot, -it->second);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<SparseVector> nullspace(const std::vector<SparseVector>& rows, std::size_t columns) {
  EchelonBasis echelon(columns);
  for (const auto& row : rows) echelon.insert(row);
  return echelon.nullspace();
}

}  // namespace lca
