#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "lca/rational.hpp"

namespace lca {

/// Column index -> nonzero entry.
using SparseVector = std::map<std::size_t, Rational>;

/// Adds scale·src to dst, dropping entries that cancel.
void axpy(SparseVector& dst, const Rational& scale, const SparseVector& src);

/// Σ_c a[c]·b[c].
Rational dot(const SparseVector& a, const SparseVector& b);

/// Incrementally maintained reduced row echelon form over Q.
///
/// Every stored row has a leading 1 in its pivot column and zeros in all other
/// pivot columns, so the stored form is the unique RREF of the inserted span
/// regardless of insertion order.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t columns) : columns_(columns) {}

  std::size_t columns() const { return columns_; }
  std::size_t rank() const { return rows_.size(); }

  /// Pivot column -> row.
  const std::map<std::size_t, SparseVector>& rows() const { return rows_; }

  /// Remainder of `v` after eliminating every pivot column.
  SparseVector reduce(SparseVector v) const;

  /// Adds `v` to the span. Returns false if it was already in the span.
  bool insert(SparseVector v);

  /// Basis of {x : row·x = 0 for all rows}, one vector per free column,
  /// ordered by free column; the free column carries a 1.
  std::vector<SparseVector> nullspace() const;

 private:
  std::size_t columns_;
  std::map<std::size_t, SparseVector> rows_;
};

/// Nullspace of the system with the given rows.
std::vector<SparseVector> nullspace(const std::vector<SparseVector>& rows, std::size_t columns);

}  // namespace lca
