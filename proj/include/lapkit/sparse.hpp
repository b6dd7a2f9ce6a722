#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lapkit {

using Index = std::int64_t;

struct Triplet {
  Index row;
  Index col;
  double value;
};

/// Compressed sparse row matrix. Column indices are strictly increasing
/// within a row and no explicit zeros are stored.
struct SparseMatrixCSR {
  Index nrows = 0;
  Index ncols = 0;
  std::vector<Index> row_ptr{0};
  std::vector<Index> col_idx;
  std::vector<double> values;

  Index nnz() const noexcept { return static_cast<Index>(values.size()); }
  bool square() const noexcept { return nrows == ncols; }

  /// Entry (i, j), zero when not stored.
  double at(Index i, Index j) const;
  double max_abs() const noexcept;
  std::vector<double> multiply(std::span<const double> x) const;

  /// Throws InvalidValue when the structural invariants do not hold.
  void check() const;

  friend bool operator==(const SparseMatrixCSR&, const SparseMatrixCSR&) = default;
};

/// Sums duplicates and drops entries that are exactly zero.
SparseMatrixCSR from_triplets(Index nrows, Index ncols, std::vector<Triplet> triplets);
SparseMatrixCSR identity_matrix(Index n);
SparseMatrixCSR transpose(const SparseMatrixCSR& a);
SparseMatrixCSR scaled(const SparseMatrixCSR& a, double factor);

/// Entrywise |A - A^T| <= tol.
bool is_symmetric(const SparseMatrixCSR& a, double tol = 1e-12);

/// Kronecker product A (x) B.
SparseMatrixCSR kron(const SparseMatrixCSR& a, const SparseMatrixCSR& b);
SparseMatrixCSR add(const SparseMatrixCSR& a, const SparseMatrixCSR& b);

/// Row-major dense copy, nrows * ncols entries.
std::vector<double> to_dense(const SparseMatrixCSR& a);

}  // namespace lapkit
