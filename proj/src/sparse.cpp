#include "lapkit/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lapkit/error.hpp"

namespace lapkit {

double SparseMatrixCSR::at(Index i, Index j) const {
  const auto first = col_idx.begin() + row_ptr[i];
  const auto last = col_idx.begin() + row_ptr[i + 1];
  const auto it = std::lower_bound(first, last, j);
  return (it != last && *it == j) ? values[it - col_idx.begin()] : 0.0;
}

double SparseMatrixCSR::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> SparseMatrixCSR::multiply(std::span<const double> x) const {
  if (static_cast<Index>(x.size()) != ncols) throw Error(ErrorCode::SizeMismatch, "matrix-vector size mismatch");
  std::vector<double> y(nrows, 0.0);
  for (Index i = 0; i < nrows; ++i) {
    double acc = 0.0;
    for (Index k = row_ptr[i]; k < row_ptr[i + 1]; ++k) acc += values[k] * x[col_idx[k]];
    y[i] = acc;
  }
  return y;
}

void SparseMatrixCSR::check() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidValue, "CSR: " + what); };
  if (nrows < 0 || ncols < 0) fail("negative shape");
  if (static_cast<Index>(row_ptr.size()) != nrows + 1) fail("row_ptr length");
  if (row_ptr.front() != 0 || row_ptr.back() != nnz()) fail("row_ptr bounds");
  if (col_idx.size() != values.size()) fail("col_idx/values length");
  for (Index i = 0; i < nrows; ++i) {
    if (row_ptr[i + 1] < row_ptr[i]) fail("row_ptr not monotone");
    for (Index k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      if (col_idx[k] < 0 || col_idx[k] >= ncols) fail("column out of range");
      if (k > row_ptr[i] && col_idx[k] <= col_idx[k - 1]) fail("columns not strictly increasing");
      if (values[k] == 0.0) fail("explicit zero");
    }
  }
}

SparseMatrixCSR from_triplets(Index nrows, Index ncols, std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrixCSR m;
  m.nrows = nrows;
  m.ncols = ncols;
  m.row_ptr.assign(nrows + 1, 0);
  std::size_t k = 0;
  while (k < triplets.size()) {
    const Index r = triplets[k].row;
    const Index c = triplets[k].col;
    if (r < 0 || r >= nrows || c < 0 || c >= ncols) throw Error(ErrorCode::IndexOutOfRange, "triplet outside matrix");
    double sum = 0.0;
    for (; k < triplets.size() && triplets[k].row == r && triplets[k].col == c; ++k) sum += triplets[k].value;
    if (sum != 0.0) {
      m.col_idx.push_back(c);
      m.values.push_back(sum);
      ++m.row_ptr[r + 1];
    }
  }
  for (Index i = 0; i < nrows; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
  return m;
}

SparseMatrixCSR identity_matrix(Index n) {
  SparseMatrixCSR m;
  m.nrows = m.ncols = n;
  m.row_ptr.resize(n + 1);
  m.col_idx.resize(n);
  m.values.assign(n, 1.0);
  for (Index i = 0; i <= n; ++i) m.row_ptr[i] = i;
  for (Index i = 0; i < n; ++i) m.col_idx[i] = i;
  return m;
}

SparseMatrixCSR transpose(const SparseMatrixCSR& a) {
  SparseMatrixCSR t;
  t.nrows = a.ncols;
  t.ncols = a.nrows;
  t.row_ptr.assign(t.nrows + 1, 0);
  for (Index c : a.col_idx) ++t.row_ptr[c + 1];
  for (Index i = 0; i < t.nrows; ++i) t.row_ptr[i + 1] += t.row_ptr[i];
  t.col_idx.resize(a.nnz());
  t.values.resize(a.nnz());
  std::vector<Index> next(t.row_ptr.begin(), t.row_ptr.end() - 1);
  for (Index i = 0; i < a.nrows; ++i) {
    for (Index k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const Index slot = next[a.col_idx[k]]++;
      t.col_idx[slot] = i;
      t.values[slot] = a.values[k];
    }
  }
  return t;
}

SparseMatrixCSR scaled(const SparseMatrixCSR& a, double factor) {
  SparseMatrixCSR s = a;
  for (double& v : s.values) v *= factor;
  return s;
}

bool is_symmetric(const SparseMatrixCSR& a, double tol) {
  if (!a.square()) return false;
  for (Index i = 0; i < a.nrows; ++i) {
    for (Index k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      if (std::abs(a.values[k] - a.at(a.col_idx[k], i)) > tol) return false;
    }
  }
  return true;
}

SparseMatrixCSR kron(const SparseMatrixCSR& a, const SparseMatrixCSR& b) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(a.nnz() * b.nnz()));
  for (Index i = 0; i < a.nrows; ++i) {
    for (Index ka = a.row_ptr[i]; ka < a.row_ptr[i + 1]; ++ka) {
      for (Index p = 0; p < b.nrows; ++p) {
        for (Index kb = b.row_ptr[p]; kb < b.row_ptr[p + 1]; ++kb) {
          t.push_back({i * b.nrows + p, a.col_idx[ka] * b.ncols + b.col_idx[kb], a.values[ka] * b.values[kb]});
        }
      }
    }
  }
  return from_triplets(a.nrows * b.nrows, a.ncols * b.ncols, std::move(t));
}

SparseMatrixCSR add(const SparseMatrixCSR& a, const SparseMatrixCSR& b) {
  if (a.nrows != b.nrows || a.ncols != b.ncols) throw Error(ErrorCode::ShapeMismatch, "matrix sum shapes differ");
  std::vector<Triplet> t;
  t.reserve(a.nnz() + b.nnz());
  for (const auto* m : {&a, &b}) {
    for (Index i = 0; i < m->nrows; ++i) {
      for (Index k = m->row_ptr[i]; k < m->row_ptr[i + 1]; ++k) t.push_back({i, m->col_idx[k], m->values[k]});
    }
  }
  return from_triplets(a.nrows, a.ncols, std::move(t));
}

std::vector<double> to_dense(const SparseMatrixCSR& a) {
  std::vector<double> d(static_cast<std::size_t>(a.nrows * a.ncols), 0.0);
  for (Index i = 0; i < a.nrows; ++i) {
    for (Index k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) d[i * a.ncols + a.col_idx[k]] = a.values[k];
  }
  return d;
}

}  // namespace lapkit
