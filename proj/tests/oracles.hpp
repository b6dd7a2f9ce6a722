#pragma once

// Independent reference computations shared by the unit and acceptance tests.

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "lapkit/pauli.hpp"
#include "lapkit/sparse.hpp"

namespace oracle {

using cd = std::complex<double>;
using Dense = std::vector<cd>;

inline Dense single(char p) {
  const cd i{0, 1};
  switch (p) {
    case 'X': return {0, 1, 1, 0};
    case 'Y': return {0, -i, i, 0};
    case 'Z': return {1, 0, 0, -1};
    default: return {1, 0, 0, 1};
  }
}

inline Dense kron_dense(const Dense& a, std::size_t na, const Dense& b, std::size_t nb) {
  Dense out(na * nb * na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out[(i * nb + k) * (na * nb) + j * nb + l] = a[i * na + j] * b[k * nb + l];
  return out;
}

/// Explicit tensor product, leftmost letter most significant.
inline Dense string_matrix(const std::string& s) {
  Dense m = {1};
  std::size_t n = 1;
  for (char c : s) {
    m = kron_dense(m, n, single(c), 2);
    n *= 2;
  }
  return m;
}

inline std::vector<std::string> all_strings(int n) {
  std::vector<std::string> out = {""};
  for (int q = 0; q < n; ++q) {
    std::vector<std::string> next;
    for (const auto& s : out)
      for (char c : {'I', 'X', 'Y', 'Z'}) next.push_back(s + c);
    out = std::move(next);
  }
  return out;
}

/// tr(P^dagger A) / 2^n for every string.
inline std::map<std::string, cd> brute_force(const lapkit::SparseMatrixCSR& a) {
  const int n = lapkit::qubits_for(a.nrows);
  const auto dense = lapkit::to_dense(a);
  const std::size_t dim = a.nrows;
  std::map<std::string, cd> out;
  for (const auto& s : all_strings(n)) {
    const auto p = string_matrix(s);
    cd acc = 0;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) acc += std::conj(p[r * dim + c]) * dense[r * dim + c];
    out[s] = acc / static_cast<double>(dim);
  }
  return out;
}

/// Largest |c_brute - c_decomposed| over all 4^n strings.
inline double brute_force_gap(const lapkit::SparseMatrixCSR& a, const lapkit::PauliDecomposition& d) {
  std::map<std::string, cd> got;
  for (const auto& t : d.terms) got[t.string] = t.coefficient;
  double worst = 0.0;
  for (const auto& [s, c] : brute_force(a)) {
    const auto it = got.find(s);
    worst = std::max(worst, std::abs((it == got.end() ? cd{0, 0} : it->second) - c));
  }
  return worst;
}

inline double reconstruction_gap(const lapkit::SparseMatrixCSR& a, const lapkit::PauliDecomposition& d) {
  const auto rec = lapkit::reconstruct_dense(d);
  const auto dense = lapkit::to_dense(a);
  double worst = 0.0;
  for (std::size_t k = 0; k < dense.size(); ++k) worst = std::max(worst, std::abs(rec[k] - dense[k]));
  return worst;
}

}  // namespace oracle
