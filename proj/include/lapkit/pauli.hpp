#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "lapkit/sparse.hpp"

namespace lapkit {

inline constexpr double kDefaultTolerance = 1e-9;

struct PauliTerm {
  /// Leftmost letter acts on the most significant qubit.
  std::string string;
  std::complex<double> coefficient;
};

struct PauliDecomposition {
  int n_qubits = 0;
  std::vector<PauliTerm> terms;
  double tolerance = kDefaultTolerance;

  std::size_t size() const noexcept { return terms.size(); }
};

struct HermitizeResult {
  SparseMatrixCSR matrix;
  bool added_qubit = false;
};

struct PrepSelectStats {
  std::int64_t num_strings = 0;
  bool hermitized = false;
  int system_qubits = 0;
  int select_qubits = 0;
  int total_qubits = 0;
  double normalized_count = 0.0;
};

/// log2(n) for a power of two; throws NonPowerOfTwo otherwise.
int qubits_for(Index n);

/// Symmetric input (|A - A^T| <= 1e-12) is returned unchanged; otherwise
/// [[0, A], [A^T, 0]].
HermitizeResult hermitize(const SparseMatrixCSR& a);

/// c_s = tr(P_s^dagger A) / 2^n for every string with |c_s| > tol.
/// Entries are sliced by x-mask (i xor j); each slice is a Walsh-Hadamard
/// transform over the z-part, with phase i^popcount(x & z).
PauliDecomposition decompose(const SparseMatrixCSR& a, double tol = kDefaultTolerance);

/// <row| sum_s c_s P_s |col>.
std::complex<double> reconstruct_entry(const PauliDecomposition& d, Index row, Index col);
/// Dense row-major reconstruction; intended for n <= 12.
std::vector<std::complex<double>> reconstruct_dense(const PauliDecomposition& d);

/// Dense 2^n x 2^n matrix of one string, row-major.
std::vector<std::complex<double>> pauli_matrix(const std::string& string);

/// Stats for `original` given the decomposition of its Hermitized form.
/// The embedding qubit is always counted in system_qubits.
PrepSelectStats prep_select_stats(const SparseMatrixCSR& original, const PauliDecomposition& d, bool hermitized);

/// One `<string> <coefficient>` line per term.
std::string to_text(const PauliDecomposition& d);

}  // namespace lapkit
