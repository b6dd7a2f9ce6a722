#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lapkit/pauli.hpp"
#include "lapkit/sparse.hpp"

namespace lapkit {

struct FableStats {
  int n = 0;
  std::int64_t num_rotations = 0;
  double normalized_count = 0.0;
  /// Ancilla plus row and column registers.
  int total_qubits = 0;
  double tolerance = kDefaultTolerance;
};

/// theta[i * 2^n + j] = 2 acos(A_ij), row-major. Throws EntryOutOfRange when
/// |A_ij| > 1 + 1e-12.
std::vector<double> matrix_to_angles(const SparseMatrixCSR& a);

/// In place: theta_hat = 4^-n P_G H theta, with theta_hat[k] = (H theta)[k ^ (k >> 1)].
void gray_walsh_transform(std::vector<double>& theta);
/// Inverse of gray_walsh_transform.
void inverse_gray_walsh_transform(std::vector<double>& theta_hat);

/// Unnormalized in-place Walsh-Hadamard butterfly; length must be a power of two.
void walsh_hadamard(std::span<double> v);

FableStats fable_stats(const SparseMatrixCSR& a, double tol = kDefaultTolerance);
/// Same count, also returning the transformed angles.
FableStats fable_stats(const SparseMatrixCSR& a, double tol, std::vector<double>& theta_hat);

}  // namespace lapkit
