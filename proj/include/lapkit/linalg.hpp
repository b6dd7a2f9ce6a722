#pragma once

#include <span>
#include <vector>

#include "lapkit/assembly.hpp"
#include "lapkit/sparse.hpp"

namespace lapkit {

/// Largest N accepted by the dense spectral routines.
inline constexpr Index kDenseLimit = 8192;

/// Sparse LU with iterative refinement until ||L phi - b||_inf <= 1e-10 ||b||_inf.
std::vector<double> solve(const LinearSystem& system);
std::vector<double> solve(const SparseMatrixCSR& matrix, std::span<const double> rhs);

/// sigma_max / sigma_min of the dense matrix.
double condition_number(const SparseMatrixCSR& matrix);
double condition_number(const LinearSystem& system);

/// max|lambda| / min|lambda| over the complex spectrum.
double eigen_condition_number(const SparseMatrixCSR& matrix);

double residual_inf(const SparseMatrixCSR& matrix, std::span<const double> phi, std::span<const double> rhs);

}  // namespace lapkit
