#include "lapkit/fable.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "lapkit/error.hpp"

namespace lapkit {

namespace {

void check_length(std::size_t len) {
  // 4^n: a power of two with an even exponent.
  if (len == 0 || !std::has_single_bit(len) || (std::countr_zero(len) & 1) != 0) {
    throw Error(ErrorCode::BadLength, "angle vector length " + std::to_string(len) + " is not a power of four");
  }
}

}  // namespace

std::vector<double> matrix_to_angles(const SparseMatrixCSR& a) {
  if (!a.square()) throw Error(ErrorCode::NonSquare, "FABLE needs a square matrix");
  qubits_for(a.nrows);
  const Index dim = a.nrows;
  std::vector<double> theta(static_cast<std::size_t>(dim * dim), std::numbers::pi);
  for (Index i = 0; i < dim; ++i) {
    for (Index k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const double v = a.values[k];
      if (std::abs(v) > 1.0 + 1e-12) {
        throw Error(ErrorCode::EntryOutOfRange, "entry " + std::to_string(v) + " exceeds 1 in magnitude");
      }
      theta[i * dim + a.col_idx[k]] = 2.0 * std::acos(std::clamp(v, -1.0, 1.0));
    }
  }
  return theta;
}

void walsh_hadamard(std::span<double> v) {
  const std::size_t n = v.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      double* lo = v.data() + i;
      double* hi = lo + h;
      for (std::size_t j = 0; j < h; ++j) {
        const double a = lo[j];
        const double b = hi[j];
        lo[j] = a + b;
        hi[j] = a - b;
      }
    }
  }
}

void gray_walsh_transform(std::vector<double>& theta) {
  check_length(theta.size());
  walsh_hadamard(theta);
  const double scale = 1.0 / static_cast<double>(theta.size());
  std::vector<double> out(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) out[k] = theta[k ^ (k >> 1)] * scale;
  theta.swap(out);
}

void inverse_gray_walsh_transform(std::vector<double>& theta_hat) {
  check_length(theta_hat.size());
  std::vector<double> h(theta_hat.size());
  for (std::size_t k = 0; k < theta_hat.size(); ++k) h[k ^ (k >> 1)] = theta_hat[k];
  walsh_hadamard(h);
  theta_hat.swap(h);
}

FableStats fable_stats(const SparseMatrixCSR& a, double tol, std::vector<double>& theta_hat) {
  theta_hat = matrix_to_angles(a);
  gray_walsh_transform(theta_hat);
  FableStats s;
  s.n = qubits_for(a.nrows);
  s.tolerance = tol;
  s.num_rotations = std::count_if(theta_hat.begin(), theta_hat.end(), [tol](double t) { return std::abs(t) > tol; });
  s.normalized_count = static_cast<double>(s.num_rotations) / static_cast<double>(theta_hat.size());
  s.total_qubits = 2 * s.n + 1;
  return s;
}

FableStats fable_stats(const SparseMatrixCSR& a, double tol) {
  std::vector<double> theta_hat;
  return fable_stats(a, tol, theta_hat);
}

}  // namespace lapkit
