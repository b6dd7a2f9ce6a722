#include "lapkit/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#include "lapkit/error.hpp"

namespace lapkit {

namespace {

Eigen::SparseMatrix<double> to_eigen(const SparseMatrixCSR& m) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(m.nnz());
  for (Index i = 0; i < m.nrows; ++i) {
    for (Index k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) t.emplace_back(i, m.col_idx[k], m.values[k]);
  }
  Eigen::SparseMatrix<double> s(m.nrows, m.ncols);
  s.setFromTriplets(t.begin(), t.end());
  s.makeCompressed();
  return s;
}

Eigen::MatrixXd to_eigen_dense(const SparseMatrixCSR& m) {
  if (!m.square()) throw Error(ErrorCode::NonSquare, "spectral routines need a square matrix");
  if (m.nrows > kDenseLimit) {
    throw Error(ErrorCode::TooLarge, "N = " + std::to_string(m.nrows) + " exceeds the dense limit " +
                                         std::to_string(kDenseLimit));
  }
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m.nrows, m.ncols);
  for (Index i = 0; i < m.nrows; ++i) {
    for (Index k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) d(i, m.col_idx[k]) = m.values[k];
  }
  return d;
}

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double residual_inf(const SparseMatrixCSR& matrix, std::span<const double> phi, std::span<const double> rhs) {
  const auto lphi = matrix.multiply(phi);
  double r = 0.0;
  for (std::size_t i = 0; i < lphi.size(); ++i) r = std::max(r, std::abs(lphi[i] - rhs[i]));
  return r;
}

std::vector<double> solve(const SparseMatrixCSR& matrix, std::span<const double> rhs) {
  if (!matrix.square()) throw Error(ErrorCode::NonSquare, "solve needs a square matrix");
  if (static_cast<Index>(rhs.size()) != matrix.nrows) throw Error(ErrorCode::SizeMismatch, "rhs length differs from N");
  const auto a = to_eigen(matrix);
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw Error(ErrorCode::SingularFactorization, lu.lastErrorMessage());
  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), rhs.size());
  Eigen::VectorXd x = lu.solve(b);
  if (lu.info() != Eigen::Success || !x.allFinite()) throw Error(ErrorCode::SingularFactorization, "triangular solve failed");

  const double target = 1e-10 * std::max(inf_norm(rhs), 1e-300);
  for (int it = 0; it < 5; ++it) {
    const Eigen::VectorXd r = b - a * x;
    if (r.lpNorm<Eigen::Infinity>() <= target) break;
    x += lu.solve(r);
  }
  return {x.data(), x.data() + x.size()};
}

std::vector<double> solve(const LinearSystem& system) {
  if (system.degenerate) throw Error(ErrorCode::DegenerateUnsolvable, "cannot solve a degenerate Poisson equation");
  return solve(system.matrix, system.rhs);
}

double condition_number(const SparseMatrixCSR& matrix) {
  const auto d = to_eigen_dense(matrix);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(d);
  const auto& s = svd.singularValues();
  const double smax = s.maxCoeff();
  const double smin = s.minCoeff();
  if (!(smin > smax * 1e-14)) throw Error(ErrorCode::ZeroEigenvalue, "matrix is numerically singular");
  return smax / smin;
}

double condition_number(const LinearSystem& system) { return condition_number(system.matrix); }

double eigen_condition_number(const SparseMatrixCSR& matrix) {
  const auto d = to_eigen_dense(matrix);
  Eigen::EigenSolver<Eigen::MatrixXd> es(d, false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::SingularFactorization, "eigenvalue iteration did not converge");
  const Eigen::VectorXd mags = es.eigenvalues().cwiseAbs();
  const double lmax = mags.maxCoeff();
  const double lmin = mags.minCoeff();
  if (!(lmin > lmax * 1e-14)) throw Error(ErrorCode::ZeroEigenvalue, "zero eigenvalue; missed degeneracy?");
  return lmax / lmin;
}

}  // namespace lapkit
