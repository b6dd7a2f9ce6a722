#include "lapkit/reorder.hpp"

#include <algorithm>

#include "lapkit/error.hpp"

namespace lapkit {

SparseMatrixCSR PermutationPair::P() const {
  std::vector<Triplet> t;
  t.reserve(pi.size());
  for (Index i = 0; i < size(); ++i) t.push_back({pi[i], i, 1.0});
  return from_triplets(size(), size(), std::move(t));
}

SparseMatrixCSR PermutationPair::Q() const { return transpose(P()); }

std::vector<Index> PermutationPair::inverse() const {
  std::vector<Index> inv(pi.size());
  for (Index i = 0; i < size(); ++i) inv[pi[i]] = i;
  return inv;
}

bool PermutationPair::is_bijection() const {
  std::vector<bool> seen(pi.size(), false);
  for (Index p : pi) {
    if (p < 0 || p >= size() || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

PermutationPair shell_order(std::array<int, 3> dims, int dimension) {
  for (int a = dimension; a < 3; ++a) dims[a] = 1;
  const Index n = static_cast<Index>(dims[0]) * dims[1] * dims[2];
  auto index = [&](std::array<int, 3> c) { return c[0] + static_cast<Index>(dims[0]) * (c[1] + dims[1] * c[2]); };
  auto shell_of = [](std::array<int, 3> c) { return std::max({c[0], c[1], c[2]}); };

  PermutationPair perm;
  perm.pi.assign(n, -1);
  Index rank = 0;
  const int shells = std::max({dims[0], dims[1], dims[2]});
  std::vector<std::array<int, 3>> members;
  for (int s = 0; s < shells; ++s) {
    members.clear();
    for (int k = 0; k < dims[2]; ++k) {
      for (int j = 0; j < dims[1]; ++j) {
        for (int i = 0; i < dims[0]; ++i) {
          if (shell_of({i, j, k}) == s) members.push_back({i, j, k});
        }
      }
    }
    std::size_t next_start = 0;
    std::size_t remaining = members.size();
    while (remaining > 0) {
      while (perm.pi[index(members[next_start])] >= 0) ++next_start;
      auto pos = members[next_start];
      perm.pi[index(pos)] = rank++;
      --remaining;
      int axis = 0;
      while (remaining > 0) {
        bool moved = false;
        for (int t = 0; t < dimension && !moved; ++t) {
          const int a = (axis + t) % dimension;
          for (int step : {1, -1}) {
            auto cand = pos;
            cand[a] += step;
            if (cand[a] < 0 || cand[a] >= dims[a] || shell_of(cand) != s) continue;
            if (perm.pi[index(cand)] >= 0) continue;
            pos = cand;
            perm.pi[index(pos)] = rank++;
            --remaining;
            axis = (a + 1) % dimension;
            moved = true;
            break;
          }
        }
        if (!moved) break;
      }
    }
  }
  return perm;
}

PermutationPair shell_order(const Lattice& lattice) { return shell_order(lattice.dims(), lattice.dimension()); }

SparseMatrixCSR permute_matrix(const SparseMatrixCSR& m, const PermutationPair& perm) {
  if (!m.square() || m.nrows != perm.size()) throw Error(ErrorCode::SizeMismatch, "permutation and matrix sizes differ");
  std::vector<Triplet> t;
  t.reserve(m.nnz());
  for (Index i = 0; i < m.nrows; ++i) {
    for (Index k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) t.push_back({perm.pi[i], perm.pi[m.col_idx[k]], m.values[k]});
  }
  return from_triplets(m.nrows, m.ncols, std::move(t));
}

std::vector<double> permute_vector(const PermutationPair& perm, std::span<const double> v) {
  if (static_cast<Index>(v.size()) != perm.size()) throw Error(ErrorCode::SizeMismatch, "permutation and vector sizes differ");
  std::vector<double> out(v.size());
  for (Index i = 0; i < perm.size(); ++i) out[perm.pi[i]] = v[i];
  return out;
}

LinearSystem permute_system(const LinearSystem& system, const PermutationPair& perm) {
  LinearSystem out = system;
  out.matrix = permute_matrix(system.matrix, perm);
  out.rhs = permute_vector(perm, system.rhs);
  return out;
}

std::vector<double> recover_solution(const PermutationPair& perm, std::span<const double> phi_reordered) {
  if (static_cast<Index>(phi_reordered.size()) != perm.size()) {
    throw Error(ErrorCode::SizeMismatch, "permutation and solution sizes differ");
  }
  std::vector<double> phi(phi_reordered.size());
  for (Index i = 0; i < perm.size(); ++i) phi[i] = phi_reordered[perm.pi[i]];
  return phi;
}

}  // namespace lapkit
