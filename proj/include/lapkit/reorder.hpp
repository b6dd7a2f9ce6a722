#pragma once

#include <array>
#include <span>
#include <vector>

#include "lapkit/assembly.hpp"
#include "lapkit/sparse.hpp"

namespace lapkit {

/// Row permutation P (P e_i = e_pi[i]) and column permutation Q = P^T.
struct PermutationPair {
  /// Old linear index -> new linear index.
  std::vector<Index> pi;

  Index size() const noexcept { return static_cast<Index>(pi.size()); }
  SparseMatrixCSR P() const;
  SparseMatrixCSR Q() const;
  /// New index -> old index.
  std::vector<Index> inverse() const;
  bool is_bijection() const;
};

/// Shell ordering. Shell s holds the nodes whose largest coordinate is s.
/// Inside a shell the walk starts at the first unvisited node in
/// coordinate-major order and cycles the axes x, y, z: along the current
/// axis it tries a +1 then a -1 step onto an unvisited node of the shell,
/// falling through to the next axis when neither is possible. When no axis
/// offers a step the walk jumps to the next unvisited node in
/// coordinate-major order.
PermutationPair shell_order(std::array<int, 3> dims, int dimension);
PermutationPair shell_order(const Lattice& lattice);

/// L' = P L Q, b' = P b.
LinearSystem permute_system(const LinearSystem& system, const PermutationPair& perm);
SparseMatrixCSR permute_matrix(const SparseMatrixCSR& m, const PermutationPair& perm);

/// phi[i] = phi'[pi[i]].
std::vector<double> recover_solution(const PermutationPair& perm, std::span<const double> phi_reordered);

/// v'[pi[i]] = v[i].
std::vector<double> permute_vector(const PermutationPair& perm, std::span<const double> v);

}  // namespace lapkit
