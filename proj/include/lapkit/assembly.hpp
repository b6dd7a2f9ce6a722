#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "lapkit/config.hpp"
#include "lapkit/mesh.hpp"
#include "lapkit/sparse.hpp"

namespace lapkit {

/// How Neumann and Symmetry rows are written.
enum class NeumannMode {
  /// Off-diagonals zeroed except a_ij = -a_ii toward the normal interior neighbour.
  Crude,
  /// Full stencil kept; the fictitious outside neighbour is mirrored onto the
  /// normal interior neighbour, so transverse (shear) couplings survive.
  ShearRetaining,
};

struct AssemblyOptions {
  bool allow_degenerate = false;
  NeumannMode neumann = NeumannMode::Crude;
  bool normalize = true;
};

/// L phi = b on a lattice.
struct LinearSystem {
  SparseMatrixCSR matrix;
  std::vector<double> rhs;
  /// Factor the matrix and rhs were divided by; 1 before normalization.
  double scale = 1.0;
  bool degenerate = false;
  Lattice lattice;
  std::vector<std::string> warnings;

  Index size() const noexcept { return matrix.nrows; }
};

/// Node-centred finite-volume Laplacian with positive diagonal.
///
/// Every node first receives a full stencil: across an interior face the
/// coupling is A_f / |x_j - x_i|, with A_f the product of the transverse
/// control-volume widths. Beyond a Repeat end the neighbour wraps to the
/// opposite end with that end's cell spacing; beyond any other end a
/// fictitious neighbour sits at the spacing of the next interior cell and
/// contributes to the diagonal only. Boundary rows are then overwritten
/// (Dirichlet > Neumann > Symmetry at edges and corners), keeping the
/// diagonal. Interior rows carry rhs = -f V_i.
LinearSystem assemble(const Lattice& lattice, const CaseConfig& config, const AssemblyOptions& options = {});

/// Convenience: meshes, lattice and system for a case.
LinearSystem assemble_case(const CaseConfig& config, const AssemblyOptions& options = {});

/// Rewrites one boundary row keeping a_ii:
///   Dirichlet  a_ii phi_i = a_ii * value
///   Neumann    a_ii (phi_i - phi_j) = a_ii * h * value   (value = outward normal gradient)
///   Symmetry   Neumann with value 0
/// Repeat ends have no boundary row and are left untouched.
/// Throws InternalNode if `node` is not on a non-periodic lattice boundary.
void apply_boundary_row(LinearSystem& system, Index node, BoundaryKind kind, double value, Index normal_neighbor);

/// Replaces the row at lattice position `degfix` by a homogeneous Dirichlet row.
void fix_degeneracy(LinearSystem& system, std::array<int, 3> degfix);

/// Divides matrix and rhs by max |L_ij|; scale accumulates the factor.
void normalize(LinearSystem& system);

/// True when no end of any direction is Dirichlet.
bool is_degenerate_case(const CaseConfig& config);

/// L = I (x) Lxx + Lyy (x) I for two operators, and the analogous three-term
/// sum for three; x varies fastest.
SparseMatrixCSR kronecker_sum(std::span<const SparseMatrixCSR> operators);

/// Unnormalized 1D operator of one direction, boundary rows included.
SparseMatrixCSR direction_operator(const MeshSpec& spec, NeumannMode mode = NeumannMode::Crude);

/// Rows of A and B that differ anywhere by more than tol.
std::vector<Index> diff_rows(const SparseMatrixCSR& a, const SparseMatrixCSR& b, double tol = 1e-12);

}  // namespace lapkit
