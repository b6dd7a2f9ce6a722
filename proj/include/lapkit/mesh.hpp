#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lapkit/config.hpp"

namespace lapkit {

using Index = std::int64_t;

/// Solution of the clustering equations for one direction.
///   C = d (r^(nc-1) - 1) / (r - 1)      (C = (nc-1) d when r = 1)
///   L = (nu - 1) D + sides * C
///   D = r^(nc-1) d
struct ClusterSolution {
  double d = 0.0;   ///< near-wall spacing
  double D = 0.0;   ///< spacing in the uniform region
  double C = 0.0;   ///< width of each clustered region
  int nu = 0;       ///< points in the uniform region
};

/// Closed-form solve of the clustering equations. `nc` of 0 or 1 means no
/// clustered region. Throws DegenerateGeometry when nu < 2.
ClusterSolution solve_cluster(double length, int ntotal, int nclust, double ratio, int sides);

struct Mesh1D {
  std::vector<double> coords;
  MeshSpec spec;

  int size() const noexcept { return static_cast<int>(coords.size()); }
  double spacing(int cell) const { return coords[cell + 1] - coords[cell]; }
};

/// Coordinates from the spacing sequence d, rd, ..., D (nu-1 times), ..., rd, d.
/// Accumulates from 0 and snaps the last coordinate to L.
Mesh1D generate_mesh(const MeshSpec& spec);

/// Cartesian product of 1-3 meshes; x varies fastest in the linear index.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(std::vector<Mesh1D> meshes);

  int dimension() const noexcept { return static_cast<int>(meshes_.size()); }
  const Mesh1D& mesh(int axis) const { return meshes_.at(axis); }
  const std::vector<Mesh1D>& meshes() const noexcept { return meshes_; }
  int extent(int axis) const { return meshes_.at(axis).size(); }
  std::array<int, 3> dims() const noexcept { return dims_; }
  Index size() const noexcept { return size_; }

  Index index(std::array<int, 3> ijk) const noexcept {
    return ijk[0] + static_cast<Index>(dims_[0]) * (ijk[1] + static_cast<Index>(dims_[1]) * ijk[2]);
  }
  std::array<int, 3> coords_of(Index linear) const noexcept {
    std::array<int, 3> ijk{};
    ijk[0] = static_cast<int>(linear % dims_[0]);
    linear /= dims_[0];
    ijk[1] = static_cast<int>(linear % dims_[1]);
    ijk[2] = static_cast<int>(linear / dims_[1]);
    return ijk;
  }

 private:
  std::vector<Mesh1D> meshes_;
  std::array<int, 3> dims_{1, 1, 1};
  Index size_ = 0;
};

/// Orders meshes x, y, z. Throws DuplicateDirection on a repeated axis.
Lattice build_lattice(std::vector<Mesh1D> meshes);

/// Meshes for every direction of a case, combined into a lattice.
Lattice lattice_for(const CaseConfig& config);

}  // namespace lapkit
