#include "lapkit/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lapkit/error.hpp"

namespace lapkit {

namespace {

// (r^k - 1) / (r - 1), with the r = 1 limit taken exactly.
double geometric_sum(double r, int k) {
  if (k <= 0) return 0.0;
  if (r == 1.0) return static_cast<double>(k);
  return std::expm1(k * std::log1p(r - 1.0)) / (r - 1.0);
}

}  // namespace

ClusterSolution solve_cluster(double length, int ntotal, int nclust, double ratio, int sides) {
  if (sides != 1 && sides != 2) throw Error(ErrorCode::InvalidValue, "clustering sides must be 1 or 2");
  if (!(ratio >= 1.0)) throw Error(ErrorCode::InvalidValue, "expansion ratio must be >= 1");
  const int nc = std::max(nclust, 1);
  ClusterSolution s;
  s.nu = sides == 2 ? ntotal - 2 * nc + 2 : ntotal - nc + 1;
  if (s.nu < 2) {
    throw Error(ErrorCode::DegenerateGeometry,
                "uniform region has " + std::to_string(s.nu) + " points (ntotal=" + std::to_string(ntotal) +
                    ", nclust=" + std::to_string(nclust) + ")");
  }
  const double growth = std::pow(ratio, nc - 1);
  const double ramp = geometric_sum(ratio, nc - 1);
  s.d = length / ((s.nu - 1) * growth + sides * ramp);
  if (!(s.d > 0.0) || !std::isfinite(s.d)) {
    throw Error(ErrorCode::NonPositiveSpacing, "near-wall spacing is not positive");
  }
  s.D = growth * s.d;
  s.C = ramp * s.d;
  return s;
}

Mesh1D generate_mesh(const MeshSpec& spec) {
  const auto cluster = solve_cluster(spec.length, spec.ntotal, spec.nclust, spec.cratio, spec.cltype);
  const int ramp_cells = std::max(spec.nclust, 1) - 1;

  std::vector<double> spacings;
  spacings.reserve(spec.ntotal - 1);
  double h = cluster.d;
  for (int i = 0; i < ramp_cells; ++i, h *= spec.cratio) spacings.push_back(h);
  for (int i = 0; i < cluster.nu - 1; ++i) spacings.push_back(cluster.D);
  if (spec.cltype == 2) {
    for (int i = ramp_cells - 1; i >= 0; --i) spacings.push_back(spacings[i]);
  }

  Mesh1D mesh;
  mesh.spec = spec;
  mesh.coords.resize(spec.ntotal);
  mesh.coords[0] = 0.0;
  for (int i = 1; i < spec.ntotal; ++i) mesh.coords[i] = mesh.coords[i - 1] + spacings[i - 1];
  mesh.coords.back() = spec.length;
  return mesh;
}

Lattice::Lattice(std::vector<Mesh1D> meshes) : meshes_(std::move(meshes)) {
  size_ = 1;
  for (int a = 0; a < dimension(); ++a) {
    dims_[a] = meshes_[a].size();
    size_ *= dims_[a];
  }
}

Lattice build_lattice(std::vector<Mesh1D> meshes) {
  if (meshes.empty() || meshes.size() > 3) {
    throw Error(ErrorCode::InvalidValue, "a lattice needs 1 to 3 meshes");
  }
  std::stable_sort(meshes.begin(), meshes.end(),
                   [](const Mesh1D& a, const Mesh1D& b) { return a.spec.direction < b.spec.direction; });
  for (std::size_t a = 0; a < meshes.size(); ++a) {
    if (a > 0 && meshes[a].spec.direction == meshes[a - 1].spec.direction) {
      throw Error(ErrorCode::DuplicateDirection,
                  std::string("direction ") + axis_label(meshes[a].spec.direction) + " given twice");
    }
    if (meshes[a].spec.direction != static_cast<Axis>(a)) {
      throw Error(ErrorCode::InvalidValue, "mesh directions must be x[, y[, z]]");
    }
  }
  return Lattice(std::move(meshes));
}

Lattice lattice_for(const CaseConfig& config) {
  std::vector<Mesh1D> meshes;
  for (const auto& spec : config.meshes) meshes.push_back(generate_mesh(spec));
  return build_lattice(std::move(meshes));
}

}  // namespace lapkit
