#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace lapkit {

enum class BoundaryKind { Dirichlet, Neumann, Repeat, Symmetry };

enum class Axis { X = 0, Y = 1, Z = 2 };

char boundary_letter(BoundaryKind kind) noexcept;
BoundaryKind boundary_from_letter(std::string_view letter);
char axis_label(Axis axis) noexcept;

/// Per-direction mesh and boundary description, one `<mesh>` section of the case file.
struct MeshSpec {
  Axis direction = Axis::X;
  double length = 1.0;
  int ntotal = 2;
  int nclust = 0;
  /// Number of clustered ends; 1 clusters the low-coordinate end only.
  int cltype = 2;
  double cratio = 1.0;
  std::array<BoundaryKind, 2> btype{BoundaryKind::Dirichlet, BoundaryKind::Dirichlet};
  std::array<double, 2> bvalue{0.0, 0.0};
  int degfix = 0;

  bool repeating() const noexcept { return btype[0] == BoundaryKind::Repeat; }

  /// Throws InvalidValue when any field invariant is violated.
  void validate() const;

  friend bool operator==(const MeshSpec&, const MeshSpec&) = default;
};

struct CaseConfig {
  std::string name;
  int dimension = 1;
  double force = 0.0;
  std::vector<MeshSpec> meshes;

  void validate() const;

  friend bool operator==(const CaseConfig&, const CaseConfig&) = default;
};

/// Parses the `<laplace>` case document. Only well-formed XML is accepted.
CaseConfig parse_case(const std::string& xml_text);
CaseConfig load_case(const std::string& path);

/// Serializes a case back to the input schema; reals are written with 17
/// significant digits so that parse_case(to_xml(c)) == c.
std::string to_xml(const CaseConfig& config);

}  // namespace lapkit
