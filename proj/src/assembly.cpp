#include "lapkit/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "lapkit/error.hpp"

namespace lapkit {

namespace {

using Row = std::vector<std::pair<Index, double>>;

struct AxisGeometry {
  const std::vector<double>* x = nullptr;
  bool periodic = false;
  /// Spacing to the neighbour beyond the low / high end (wrapped or fictitious).
  double outer_lo = 0.0;
  double outer_hi = 0.0;
  std::vector<double> width;
};

AxisGeometry axis_geometry(const Mesh1D& mesh) {
  AxisGeometry g;
  g.x = &mesh.coords;
  g.periodic = mesh.spec.repeating();
  const auto& x = mesh.coords;
  const int n = mesh.size();
  if (g.periodic) {
    g.outer_lo = x[n - 1] - x[n - 2];
    g.outer_hi = x[1] - x[0];
  } else {
    g.outer_lo = n >= 3 ? x[2] - x[1] : x[1] - x[0];
    g.outer_hi = n >= 3 ? x[n - 2] - x[n - 3] : x[n - 1] - x[n - 2];
  }
  g.width.resize(n);
  for (int i = 0; i < n; ++i) {
    const double lo = i > 0 ? x[i] - x[i - 1] : g.outer_lo;
    const double hi = i < n - 1 ? x[i + 1] - x[i] : g.outer_hi;
    g.width[i] = 0.5 * (lo + hi);
  }
  return g;
}

struct BoundaryHit {
  BoundaryKind kind;
  int axis;
  int side;
  double value;
};

int precedence(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::Dirichlet: return 0;
    case BoundaryKind::Neumann: return 1;
    case BoundaryKind::Symmetry: return 2;
    case BoundaryKind::Repeat: return 3;
  }
  return 4;
}

/// Governing boundary of a node; the lowest axis wins ties of equal kind.
std::optional<BoundaryHit> classify(const Lattice& lattice, std::array<int, 3> ijk) {
  std::optional<BoundaryHit> best;
  for (int a = 0; a < lattice.dimension(); ++a) {
    const auto& spec = lattice.mesh(a).spec;
    if (spec.repeating()) continue;
    for (int side = 0; side < 2; ++side) {
      const int end = side == 0 ? 0 : lattice.extent(a) - 1;
      if (ijk[a] != end) continue;
      const auto kind = spec.btype[side];
      if (!best || precedence(kind) < precedence(best->kind)) best = BoundaryHit{kind, a, side, spec.bvalue[side]};
    }
  }
  return best;
}

double diagonal_of(const Row& row, Index node) {
  for (const auto& [c, v] : row) {
    if (c == node) return v;
  }
  return 0.0;
}

void add_to(Row& row, Index col, double v) {
  for (auto& [c, w] : row) {
    if (c == col) {
      w += v;
      return;
    }
  }
  row.emplace_back(col, v);
}

void overwrite_row(Row& row, double& rhs, Index node, BoundaryKind kind, double value, Index neighbor,
                   double spacing) {
  const double diag = diagonal_of(row, node);
  switch (kind) {
    case BoundaryKind::Dirichlet:
      row = {{node, diag}};
      rhs = diag * value;
      break;
    case BoundaryKind::Neumann:
    case BoundaryKind::Symmetry: {
      const double gradient = kind == BoundaryKind::Symmetry ? 0.0 : value;
      row = {{node, diag}, {neighbor, -diag}};
      rhs = diag * spacing * gradient;
      break;
    }
    case BoundaryKind::Repeat:
      break;
  }
}

Row extract_row(const SparseMatrixCSR& m, Index r) {
  Row row;
  for (Index k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k) row.emplace_back(m.col_idx[k], m.values[k]);
  return row;
}

void replace_row(SparseMatrixCSR& m, Index r, Row row) {
  std::sort(row.begin(), row.end());
  std::erase_if(row, [](const auto& e) { return e.second == 0.0; });
  const Index begin = m.row_ptr[r];
  const Index end = m.row_ptr[r + 1];
  const Index delta = static_cast<Index>(row.size()) - (end - begin);
  std::vector<Index> cols;
  std::vector<double> vals;
  for (const auto& [c, v] : row) {
    cols.push_back(c);
    vals.push_back(v);
  }
  m.col_idx.erase(m.col_idx.begin() + begin, m.col_idx.begin() + end);
  m.values.erase(m.values.begin() + begin, m.values.begin() + end);
  m.col_idx.insert(m.col_idx.begin() + begin, cols.begin(), cols.end());
  m.values.insert(m.values.begin() + begin, vals.begin(), vals.end());
  for (Index i = r + 1; i <= m.nrows; ++i) m.row_ptr[i] += delta;
}

}  // namespace

bool is_degenerate_case(const CaseConfig& config) {
  for (const auto& m : config.meshes) {
    for (auto k : m.btype) {
      if (k == BoundaryKind::Dirichlet) return false;
    }
  }
  return true;
}

LinearSystem assemble(const Lattice& lattice, const CaseConfig& config, const AssemblyOptions& options) {
  if (lattice.dimension() != config.dimension) {
    throw Error(ErrorCode::DimensionMismatch, "lattice and case dimensions differ");
  }
  const int dim = lattice.dimension();
  std::vector<AxisGeometry> geom;
  for (int a = 0; a < dim; ++a) geom.push_back(axis_geometry(lattice.mesh(a)));

  LinearSystem sys;
  sys.lattice = lattice;
  const Index n = lattice.size();
  sys.rhs.assign(n, 0.0);
  for (int a = 0; a < dim; ++a) {
    const auto& spec = lattice.mesh(a).spec;
    if (spec.repeating() && spec.cratio > 1.0 && spec.nclust > 1) {
      sys.warnings.push_back(std::string("direction ") + axis_label(spec.direction) +
                             " is Repeat on a clustered mesh; wrap spacing uses the opposite-end cell");
    }
  }

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(n) * (2 * dim + 1));
  Row row;
  for (Index node = 0; node < n; ++node) {
    const auto ijk = lattice.coords_of(node);
    row.clear();
    row.emplace_back(node, 0.0);
    // Coupling to the fictitious node beyond each non-periodic end: [axis][side].
    std::array<std::array<double, 2>, 3> outer{};
    double volume = 1.0;
    for (int a = 0; a < dim; ++a) volume *= geom[a].width[ijk[a]];

    for (int a = 0; a < dim; ++a) {
      const auto& g = geom[a];
      const auto& x = *g.x;
      const int extent = lattice.extent(a);
      double area = 1.0;
      for (int b = 0; b < dim; ++b) {
        if (b != a) area *= geom[b].width[ijk[b]];
      }
      for (int side = 0; side < 2; ++side) {
        const int step = side == 0 ? -1 : 1;
        const int j = ijk[a] + step;
        double h = 0.0;
        int target = j;
        if (j >= 0 && j < extent) {
          h = std::abs(x[j] - x[ijk[a]]);
        } else if (g.periodic) {
          target = (j + extent) % extent;
          h = side == 0 ? g.outer_lo : g.outer_hi;
        } else {
          const double c = area / (side == 0 ? g.outer_lo : g.outer_hi);
          outer[a][side] = c;
          row[0].second += c;
          continue;
        }
        auto nb = ijk;
        nb[a] = target;
        const double c = area / h;
        row[0].second += c;
        add_to(row, lattice.index(nb), -c);
      }
    }
    double rhs = -config.force * volume;

    if (const auto hit = classify(lattice, ijk)) {
      auto inward = ijk;
      inward[hit->axis] += hit->side == 0 ? 1 : -1;
      const Index neighbor = lattice.index(inward);
      const auto& x = *geom[hit->axis].x;
      const double h = std::abs(x[inward[hit->axis]] - x[ijk[hit->axis]]);
      if (hit->kind != BoundaryKind::Dirichlet && options.neumann == NeumannMode::ShearRetaining) {
        // Mirror every fictitious neighbour on a zero/fixed-gradient end onto
        // the interior node across from it.
        for (int a = 0; a < dim; ++a) {
          for (int side = 0; side < 2; ++side) {
            if (outer[a][side] == 0.0) continue;
            auto in = ijk;
            in[a] += side == 0 ? 1 : -1;
            const auto kind = lattice.mesh(a).spec.btype[side];
            const double gradient = kind == BoundaryKind::Neumann ? lattice.mesh(a).spec.bvalue[side] : 0.0;
            const auto& xa = *geom[a].x;
            const double span = (side == 0 ? geom[a].outer_lo : geom[a].outer_hi) + std::abs(xa[in[a]] - xa[ijk[a]]);
            add_to(row, lattice.index(in), -outer[a][side]);
            rhs += outer[a][side] * span * gradient;
          }
        }
      } else {
        overwrite_row(row, rhs, node, hit->kind, hit->value, neighbor, h);
      }
    }
    sys.rhs[node] = rhs;
    for (const auto& [c, v] : row) triplets.push_back({node, c, v});
  }
  sys.matrix = from_triplets(n, n, std::move(triplets));

  sys.degenerate = is_degenerate_case(config);
  if (sys.degenerate && !options.allow_degenerate) {
    std::array<int, 3> fix{0, 0, 0};
    for (int a = 0; a < dim; ++a) fix[a] = config.meshes[a].degfix;
    fix_degeneracy(sys, fix);
  }
  if (options.normalize) normalize(sys);
  return sys;
}

LinearSystem assemble_case(const CaseConfig& config, const AssemblyOptions& options) {
  return assemble(lattice_for(config), config, options);
}

void apply_boundary_row(LinearSystem& system, Index node, BoundaryKind kind, double value, Index normal_neighbor) {
  const auto& lat = system.lattice;
  if (node < 0 || node >= system.size()) throw Error(ErrorCode::IndexOutOfRange, "node outside the lattice");
  if (kind == BoundaryKind::Repeat) return;
  const auto ijk = lat.coords_of(node);
  bool on_boundary = false;
  for (int a = 0; a < lat.dimension(); ++a) {
    if (lat.mesh(a).spec.repeating()) continue;
    if (ijk[a] == 0 || ijk[a] == lat.extent(a) - 1) on_boundary = true;
  }
  if (!on_boundary) throw Error(ErrorCode::InternalNode, "node " + std::to_string(node) + " is not on a boundary");

  double spacing = 0.0;
  if (kind != BoundaryKind::Dirichlet) {
    if (normal_neighbor < 0 || normal_neighbor >= system.size()) {
      throw Error(ErrorCode::IndexOutOfRange, "normal neighbour outside the lattice");
    }
    const auto nb = lat.coords_of(normal_neighbor);
    int axis = -1;
    for (int a = 0; a < lat.dimension(); ++a) {
      if (nb[a] == ijk[a]) continue;
      if (axis >= 0 || std::abs(nb[a] - ijk[a]) != 1) axis = -2;
      if (axis == -1) axis = a;
    }
    if (axis < 0) throw Error(ErrorCode::InvalidValue, "normal neighbour is not adjacent to the node");
    const auto& x = lat.mesh(axis).coords;
    spacing = std::abs(x[nb[axis]] - x[ijk[axis]]);
  }
  Row row = extract_row(system.matrix, node);
  overwrite_row(row, system.rhs[node], node, kind, value, normal_neighbor, spacing);
  replace_row(system.matrix, node, std::move(row));
}

void fix_degeneracy(LinearSystem& system, std::array<int, 3> degfix) {
  if (!system.degenerate) throw Error(ErrorCode::NotDegenerate, "system has no degeneracy to remove");
  const auto& lat = system.lattice;
  for (int a = 0; a < 3; ++a) {
    const int extent = a < lat.dimension() ? lat.extent(a) : 1;
    if (degfix[a] < 0 || degfix[a] >= extent) {
      throw Error(ErrorCode::IndexOutOfRange, "degfix coordinate " + std::to_string(degfix[a]) + " on axis " +
                                                  std::string(1, "xyz"[a]) + " is outside the lattice");
    }
  }
  const Index node = lat.index(degfix);
  Row row = extract_row(system.matrix, node);
  overwrite_row(row, system.rhs[node], node, BoundaryKind::Dirichlet, 0.0, node, 0.0);
  replace_row(system.matrix, node, std::move(row));
  system.degenerate = false;
}

void normalize(LinearSystem& system) {
  const double s = system.matrix.max_abs();
  if (s == 0.0) throw Error(ErrorCode::ZeroMatrix, "cannot normalize a zero matrix");
  for (double& v : system.matrix.values) v /= s;
  for (double& v : system.rhs) v /= s;
  system.scale *= s;
}

SparseMatrixCSR kronecker_sum(std::span<const SparseMatrixCSR> operators) {
  if (operators.empty() || operators.size() > 3) {
    throw Error(ErrorCode::InvalidValue, "kronecker_sum takes 1 to 3 operators");
  }
  for (const auto& op : operators) {
    if (!op.square()) throw Error(ErrorCode::NonSquare, "kronecker_sum operand is not square");
  }
  // Term k: I_(outer) (x) L_k (x) I_(inner), with inner = product of lower axes.
  SparseMatrixCSR total;
  for (std::size_t k = 0; k < operators.size(); ++k) {
    Index inner = 1;
    Index outer = 1;
    for (std::size_t a = 0; a < k; ++a) inner *= operators[a].nrows;
    for (std::size_t a = k + 1; a < operators.size(); ++a) outer *= operators[a].nrows;
    const auto term = kron(identity_matrix(outer), kron(operators[k], identity_matrix(inner)));
    total = k == 0 ? term : add(total, term);
  }
  return total;
}

SparseMatrixCSR direction_operator(const MeshSpec& spec, NeumannMode mode) {
  CaseConfig single;
  single.name = "direction";
  single.dimension = 1;
  single.meshes = {spec};
  single.meshes[0].direction = Axis::X;
  AssemblyOptions opts;
  opts.allow_degenerate = true;
  opts.normalize = false;
  opts.neumann = mode;
  return assemble_case(single, opts).matrix;
}

std::vector<Index> diff_rows(const SparseMatrixCSR& a, const SparseMatrixCSR& b, double tol) {
  if (a.nrows != b.nrows || a.ncols != b.ncols) throw Error(ErrorCode::ShapeMismatch, "diff_rows shapes differ");
  std::vector<Index> rows;
  for (Index i = 0; i < a.nrows; ++i) {
    Index ka = a.row_ptr[i];
    Index kb = b.row_ptr[i];
    const Index ea = a.row_ptr[i + 1];
    const Index eb = b.row_ptr[i + 1];
    bool differs = false;
    while ((ka < ea || kb < eb) && !differs) {
      const Index ca = ka < ea ? a.col_idx[ka] : a.ncols;
      const Index cb = kb < eb ? b.col_idx[kb] : b.ncols;
      double va = 0.0;
      double vb = 0.0;
      if (ca <= cb) va = a.values[ka++];
      if (cb <= ca) vb = b.values[kb++];
      differs = std::abs(va - vb) > tol;
    }
    if (differs) rows.push_back(i);
  }
  return rows;
}

}  // namespace lapkit
