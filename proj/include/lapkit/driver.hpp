#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lapkit/assembly.hpp"
#include "lapkit/config.hpp"
#include "lapkit/pauli.hpp"
#include "lapkit/reorder.hpp"
#include "lapkit/report.hpp"

namespace lapkit {

struct PipelineOptions {
  bool allow_degenerate = false;
  bool reorder = false;
  bool eigen = false;
  bool solve = true;
  bool pauli = false;
  bool fable = false;
  bool kron_compare = false;
  bool keep_angles = false;
  double tol = kDefaultTolerance;
  NeumannMode neumann = NeumannMode::Crude;
};

struct PipelineResult {
  CaseConfig config;
  /// Original ordering, normalized.
  LinearSystem system;
  std::optional<PermutationPair> perm;
  /// Present with `reorder`.
  std::optional<LinearSystem> reordered;
  /// Solution in the ordering of the written system.
  std::optional<std::vector<double>> solution;
  std::optional<PauliDecomposition> pauli;
  std::optional<PauliDecomposition> pauli_reordered;
  /// Transformed angles of the written system, with `keep_angles`.
  std::vector<double> angles;
  StatsInput stats;

  const LinearSystem& output_system() const { return reordered ? *reordered : system; }
};

/// assemble -> reorder -> kappa -> solve -> encoders. With `reorder`, the
/// encoders run on both orderings; top-level stats describe the original.
PipelineResult run_pipeline(const CaseConfig& config, const PipelineOptions& options);

/// Compares the direct assembly with the Kronecker sum of the 1D operators,
/// both scaled to max |entry| = 1.
nlohmann::ordered_json kron_compare(const CaseConfig& config, bool allow_degenerate, NeumannMode mode);

std::string usage_text();

/// Command-line entry point. Files are written under `out_dir`.
int run(std::span<const std::string> args, const std::filesystem::path& out_dir, std::ostream& out,
        std::ostream& err);

struct CatalogOptions {
  int workers = 1;
  /// Condition numbers are computed only up to this N.
  Index kappa_limit = 1024;
  double tol = kDefaultTolerance;
};

/// Runs every *.xml case in `dir` (and its degenerate variant when one
/// exists) and writes `summary.csv` under `out_dir`. Returns the number of
/// failed cases.
int run_catalog(const std::filesystem::path& dir, const std::filesystem::path& out_dir, const CatalogOptions& options,
                std::ostream& log);

}  // namespace lapkit
