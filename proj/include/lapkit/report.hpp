#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lapkit/fable.hpp"
#include "lapkit/pauli.hpp"
#include "lapkit/sparse.hpp"

namespace lapkit {

enum class FileKind : std::uint32_t { Matrix = 0, Vector = 1, Permutation = 2 };

/// Little-endian "LQF1" container.
void write_matrix(const SparseMatrixCSR& m, const std::filesystem::path& path);
SparseMatrixCSR read_matrix(const std::filesystem::path& path);
void write_vector(std::span<const double> v, const std::filesystem::path& path);
std::vector<double> read_vector(const std::filesystem::path& path);
void write_permutation(std::span<const Index> pi, const std::filesystem::path& path);
std::vector<Index> read_permutation(const std::filesystem::path& path);
/// Raw little-endian f64 values, no header.
void write_raw_doubles(std::span<const double> v, const std::filesystem::path& path);

/// In-memory encodings used by the writers above.
std::string encode_matrix(const SparseMatrixCSR& m);
std::string encode_vector(std::span<const double> v);
std::string encode_permutation(std::span<const Index> pi);
SparseMatrixCSR decode_matrix(const std::string& bytes);
std::vector<double> decode_vector(const std::string& bytes);
std::vector<Index> decode_permutation(const std::string& bytes);

/// case, case_d, case_r or case_d_r.
std::string output_stem(const std::string& case_name, bool degenerate_mode, bool reordered);

struct EncoderReport {
  std::optional<PrepSelectStats> prep_select;
  double prep_select_seconds = 0.0;
  std::optional<FableStats> fable;
  double fable_seconds = 0.0;
};

struct StatsInput {
  std::string case_name;
  int dimension = 1;
  Index n = 0;
  Index nnz = 0;
  bool degenerate = false;
  double scale = 1.0;
  std::optional<double> kappa;
  std::optional<double> kappa_eig;
  EncoderReport encoders;
  /// Encoder results of the shell-reordered system, when requested.
  std::optional<EncoderReport> reordered;
  std::optional<std::string> solution_file;
  std::optional<double> residual;
  std::vector<std::pair<std::string, double>> timings;
  std::optional<nlohmann::ordered_json> kron_compare;
  std::vector<std::string> warnings;
};

nlohmann::ordered_json emit_stats(const StatsInput& in);
void write_text(const std::string& text, const std::filesystem::path& path);

enum class SvgPane { Both, Values, Sparsity };
/// Each nonzero is a filled unit cell on an nrows x ncols grid. Values are
/// coloured by sign and magnitude; the sparsity pane is monochrome.
std::string sparsity_svg(const SparseMatrixCSR& m, SvgPane pane = SvgPane::Sparsity);
void emit_sparsity_svg(const SparseMatrixCSR& m, const std::filesystem::path& path, SvgPane pane = SvgPane::Sparsity);

struct PlotPoint {
  std::string label;
  double x = 0.0;
  double y = 0.0;
};
/// `label,x,y` header then one row per point.
std::string plot_csv(std::span<const PlotPoint> series);
void emit_plot_csv(std::span<const PlotPoint> series, const std::filesystem::path& path);

}  // namespace lapkit
