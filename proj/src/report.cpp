#include "lapkit/report.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lapkit/error.hpp"

namespace lapkit {

namespace {

constexpr char kMagic[4] = {'L', 'Q', 'F', '1'};

class Writer {
 public:
  explicit Writer(FileKind kind) {
    buf_.append(kMagic, 4);
    u32(static_cast<std::uint32_t>(kind));
  }
  void u32(std::uint32_t v) {
    for (int b = 0; b < 4; ++b) buf_.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
  }
  void u64(std::uint64_t v) {
    for (int b = 0; b < 8; ++b) buf_.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  std::string take() { return std::move(buf_); }

 private:
  std::string buf_;
};

class Reader {
 public:
  Reader(const std::string& bytes, FileKind expected) : bytes_(bytes) {
    if (bytes_.size() < 8 || std::memcmp(bytes_.data(), kMagic, 4) != 0) {
      throw Error(ErrorCode::CorruptHeader, "missing LQF1 magic");
    }
    pos_ = 4;
    const auto kind = u32();
    if (kind > 2) throw Error(ErrorCode::CorruptHeader, "unknown payload kind " + std::to_string(kind));
    if (kind != static_cast<std::uint32_t>(expected)) {
      throw Error(ErrorCode::KindMismatch, "payload kind " + std::to_string(kind) + ", expected " +
                                               std::to_string(static_cast<std::uint32_t>(expected)));
    }
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + b])) << (8 * b);
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + b])) << (8 * b);
    pos_ += 8;
    return v;
  }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  double f64() { return std::bit_cast<double>(u64()); }
  /// Element count that must still fit in the remaining payload.
  std::uint64_t count(std::uint64_t width) {
    const auto n = u64();
    if (n > (bytes_.size() - pos_) / width) throw Error(ErrorCode::TruncatedPayload, "payload shorter than declared");
    return n;
  }
  void finish() const {
    if (pos_ != bytes_.size()) throw Error(ErrorCode::CorruptHeader, "trailing bytes after payload");
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw Error(ErrorCode::TruncatedPayload, "payload ends early");
  }
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& bytes, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

nlohmann::ordered_json encoder_json(const EncoderReport& r) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  if (r.prep_select) {
    const auto& p = *r.prep_select;
    j["prep_select"] = {{"pauli_strings", p.num_strings},   {"hermitized", p.hermitized},
                        {"system_qubits", p.system_qubits}, {"select_qubits", p.select_qubits},
                        {"total_qubits", p.total_qubits},   {"normalized_count", p.normalized_count},
                        {"seconds", r.prep_select_seconds}};
  }
  if (r.fable) {
    const auto& f = *r.fable;
    j["fable"] = {{"rotations", f.num_rotations},
                  {"n", f.n},
                  {"total_qubits", f.total_qubits},
                  {"normalized_count", f.normalized_count},
                  {"tolerance", f.tolerance},
                  {"flattening", "row-major"},
                  {"seconds", r.fable_seconds}};
  }
  return j;
}

}  // namespace

std::string encode_matrix(const SparseMatrixCSR& m) {
  Writer w(FileKind::Matrix);
  w.u64(m.nrows);
  w.u64(m.ncols);
  w.u64(m.nnz());
  for (Index p : m.row_ptr) w.i64(p);
  for (Index c : m.col_idx) w.i64(c);
  for (double v : m.values) w.f64(v);
  return w.take();
}

std::string encode_vector(std::span<const double> v) {
  Writer w(FileKind::Vector);
  w.u64(v.size());
  for (double x : v) w.f64(x);
  return w.take();
}

std::string encode_permutation(std::span<const Index> pi) {
  Writer w(FileKind::Permutation);
  w.u64(pi.size());
  for (Index p : pi) w.i64(p);
  return w.take();
}

SparseMatrixCSR decode_matrix(const std::string& bytes) {
  Reader r(bytes, FileKind::Matrix);
  SparseMatrixCSR m;
  const auto nrows = r.u64();
  const auto ncols = r.u64();
  const auto nnz = r.u64();
  if (nrows > bytes.size() / 8 || nnz > bytes.size() / 8) throw Error(ErrorCode::TruncatedPayload, "payload shorter than declared");
  m.nrows = static_cast<Index>(nrows);
  m.ncols = static_cast<Index>(ncols);
  m.row_ptr.resize(nrows + 1);
  for (auto& p : m.row_ptr) p = r.i64();
  m.col_idx.resize(nnz);
  for (auto& c : m.col_idx) c = r.i64();
  m.values.resize(nnz);
  for (auto& v : m.values) v = r.f64();
  r.finish();
  try {
    m.check();
  } catch (const Error& e) {
    throw Error(ErrorCode::CorruptHeader, e.what());
  }
  return m;
}

std::vector<double> decode_vector(const std::string& bytes) {
  Reader r(bytes, FileKind::Vector);
  std::vector<double> v(r.count(8));
  for (auto& x : v) x = r.f64();
  r.finish();
  return v;
}

std::vector<Index> decode_permutation(const std::string& bytes) {
  Reader r(bytes, FileKind::Permutation);
  std::vector<Index> v(r.count(8));
  for (auto& x : v) x = r.i64();
  r.finish();
  return v;
}

void write_matrix(const SparseMatrixCSR& m, const std::filesystem::path& path) { write_file(encode_matrix(m), path); }
SparseMatrixCSR read_matrix(const std::filesystem::path& path) { return decode_matrix(read_file(path)); }
void write_vector(std::span<const double> v, const std::filesystem::path& path) { write_file(encode_vector(v), path); }
std::vector<double> read_vector(const std::filesystem::path& path) { return decode_vector(read_file(path)); }
void write_permutation(std::span<const Index> pi, const std::filesystem::path& path) {
  write_file(encode_permutation(pi), path);
}
std::vector<Index> read_permutation(const std::filesystem::path& path) { return decode_permutation(read_file(path)); }

void write_raw_doubles(std::span<const double> v, const std::filesystem::path& path) {
  std::string bytes;
  bytes.reserve(v.size() * 8);
  for (double x : v) {
    const auto u = std::bit_cast<std::uint64_t>(x);
    for (int b = 0; b < 8; ++b) bytes.push_back(static_cast<char>((u >> (8 * b)) & 0xFF));
  }
  write_file(bytes, path);
}

void write_text(const std::string& text, const std::filesystem::path& path) { write_file(text, path); }

std::string output_stem(const std::string& case_name, bool degenerate_mode, bool reordered) {
  std::string stem = case_name;
  if (degenerate_mode) stem += "_d";
  if (reordered) stem += "_r";
  return stem;
}

nlohmann::ordered_json emit_stats(const StatsInput& in) {
  nlohmann::ordered_json j;
  j["case"] = in.case_name;
  j["dimension"] = in.dimension;
  j["N"] = in.n;
  j["nnz"] = in.nnz;
  j["degenerate"] = in.degenerate;
  j["scale"] = in.scale;
  if (in.kappa) j["kappa"] = *in.kappa;
  if (in.kappa_eig) j["kappa_eig"] = *in.kappa_eig;
  const auto encoders = encoder_json(in.encoders);
  for (const auto& [k, v] : encoders.items()) j[k] = v;
  if (in.reordered) j["reordered"] = encoder_json(*in.reordered);
  if (in.solution_file) {
    j["solution"] = {{"file", *in.solution_file}};
    if (in.residual) j["solution"]["residual_inf"] = *in.residual;
  }
  if (in.kron_compare) j["kron_compare"] = *in.kron_compare;
  auto& t = j["timings"] = nlohmann::ordered_json::object();
  for (const auto& [name, secs] : in.timings) t[name] = secs;
  if (!in.warnings.empty()) j["warnings"] = in.warnings;
  return j;
}

std::string sparsity_svg(const SparseMatrixCSR& m, SvgPane pane) {
  const bool both = pane == SvgPane::Both;
  const Index gap = both ? std::max<Index>(2, m.ncols / 10) : 0;
  const Index width = both ? 2 * m.ncols + gap : m.ncols;
  const double peak = m.max_abs();
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 %lld %lld\" shape-rendering=\"crispEdges\">\n",
                static_cast<long long>(width), static_cast<long long>(m.nrows));
  out += buf;
  auto pane_rects = [&](Index x0, bool values) {
    std::snprintf(buf, sizeof buf, "<g id=\"%s\">\n", values ? "values" : "sparsity");
    out += buf;
    for (Index i = 0; i < m.nrows; ++i) {
      for (Index k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
        std::string fill = "#000000";
        if (values) {
          const double t = peak > 0.0 ? std::abs(m.values[k]) / peak : 0.0;
          const int shade = static_cast<int>(std::lround(230.0 * (1.0 - t)));
          std::snprintf(buf, sizeof buf, m.values[k] >= 0.0 ? "#ff%02x%02x" : "#%02x%02xff", shade, shade);
          fill = buf;
        }
        std::snprintf(buf, sizeof buf, "<rect x=\"%lld\" y=\"%lld\" width=\"1\" height=\"1\" fill=\"%s\"/>\n",
                      static_cast<long long>(x0 + m.col_idx[k]), static_cast<long long>(i), fill.c_str());
        out += buf;
      }
    }
    out += "</g>\n";
  };
  if (pane != SvgPane::Sparsity) pane_rects(0, true);
  if (pane != SvgPane::Values) pane_rects(both ? m.ncols + gap : 0, false);
  out += "</svg>\n";
  return out;
}

void emit_sparsity_svg(const SparseMatrixCSR& m, const std::filesystem::path& path, SvgPane pane) {
  write_file(sparsity_svg(m, pane), path);
}

std::string plot_csv(std::span<const PlotPoint> series) {
  std::string out = "label,x,y\n";
  char buf[96];
  for (const auto& p : series) {
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", p.x, p.y);
    out += p.label;
    out += buf;
  }
  return out;
}

void emit_plot_csv(std::span<const PlotPoint> series, const std::filesystem::path& path) {
  write_file(plot_csv(series), path);
}

}  // namespace lapkit
