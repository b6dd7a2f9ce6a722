#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lapkit/driver.hpp"
#include "support.hpp"

using namespace lapkit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "lapkit_driver_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Outcome invoke(std::vector<std::string> args, const fs::path& dir) {
  std::ostringstream out, err;
  const int status = run(args, dir, out, err);
  return {status, out.str(), err.str()};
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("help text") {
  const auto r = invoke({"-h"}, fresh_dir("help"));
  CHECK(r.status == 0);
  CHECK(r.out.find("-i {name of input file}") != std::string::npos);
  CHECK(invoke({}, fresh_dir("noargs")).status == 1);
  CHECK(invoke({"-i", "x.xml", "-c", "w"}, fresh_dir("badcut")).status == 1);
}

TEST_CASE("plain 1D run writes matrix, rhs, solution and kappa") {
  const auto dir = fresh_dir("plain");
  const auto r = invoke({"-i", cases_path("l1d_16_dd.xml"), "-e"}, dir);
  REQUIRE(r.status == 0);
  for (const char* f : {"l1d_16_dd_mat.bin", "l1d_16_dd_rhs.bin", "l1d_16_dd_sol.bin", "l1d_16_dd_stats.json"}) {
    CHECK_MESSAGE(fs::exists(dir / f), f);
  }
  const auto j = read_json(dir / "l1d_16_dd_stats.json");
  CHECK(rel_err(j["kappa"].get<double>(), 107.0) <= 0.05);
  CHECK(j.contains("solution"));
  CHECK_FALSE(j.contains("prep_select"));
}

TEST_CASE("degenerate run: _d suffix and no solution") {
  const auto dir = fresh_dir("degenerate");
  const auto r = invoke({"-i", cases_path("l2d_32x32_rrrr.xml"), "-d", "--fable", "--pauli"}, dir);
  REQUIRE(r.status == 0);
  CHECK(fs::exists(dir / "l2d_32x32_rrrr_d_mat.bin"));
  CHECK(fs::exists(dir / "l2d_32x32_rrrr_d_rhs.bin"));
  CHECK(fs::exists(dir / "l2d_32x32_rrrr_d_pauli.txt"));
  CHECK_FALSE(fs::exists(dir / "l2d_32x32_rrrr_d_sol.bin"));
  const auto j = read_json(dir / "l2d_32x32_rrrr_d_stats.json");
  CHECK(j["degenerate"] == true);
  CHECK_FALSE(j.contains("solution"));
  CHECK(j.contains("fable"));
}

TEST_CASE("reordered runs: _r and _d_r suffixes and permutation file") {
  auto dir = fresh_dir("reorder");
  auto r = invoke({"-i", cases_path("l3d_4x8x8_channel.xml"), "-r", "--pauli"}, dir);
  REQUIRE(r.status == 0);
  for (const char* f : {"l3d_4x8x8_channel_r_mat.bin", "l3d_4x8x8_channel_r_ord.bin", "l3d_4x8x8_channel_r_sol.bin",
                        "l3d_4x8x8_channel_r_stats.json"}) {
    CHECK_MESSAGE(fs::exists(dir / f), f);
  }
  const auto j = read_json(dir / "l3d_4x8x8_channel_r_stats.json");
  CHECK(j["prep_select"]["pauli_strings"] == 272);
  CHECK(j["nnz"] == 724);
  CHECK(j["reordered"]["prep_select"]["pauli_strings"].get<int>() > 2720);
  const auto pi = read_permutation(dir / "l3d_4x8x8_channel_r_ord.bin");
  CHECK(pi.size() == 256);

  dir = fresh_dir("reorder_degenerate");
  r = invoke({"-i", cases_path("l2d_8x8_nnnn.xml"), "-r", "-d"}, dir);
  REQUIRE(r.status == 0);
  CHECK(fs::exists(dir / "l2d_8x8_nnnn_d_r_mat.bin"));
  CHECK(fs::exists(dir / "l2d_8x8_nnnn_d_r_ord.bin"));
  CHECK_FALSE(fs::exists(dir / "l2d_8x8_nnnn_d_r_sol.bin"));
}

TEST_CASE("plots, slices, angle dump and kron comparison") {
  const auto dir = fresh_dir("plots");
  const auto r = invoke({"-i", cases_path("l3d_4x8x8_channel.xml"), "-m", "-s", "-c", "y", "--fable", "--dump-angles",
                         "--kron-compare"},
                        dir);
  REQUIRE(r.status == 0);
  CHECK(fs::exists(dir / "l3d_4x8x8_channel_matrix.svg"));
  const auto csv = slurp(dir / "l3d_4x8x8_channel_solution.csv");
  CHECK(csv.rfind("x,y,z,phi\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 4 * 8);
  CHECK(fs::file_size(dir / "l3d_4x8x8_channel_angles.bin") == 8u * 65536u);
  const auto j = read_json(dir / "l3d_4x8x8_channel_stats.json");
  CHECK(j["kron_compare"]["differing_rows"].get<int>() > 0);

  const auto split = fresh_dir("split");
  REQUIRE(invoke({"-i", cases_path("l1d_heat.xml"), "-m", "-s", "-j"}, split).status == 0);
  CHECK(fs::exists(split / "l1d_heat_values.svg"));
  CHECK(fs::exists(split / "l1d_heat_sparsity.svg"));
  CHECK(fs::exists(split / "l1d_heat_mesh.csv"));
  CHECK(fs::exists(split / "l1d_heat_solution.csv"));
}

TEST_CASE("errors exit non-zero with one diagnostic line") {
  const auto dir = fresh_dir("errors");
  auto r = invoke({"-i", (dir / "missing.xml").string()}, dir);
  CHECK(r.status == 2);
  CHECK(r.err.rfind("error: Io:", 0) == 0);
  std::ofstream(dir / "bad.xml") << "<laplace><case name=\"b\" dimension=\"1\" force=\"0\"></case>";
  r = invoke({"-i", (dir / "bad.xml").string()}, dir);
  CHECK(r.status == 2);
  CHECK(r.err.rfind("error: MalformedXml:", 0) == 0);
}

TEST_CASE("runs are deterministic") {
  const auto a = fresh_dir("det_a");
  const auto b = fresh_dir("det_b");
  for (const auto& d : {a, b}) REQUIRE(invoke({"-i", cases_path("l2d_8x16_channel.xml"), "-r", "--pauli"}, d).status == 0);
  for (const char* f : {"l2d_8x16_channel_r_mat.bin", "l2d_8x16_channel_r_rhs.bin", "l2d_8x16_channel_r_sol.bin",
                        "l2d_8x16_channel_r_ord.bin", "l2d_8x16_channel_r_pauli.txt"}) {
    CHECK(slurp(a / f) == slurp(b / f));
  }
}

TEST_CASE("catalog summary") {
  const auto src = fresh_dir("catalog_src");
  for (const char* f : {"l1d_8_dd.xml", "l2d_4x4_rrrr.xml", "l2d_4x8_channel.xml"}) fs::copy_file(cases_path(f), src / f);
  std::ofstream(src / "broken.xml") << "<laplace>";
  const auto out = fresh_dir("catalog_out");
  std::ostringstream log;
  CatalogOptions opts;
  opts.workers = 2;
  CHECK(run_catalog(src, out, opts, log) == 1);
  const auto csv = slurp(out / "summary.csv");
  CHECK(csv.find("l2d_4x4_rrrr_d,2,16,") != std::string::npos);
  CHECK(csv.find("l2d_4x8_channel,2,32,") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 5);

  const auto empty = fresh_dir("catalog_empty");
  CHECK(run_catalog(empty, out, opts, log) == 0);
  const auto header_only = slurp(out / "summary.csv");
  CHECK(std::count(header_only.begin(), header_only.end(), '\n') == 1);
}
