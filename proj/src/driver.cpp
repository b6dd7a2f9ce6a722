#include "lapkit/driver.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "lapkit/error.hpp"
#include "lapkit/fable.hpp"
#include "lapkit/linalg.hpp"

namespace lapkit {

namespace {

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void run_encoders(const LinearSystem& sys, const PipelineOptions& opt, EncoderReport& report,
                  std::optional<PauliDecomposition>& pauli, std::vector<double>* angles) {
  Stopwatch clock;
  if (opt.pauli) {
    const auto h = hermitize(sys.matrix);
    pauli = decompose(h.matrix, opt.tol);
    report.prep_select = prep_select_stats(sys.matrix, *pauli, h.added_qubit);
    report.prep_select_seconds = clock.lap();
  }
  if (opt.fable) {
    clock.lap();
    std::vector<double> theta_hat;
    report.fable = fable_stats(sys.matrix, opt.tol, theta_hat);
    report.fable_seconds = clock.lap();
    if (angles) *angles = std::move(theta_hat);
  }
}

/// Index along `axis` whose coordinate is closest to the mid-point.
int mid_index(const Mesh1D& mesh) {
  const double mid = 0.5 * mesh.spec.length;
  int best = 0;
  for (int i = 1; i < mesh.size(); ++i) {
    if (std::abs(mesh.coords[i] - mid) < std::abs(mesh.coords[best] - mid)) best = i;
  }
  return best;
}

std::string solution_csv(const Lattice& lat, std::span<const double> phi, int cut_axis) {
  const int dim = lat.dimension();
  std::string out;
  const char* heads[] = {"x,phi\n", "x,y,phi\n", "x,y,z,phi\n"};
  out += heads[dim - 1];
  const int cut = dim == 3 ? mid_index(lat.mesh(cut_axis)) : -1;
  char buf[64];
  for (Index n = 0; n < lat.size(); ++n) {
    const auto ijk = lat.coords_of(n);
    if (dim == 3 && ijk[cut_axis] != cut) continue;
    for (int a = 0; a < dim; ++a) {
      std::snprintf(buf, sizeof buf, "%.17g,", lat.mesh(a).coords[ijk[a]]);
      out += buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g\n", phi[n]);
    out += buf;
  }
  return out;
}

std::string mesh_csv(const Lattice& lat) {
  std::string out = "direction,index,coordinate\n";
  char buf[96];
  for (int a = 0; a < lat.dimension(); ++a) {
    const auto& m = lat.mesh(a);
    for (int i = 0; i < m.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%c,%d,%.17g\n", axis_label(m.spec.direction), i, m.coords[i]);
      out += buf;
    }
  }
  return out;
}

}  // namespace

nlohmann::ordered_json kron_compare(const CaseConfig& config, bool allow_degenerate, NeumannMode mode) {
  AssemblyOptions opts;
  opts.allow_degenerate = allow_degenerate;
  opts.neumann = mode;
  const auto direct = assemble_case(config, opts).matrix;
  std::vector<SparseMatrixCSR> ops;
  for (const auto& spec : config.meshes) ops.push_back(direction_operator(spec, mode));
  auto sum = kronecker_sum(ops);
  sum = scaled(sum, 1.0 / sum.max_abs());
  const auto rows = diff_rows(direct, sum);
  double worst = 0.0;
  for (Index i = 0; i < direct.nrows; ++i) {
    for (Index k = direct.row_ptr[i]; k < direct.row_ptr[i + 1]; ++k) {
      worst = std::max(worst, std::abs(direct.values[k] - sum.at(i, direct.col_idx[k])));
    }
    for (Index k = sum.row_ptr[i]; k < sum.row_ptr[i + 1]; ++k) {
      worst = std::max(worst, std::abs(sum.values[k] - direct.at(i, sum.col_idx[k])));
    }
  }
  nlohmann::ordered_json j;
  j["differing_rows"] = rows.size();
  j["rows"] = rows;
  j["max_abs_diff"] = worst;
  return j;
}

PipelineResult run_pipeline(const CaseConfig& config, const PipelineOptions& options) {
  PipelineResult r;
  r.config = config;
  auto& st = r.stats;
  Stopwatch clock;

  AssemblyOptions aopt;
  aopt.allow_degenerate = options.allow_degenerate;
  aopt.neumann = options.neumann;
  r.system = assemble_case(config, aopt);
  st.timings.emplace_back("assemble", clock.lap());
  st.case_name = config.name;
  st.dimension = config.dimension;
  st.n = r.system.size();
  st.nnz = r.system.matrix.nnz();
  st.degenerate = r.system.degenerate;
  st.scale = r.system.scale;
  st.warnings = r.system.warnings;

  if (options.reorder) {
    r.perm = shell_order(r.system.lattice);
    r.reordered = permute_system(r.system, *r.perm);
    st.timings.emplace_back("reorder", clock.lap());
  }
  if (options.eigen) {
    st.kappa = condition_number(r.system.matrix);
    st.kappa_eig = eigen_condition_number(r.system.matrix);
    st.timings.emplace_back("kappa", clock.lap());
  }
  if (options.solve && !r.system.degenerate) {
    const auto& sys = r.output_system();
    r.solution = solve(sys);
    st.residual = residual_inf(sys.matrix, *r.solution, sys.rhs);
    st.timings.emplace_back("solve", clock.lap());
  }
  if (options.kron_compare) {
    st.kron_compare = kron_compare(config, options.allow_degenerate, options.neumann);
    st.timings.emplace_back("kron_compare", clock.lap());
  }
  if (options.pauli || options.fable) {
    run_encoders(r.system, options, st.encoders, r.pauli, options.keep_angles && !r.reordered ? &r.angles : nullptr);
    if (options.pauli) st.timings.emplace_back("pauli", st.encoders.prep_select_seconds);
    if (options.fable) st.timings.emplace_back("fable", st.encoders.fable_seconds);
    if (r.reordered) {
      st.reordered.emplace();
      run_encoders(*r.reordered, options, *st.reordered, r.pauli_reordered, options.keep_angles ? &r.angles : nullptr);
      if (options.pauli) st.timings.emplace_back("pauli_reordered", st.reordered->prep_select_seconds);
      if (options.fable) st.timings.emplace_back("fable_reordered", st.reordered->fable_seconds);
    }
  }
  return r;
}

std::string usage_text() {
  return "lapkit -i <input file> {-c <x,y,z>} {-d} {-e} {-h} {-j} {-m} {-r} {-s}\n"
         "       {--pauli} {--fable} {--tol <real>} {--shear-retaining} {--kron-compare} {--dump-angles}\n"
         "\n"
         "     -i {name of input file}\n"
         "     -c {x,y,z} cut slice of 3D solution to be written, default = x\n"
         "     -d allow degenerate matrices, default = False\n"
         "     -e calculate eigenvalues and condition number, default = False\n"
         "     -h help menu\n"
         "     -j split matrix and solution outputs into separate files, default = combined\n"
         "     -m write matrix values and sparsity pattern (SVG), default = False\n"
         "     -r reorder matrix and RHS to use shell ordering of mesh, default = False\n"
         "     -s write solution and mesh (CSV), default = False\n"
         "     --pauli            Prepare-Select Pauli string analysis\n"
         "     --fable            FABLE rotation analysis\n"
         "     --tol <real>       coefficient / angle tolerance, default = 1e-9\n"
         "     --shear-retaining  keep transverse couplings on Neumann/Symmetry rows\n"
         "     --kron-compare     compare against the Kronecker sum of 1D operators\n"
         "     --dump-angles      write the transformed FABLE angles (raw f64)\n";
}

int run(std::span<const std::string> args, const std::filesystem::path& out_dir, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"lapkit"};
  app.set_help_flag();
  std::string input;
  std::string cut = "x";
  bool degenerate = false, eigen = false, help = false, split = false, matrix_plot = false, reorder = false,
       solution_plot = false, pauli = false, fable = false, shear = false, kron = false, dump_angles = false;
  double tol = kDefaultTolerance;
  app.add_option("-i", input, "input file");
  app.add_option("-c", cut, "cut plane")->check(CLI::IsMember({"x", "y", "z"}));
  app.add_flag("-d", degenerate);
  app.add_flag("-e", eigen);
  app.add_flag("-h", help);
  app.add_flag("-j", split);
  app.add_flag("-m", matrix_plot);
  app.add_flag("-r", reorder);
  app.add_flag("-s", solution_plot);
  app.add_flag("--pauli", pauli);
  app.add_flag("--fable", fable);
  app.add_option("--tol", tol)->check(CLI::PositiveNumber);
  app.add_flag("--shear-retaining", shear);
  app.add_flag("--kron-compare", kron);
  app.add_flag("--dump-angles", dump_angles);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << usage_text();
    return 1;
  }
  if (help) {
    out << usage_text();
    return 0;
  }
  if (input.empty()) {
    err << "error: -i <input file> is required\n" << usage_text();
    return 1;
  }

  try {
    const auto config = load_case(input);
    PipelineOptions opt;
    opt.allow_degenerate = degenerate;
    opt.reorder = reorder;
    opt.eigen = eigen;
    opt.pauli = pauli;
    opt.fable = fable;
    opt.kron_compare = kron;
    opt.keep_angles = dump_angles && fable;
    opt.tol = tol;
    opt.neumann = shear ? NeumannMode::ShearRetaining : NeumannMode::Crude;
    auto result = run_pipeline(config, opt);

    const bool degenerate_mode = degenerate && result.system.degenerate;
    const std::string stem = output_stem(config.name, degenerate_mode, reorder);
    std::filesystem::create_directories(out_dir);
    auto file = [&](const std::string& suffix) { return out_dir / (stem + suffix); };
    const auto& sys = result.output_system();

    write_matrix(sys.matrix, file("_mat.bin"));
    write_vector(sys.rhs, file("_rhs.bin"));
    if (result.solution) {
      write_vector(*result.solution, file("_sol.bin"));
      result.stats.solution_file = stem + "_sol.bin";
    }
    if (result.perm) write_permutation(result.perm->pi, file("_ord.bin"));
    const auto* decomposition = result.reordered ? &result.pauli_reordered : &result.pauli;
    if (*decomposition) write_text(to_text(**decomposition), file("_pauli.txt"));
    if (opt.keep_angles) write_raw_doubles(result.angles, file("_angles.bin"));
    if (matrix_plot) {
      if (split) {
        emit_sparsity_svg(sys.matrix, file("_values.svg"), SvgPane::Values);
        emit_sparsity_svg(sys.matrix, file("_sparsity.svg"), SvgPane::Sparsity);
      } else {
        emit_sparsity_svg(sys.matrix, file("_matrix.svg"), SvgPane::Both);
      }
    }
    if (solution_plot) {
      if (split || !result.solution) write_text(mesh_csv(sys.lattice), file("_mesh.csv"));
      if (result.solution) {
        const auto phi = result.perm ? recover_solution(*result.perm, *result.solution) : *result.solution;
        write_text(solution_csv(sys.lattice, phi, cut[0] - 'x'), file("_solution.csv"));
      }
    }
    write_text(emit_stats(result.stats).dump(2) + "\n", file("_stats.json"));
    for (const auto& w : result.stats.warnings) err << "warning: " << w << "\n";
    if (result.system.degenerate) out << config.name << ": degenerate system, no solution written\n";
    out << "wrote " << stem << "_* to " << out_dir.string() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: Io: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int run_catalog(const std::filesystem::path& dir, const std::filesystem::path& out_dir, const CatalogOptions& options,
                std::ostream& log) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(dir)) {
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
      if (e.is_regular_file() && e.path().extension() == ".xml") files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());

  struct Job {
    std::filesystem::path file;
    bool degenerate_mode;
  };
  std::vector<Job> jobs;
  for (const auto& f : files) {
    jobs.push_back({f, false});
    try {
      if (is_degenerate_case(load_case(f.string()))) jobs.push_back({f, true});
    } catch (const Error&) {
    }
  }

  std::vector<std::string> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> failures{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      const auto& job = jobs[k];
      std::string name = job.file.stem().string();
      char buf[512];
      try {
        const auto config = load_case(job.file.string());
        name = output_stem(config.name, job.degenerate_mode, false);
        PipelineOptions opt;
        opt.allow_degenerate = job.degenerate_mode;
        opt.pauli = opt.fable = true;
        opt.tol = options.tol;
        opt.solve = false;
        Index n = 1;
        for (const auto& m : config.meshes) n *= m.ntotal;
        opt.eigen = !job.degenerate_mode && n <= options.kappa_limit;
        const auto r = run_pipeline(config, opt);
        const auto& ps = *r.stats.encoders.prep_select;
        const auto& fb = *r.stats.encoders.fable;
        std::string kappa = r.stats.kappa ? std::to_string(*r.stats.kappa) : "";
        std::snprintf(buf, sizeof buf, "%s,%d,%lld,%lld,%s,%lld,%d,%.6g,%lld,%d,%.6g,%.4f,%.4f,ok", name.c_str(),
                      config.dimension, static_cast<long long>(r.stats.n), static_cast<long long>(r.stats.nnz),
                      kappa.c_str(), static_cast<long long>(ps.num_strings), ps.total_qubits, ps.normalized_count,
                      static_cast<long long>(fb.num_rotations), fb.total_qubits, fb.normalized_count,
                      r.stats.encoders.prep_select_seconds, r.stats.encoders.fable_seconds);
        rows[k] = buf;
      } catch (const std::exception& e) {
        ++failures;
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), ',', ';');
        rows[k] = name + ",,,,,,,,,,,,," + msg;
      }
      std::lock_guard lock(log_mutex);
      log << rows[k] << "\n";
    }
  };
  std::vector<std::thread> pool;
  const int workers = std::max(1, options.workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::string csv =
      "case,dimension,N,nnz,kappa,pauli_strings,ps_total_qubits,ps_normalized,fable_rotations,fable_total_qubits,"
      "fable_normalized,pauli_seconds,fable_seconds,status\n";
  for (const auto& row : rows) csv += row + "\n";
  std::filesystem::create_directories(out_dir);
  write_text(csv, out_dir / "summary.csv");
  return failures;
}

}  // namespace lapkit
