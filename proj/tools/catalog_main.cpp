#include <CLI11.hpp>
#include <iostream>
#include <thread>

#include "lapkit/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Run every case of a catalog directory and write summary.csv"};
  std::string dir = "cases";
  std::string out = "catalog_out";
  lapkit::CatalogOptions opts;
  opts.workers = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  app.add_option("dir", dir, "directory of case files")->check(CLI::ExistingDirectory);
  app.add_option("-o,--out", out, "output directory");
  app.add_option("-w,--workers", opts.workers, "parallel cases")->check(CLI::PositiveNumber);
  app.add_option("--kappa-limit", opts.kappa_limit, "largest N for condition numbers");
  app.add_option("--tol", opts.tol, "encoder tolerance")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  const int failed = lapkit::run_catalog(dir, out, opts, std::cout);
  if (failed > 0) std::cerr << failed << " case(s) failed\n";
  return failed > 0 ? 1 : 0;
}
