#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

#include "spx/cg_solver.hpp"
#include "spx/comm.hpp"
#include "spx/config.hpp"
#include "spx/error.hpp"
#include "spx/gallery.hpp"
#include "spx/matrix_io.hpp"

namespace spx::cli {

namespace {

struct Options {
  std::string matrix;
  std::string kind = "laplace2d";
  int nx = 4;
  int ny = 4;
  int width = 32;
  long long offset = 0;
  int ranks = 1;
  double tol = 1e-8;
  int max_iters = 500;
  std::string out;
  std::string precond = "none";
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

IndexWidth index_width(const Options& o) { return o.width == 64 ? IndexWidth::I64 : IndexWidth::I32; }

CrsMatrix load_matrix(const Options& o, const Comm& comm) {
  if (!o.matrix.empty()) return read_coordinate_file(o.matrix, comm, index_width(o), o.offset).matrix;
  return generate_crs_problem(GalleryKind::Laplace2D, o.nx, o.ny, index_width(o), o.offset, comm).matrix;
}

void add_grid_options(CLI::App* sub, Options& o) {
  sub->add_option("--kind", o.kind, "Gallery problem")->check(CLI::IsMember({"laplace2d"}));
  sub->add_option("--nx", o.nx, "Grid points in x")->check(CLI::PositiveNumber);
  sub->add_option("--ny", o.ny, "Grid points in y")->check(CLI::PositiveNumber);
}

void add_run_options(CLI::App* sub, Options& o) {
  sub->add_option("--width", o.width, "Global index width")->check(CLI::IsMember({32, 64}));
  sub->add_option("--offset", o.offset, "Added to every global index")->check(CLI::NonNegativeNumber);
  sub->add_option("--ranks", o.ranks, "Simulated ranks")->check(CLI::Range(1, 256));
}

CLI::Option* add_matrix_option(CLI::App* sub, Options& o) {
  auto* opt = sub->add_option("--matrix", o.matrix, "MatrixMarket or triples file");
  for (const char* name : {"--kind", "--nx", "--ny"}) opt->excludes(sub->get_option(name));
  return opt;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Distributed sparse matrix tool", "spx"};
  app.require_subcommand(1);

  auto* gallery = app.add_subcommand("gallery", "Generate a gallery matrix");
  add_grid_options(gallery, o);
  add_run_options(gallery, o);
  gallery->add_option("--out", o.out, "Write the matrix to this file");

  auto* spmv = app.add_subcommand("spmv", "Multiply a matrix by a vector of ones");
  add_grid_options(spmv, o);
  add_run_options(spmv, o);
  add_matrix_option(spmv, o);

  auto* solve = app.add_subcommand("solve", "Solve A x = A * ones with conjugate gradients");
  add_grid_options(solve, o);
  add_run_options(solve, o);
  add_matrix_option(solve, o);
  solve->add_option("--tol", o.tol, "Relative residual tolerance")->check(CLI::PositiveNumber);
  solve->add_option("--max-iters", o.max_iters, "Iteration limit")->check(CLI::NonNegativeNumber);
  solve->add_option("--precond", o.precond, "Preconditioner")->check(CLI::IsMember({"none", "jacobi"}));

  auto* info = app.add_subcommand("info", "Show build configuration and file counts");
  info->add_option("--matrix", o.matrix, "Count the entries of this file");
  info->add_option("--ranks", o.ranks, "Simulated ranks")->check(CLI::Range(1, 256));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }

  std::ostringstream text;
  bool ok = true;
  auto emit = [&](const Comm& comm, const std::string& key, const std::string& value) {
    if (comm.rank() == 0) text << key << '=' << value << '\n';
  };

  try {
    if (gallery->parsed()) {
      run_ranks(o.ranks, [&](const Comm& comm) {
        const CrsMatrix a = load_matrix(o, comm);
        if (!o.out.empty()) write_coordinate_file(a, o.out);
        emit(comm, "rows", std::to_string(a.num_global_rows64()));
        emit(comm, "nnz", std::to_string(a.num_global_nonzeros64()));
        if (!o.out.empty()) emit(comm, "out", o.out);
      });
    } else if (spmv->parsed()) {
      run_ranks(o.ranks, [&](const Comm& comm) {
        const CrsMatrix a = load_matrix(o, comm);
        Vector x(a.operator_domain_map());
        Vector y(a.operator_range_map());
        x.put_scalar(1.0);
        a.multiply(false, x, y);
        emit(comm, "rows", std::to_string(a.num_global_rows64()));
        emit(comm, "nnz", std::to_string(a.num_global_nonzeros64()));
        emit(comm, "max_gid", std::to_string(a.row_matrix_row_map().max_all_gid64()));
        emit(comm, "norm2", num(y.norm2()));
        emit(comm, "norm_inf", num(y.norm_inf()[0]));
      });
    } else if (solve->parsed()) {
      run_ranks(o.ranks, [&](const Comm& comm) {
        const CrsMatrix a = load_matrix(o, comm);
        Vector ones(a.operator_domain_map());
        Vector b(a.operator_range_map());
        Vector x(a.operator_domain_map());
        ones.put_scalar(1.0);
        a.multiply(false, ones, b);
        const auto report = cg_solve(a, b, x, o.tol, o.max_iters,
                                     o.precond == "jacobi" ? Preconditioner::Jacobi : Preconditioner::None);
        Vector diff(a.operator_domain_map());
        diff.update(1.0, x, -1.0, ones, 0.0);
        emit(comm, "converged", report.converged ? "true" : "false");
        emit(comm, "iters", std::to_string(report.iterations));
        emit(comm, "residual", num(report.final_relative_residual));
        emit(comm, "error_inf", num(diff.norm_inf()[0]));
        if (comm.rank() == 0) ok = report.converged;
      });
    } else if (info->parsed()) {
      run_ranks(o.ranks, [&](const Comm& comm) {
        emit(comm, "build_mode", build_mode_name());
        emit(comm, "global_indices_32", kHaveGlobalIndices32 ? "true" : "false");
        emit(comm, "global_indices_64", kHaveGlobalIndices64 ? "true" : "false");
        emit(comm, "ranks", std::to_string(comm.size()));
        if (!o.matrix.empty()) {
          const auto counts = count_entries(o.matrix, comm);
          emit(comm, "rows", std::to_string(counts.rows));
          emit(comm, "cols", std::to_string(counts.cols));
          emit(comm, "nnz", std::to_string(counts.nnz));
          const auto widest = std::max_element(counts.nonzeros_per_row.begin(),
                                               counts.nonzeros_per_row.end());
          emit(comm, "max_row_nnz",
               std::to_string(widest == counts.nonzeros_per_row.end() ? 0 : *widest));
        }
      });
    }
  } catch (const std::exception& e) {
    out << text.str();
    err << "error: " << e.what() << '\n';
    return 1;
  }
  out << text.str();
  return ok ? 0 : 1;
}

}  // namespace spx::cli
