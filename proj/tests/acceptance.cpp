// Acceptance gate: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spx/cg_solver.hpp"
#include "spx/crs_graph.hpp"
#include "spx/directory.hpp"
#include "spx/gallery.hpp"
#include "spx/matrix_io.hpp"
#include "test_support.hpp"

using namespace spx;

namespace {

// Tolerances.
constexpr double kRuntimeLimitSeconds = 5.0;
constexpr double kCgTol = 1e-8;
constexpr double kResidualSlack = 1e-12;
constexpr double kSolutionErrorLimit = 1e-6;
constexpr int kCgMaxIters16 = 256;

constexpr long long kBigOffset = 3000000000LL;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("spx_acceptance_" + name)).string();
}

bool threw_kind(const std::function<void()>& fn, ErrorKind kind) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

// Everything a width-comparison looks at for one problem on one rank count.
struct Fingerprint {
  std::vector<double> y;
  long long nnz = 0, rows = 0, cols = 0, diags = 0;
  int cg_iters = 0;
  double cg_residual = 0.0;
  bool operator==(const Fingerprint& o) const {
    return test::bitwise_equal(y, o.y) && nnz == o.nnz && rows == o.rows && cols == o.cols &&
           diags == o.diags && cg_iters == o.cg_iters &&
           test::bitwise_equal(std::span<const double>(&cg_residual, 1),
                               std::span<const double>(&o.cg_residual, 1));
  }
};

Fingerprint fingerprint(const CrsMatrix& a, long long offset, const Comm& comm) {
  Fingerprint f;
  const BlockMap& dom = a.operator_domain_map();
  Vector x(dom), y(a.operator_range_map());
  for (int i = 0; i < x.my_length(); ++i) {
    const long long p = dom.gid64(i) - offset;
    x[i] = 1.0 + static_cast<double>(p % 11) / 8.0;
  }
  a.multiply(false, x, y);
  f.y = test::gather_by_gid(y);
  f.nnz = a.num_global_nonzeros64();
  f.rows = a.num_global_rows64();
  f.cols = a.num_global_cols64();
  f.diags = a.num_global_diagonals64();
  Vector sol(dom);
  const auto r = cg_solve(a, y, sol, 1e-10, 60);
  f.cg_iters = r.iterations;
  f.cg_residual = r.final_relative_residual;
  (void)comm;
  return f;
}

using Problem = std::function<CrsMatrix(IndexWidth, long long, const Comm&)>;

std::vector<std::pair<std::string, Problem>> comparison_problems() {
  std::vector<std::pair<std::string, Problem>> out;
  std::mt19937_64 gen(2024);
  for (int k = 0; k < 20; ++k) {
    const int n = std::uniform_int_distribution<int>(1, 200)(gen);
    const auto entries = test::random_entries(1000 + static_cast<std::uint64_t>(k), n, 6);
    out.emplace_back("random#" + std::to_string(k), [entries, n](IndexWidth w, long long off, const Comm& c) {
      return test::build_matrix(entries, n, off, w, c);
    });
  }
  for (auto [nx, ny] : {std::pair{1, 1}, {3, 3}, {7, 5}, {16, 16}}) {
    out.emplace_back("laplace2d " + std::to_string(nx) + "x" + std::to_string(ny),
                     [nx, ny](IndexWidth w, long long off, const Comm& c) {
                       return generate_crs_problem(GalleryKind::Laplace2D, nx, ny, w, off, c).matrix;
                     });
  }
  return out;
}

Fingerprint run_problem(const Problem& p, int ranks, IndexWidth w, long long offset) {
  Fingerprint f;
  run_ranks(ranks, [&](const Comm& comm) {
    const CrsMatrix a = p(w, offset, comm);
    Fingerprint mine = fingerprint(a, offset, comm);
    if (comm.rank() == 0) f = std::move(mine);
  });
  return f;
}

Outcome criterion1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  run_ranks(4, [&](const Comm& comm) {
    std::vector<long long> mine(1000);
    for (long long i = 0; i < 1000; ++i) mine[static_cast<std::size_t>(i)] = kBigOffset + 1000 * comm.rank() + i;
    const BlockMap map = BlockMap::from_list(-1, mine, kBigOffset, comm, IndexWidth::I64);
    const bool max_ok = map.max_all_gid64() == 3000003999LL;
    CrsMatrix a(map);
    test::insert_laplace1d(a, 4000, kBigOffset);
    a.fill_complete();
    Vector x(map), y(map);
    x.put_scalar(1.0);
    a.multiply(false, x, y);
    const auto all = test::gather_by_gid(y);
    bool pattern = all.size() == 4000;
    for (std::size_t i = 0; pattern && i < all.size(); ++i) {
      pattern = all[i] == ((i == 0 || i + 1 == all.size()) ? 1.0 : 0.0);
    }
    std::mt19937_64 gen(77 + static_cast<std::uint64_t>(comm.rank()));
    std::uniform_int_distribution<long long> pick(0, 3999);
    std::vector<long long> q(100);
    for (auto& g : q) g = kBigOffset + pick(gen);
    const auto e = get_directory_entries(map, std::span<const long long>(q));
    bool dir = true;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const long long rel = q[i] - kBigOffset;
      dir = dir && e.procs[i] == static_cast<int>(rel / 1000) && e.lids[i] == static_cast<int>(rel % 1000);
    }
    const int ok = comm.min_all((max_ok && pattern && dir) ? 1 : 0);
    if (comm.rank() == 0) {
      o.require(max_ok, "maxAllGID64 mismatch");
      o.require(pattern, "spmv boundary pattern mismatch");
      o.require(dir, "directory mismatch");
      o.require(ok == 1, "failure on another rank");
    }
  });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < kRuntimeLimitSeconds, "runtime " + std::to_string(secs) + " s");
  if (o.pass) o.detail = "maxAllGID64=3000003999 runtime=" + std::to_string(secs) + "s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  int compared = 0;
  for (const auto& [name, p] : comparison_problems()) {
    for (int ranks : {1, 2, 4}) {
      const auto narrow = run_problem(p, ranks, IndexWidth::I32, 0);
      const auto wide = run_problem(p, ranks, IndexWidth::I64, 0);
      o.require(narrow == wide, name + " differs at " + std::to_string(ranks) + " ranks");
      ++compared;
    }
  }
  if (o.pass) o.detail = std::to_string(compared) + " problem/rank combinations identical";
  return o;
}

Outcome criterion3() {
  Outcome o;
  int compared = 0;
  for (const auto& [name, p] : comparison_problems()) {
    for (int ranks : {1, 2, 4}) {
      const auto plain = run_problem(p, ranks, IndexWidth::I64, 0);
      const auto shifted = run_problem(p, ranks, IndexWidth::I64, kBigOffset);
      o.require(plain == shifted, name + " differs at " + std::to_string(ranks) + " ranks");
      ++compared;
    }
  }
  if (o.pass) o.detail = std::to_string(compared) + " combinations unchanged by offset 3e9";
  return o;
}

Outcome criterion4() {
  Outcome o;
  SerialComm comm;
  const BlockMap map = BlockMap::uniform(64, 0, comm, IndexWidth::I64);
  CrsMatrix a(map);
  test::insert_laplace1d(a, 64, 0);
  a.fill_complete();
  CrsGraph open(map);
  const CrsGraph& g = a.graph();
  MultiVector mv(map, 2);
  std::mt19937_64 gen(4);
  std::uniform_int_distribution<int> small(0, 63);
  long long calls = 0, errors = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int v = small(gen);
    std::vector<int> buf(8);
    std::vector<double> vals(8);
    const double one = 1.0;
    const std::vector<std::function<void()>> narrow = {
        [&] { (void)map.gid(v); },
        [&] { (void)map.lid(v); },
        [&] { (void)map.my_gid(v); },
        [&] { (void)map.my_global_elements(); },
        [&] { map.my_global_elements(std::span<int>(buf)); },
        [&] { (void)map.num_global_elements(); },
        [&] { (void)map.num_global_points(); },
        [&] { (void)map.index_base(); },
        [&] { (void)map.min_all_gid(); },
        [&] { (void)map.max_all_gid(); },
        [&] { (void)map.min_my_gid(); },
        [&] { (void)map.max_my_gid(); },
        [&] { (void)a.num_global_nonzeros(); },
        [&] { (void)a.num_global_rows(); },
        [&] { (void)a.num_global_cols(); },
        [&] { (void)a.num_global_diagonals(); },
        [&] { (void)g.num_global_rows(); },
        [&] { (void)g.num_global_cols(); },
        [&] { (void)g.num_global_entries(); },
        [&] { (void)g.num_global_diagonals(); },
        [&] { (void)g.num_global_block_rows(); },
        [&] { (void)g.num_global_indices(v); },
        [&] { (void)g.extract_global_row_copy(v, std::span<int>(buf)); },
        [&] { open.insert_global_indices(v, std::span<const int>(&v, 1)); },
        [&] { (void)a.extract_global_row_copy(v, std::span<int>(buf), std::span<double>(vals)); },
        [&] { (void)a.modify_global_values(v, std::span<const int>(&v, 1), std::span<const double>(&one, 1), CombineMode::SumInto); },
        [&] { (void)mv.global_length(); },
        [&] { (void)mv.replace_global_value(v, 0, 1.0); },
        [&] { (void)mv.sum_into_global_value(v, 1, 1.0); },
        [&] { (void)get_directory_entries(map, std::span<const int>(&v, 1)); },
    };
    for (const auto& call : narrow) {
      ++calls;
      if (threw_kind(call, ErrorKind::Width)) ++errors;
    }
  }
  o.require(errors == calls, std::to_string(errors) + "/" + std::to_string(calls) + " narrow calls errored");
  if (o.pass) o.detail = std::to_string(calls) + "/" + std::to_string(calls) + " narrow calls errored";
  return o;
}

Outcome criterion5() {
  Outcome o;
  int cases = 0;
  run_ranks(2, [&](const Comm& comm) {
    const BlockMap m32 = BlockMap::uniform(20, 0, comm, IndexWidth::I32);
    const BlockMap m64 = BlockMap::uniform(20, 0, comm, IndexWidth::I64);
    std::vector<std::function<void()>> mixed;
    for (int side = 0; side < 2; ++side) {
      const BlockMap& mine = side == 0 ? m32 : m64;
      const BlockMap& other = side == 0 ? m64 : m32;
      auto a = std::make_shared<CrsMatrix>(mine);
      test::insert_laplace1d(*a, 20, 0);
      a->fill_complete();
      auto xs = std::make_shared<MultiVector>(mine, 2);
      auto xo = std::make_shared<MultiVector>(other, 2);
      auto ys = std::make_shared<MultiVector>(mine, 2);
      auto yo = std::make_shared<MultiVector>(other, 2);
      // spmv: either operand on the other width
      mixed.push_back([=] { a->multiply(false, *xo, *ys); });
      mixed.push_back([=] { a->multiply(false, *xs, *yo); });
      mixed.push_back([=] { a->multiply(false, *xo, *yo); });
      // dense ops, each operand position
      mixed.push_back([=] { ys->update(1.0, *xo, 1.0); });
      mixed.push_back([=] { ys->update(1.0, *xo, 1.0, *xs, 0.0); });
      mixed.push_back([=] { ys->update(1.0, *xs, 1.0, *xo, 0.0); });
      mixed.push_back([=] { ys->multiply_elementwise(1.0, *xo, *xs, 0.0); });
      mixed.push_back([=] { ys->multiply_elementwise(1.0, *xs, *xo, 0.0); });
      mixed.push_back([=] { (void)ys->dot(*xo); });
      // fill_complete with a domain and/or range map of the other width
      for (int which = 0; which < 3; ++which) {
        mixed.push_back([=, &comm] {
          CrsMatrix b(mine);
          test::insert_laplace1d(b, 20, 0);
          b.fill_complete(which != 1 ? other : mine, which != 0 ? other : mine);
          (void)comm;
        });
        mixed.push_back([=] {
          CrsGraph gr(mine);
          gr.fill_complete(which != 1 ? other : mine, which != 0 ? other : mine);
        });
      }
    }
    int bad = 0;
    for (const auto& call : mixed) {
      if (!threw_kind(call, ErrorKind::WidthMix)) ++bad;
    }
    bad = comm.sum_all(bad);
    if (comm.rank() == 0) {
      cases = static_cast<int>(mixed.size());
      o.require(bad == 0, std::to_string(bad) + " mixed operations did not raise WidthMix");
    }
  });
  if (o.pass) o.detail = std::to_string(cases) + " mixed operations rejected";
  return o;
}

int run_quiet(const std::string& command, std::string* output = nullptr) {
  const auto log = temp_path("command.log");
  const int rc = std::system((command + " > \"" + log + "\" 2>&1").c_str());
  if (output != nullptr) {
    std::ifstream in(log);
    std::stringstream s;
    s << in.rdbuf();
    *output = s.str();
  }
  return rc;
}

Outcome criterion6() {
  Outcome o;
  const std::vector<std::pair<const char*, const char*>> programs = {
      {"legacy suite, dual", SPX_SUITE_LEGACY_DUAL},
      {"legacy suite, 32-only", SPX_SUITE_LEGACY_32},
      {"_LL suite, dual", SPX_SUITE_LL_DUAL},
      {"_LL suite, 64-only", SPX_SUITE_LL_64},
      {"multi-mode, dual", SPX_MULTI_MODE_DUAL},
      {"multi-mode, 32-only", SPX_MULTI_MODE_32},
      {"multi-mode, 64-only", SPX_MULTI_MODE_64},
  };
  for (const auto& [name, path] : programs) {
    o.require(run_quiet(std::string("\"") + path + "\"") == 0, std::string(name) + " failed");
  }
  std::string out;
  const int rc = run_quiet(std::string("\"") + SPX_CXX_COMPILER + "\" -std=c++20 -fsyntax-only " +
                               "-DSPX_NO_32BIT_GLOBAL_INDICES -DSPX_NO_64BIT_GLOBAL_INDICES -I\"" +
                               SPX_INCLUDE_DIR + "\" \"" + SPX_PROBE_SOURCE + "\"",
                           &out);
  o.require(rc != 0 && out.find("cannot both be defined") != std::string::npos,
            "both exclusion flags did not stop compilation");
  if (o.pass) o.detail = "4 suites and 3 multi-mode builds pass; both flags rejected";
  return o;
}

Outcome criterion7() {
  Outcome o;
  SerialComm comm;
  CrsMatrix a(BlockMap::uniform(10, kBigOffset, comm, IndexWidth::I64));
  test::insert_laplace1d(a, 10, kBigOffset);
  const auto before = a.storage_stats();
  a.fill_complete();
  const auto s = a.storage_stats();
  o.require(s.bytes_per_packed_column_index == 4, "packed column index is " +
                                                     std::to_string(s.bytes_per_packed_column_index) + " bytes");
  o.require(before.bytes_per_global_index_pre_fill == 8, "pre-fill global index is not 8 bytes");
  if (o.pass) o.detail = "packed column index 4 bytes, pre-fill global index 8 bytes";
  return o;
}

Outcome criterion8() {
  Outcome o;
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::mt19937_64 gen(static_cast<std::uint64_t>(trial));
    const int ranks = 1 + trial % 4;
    const std::size_t len = std::uniform_int_distribution<std::size_t>(1, 6)(gen);
    std::uniform_int_distribution<long long> big(-(1LL << 40), 1LL << 40);
    std::vector<long long> parts(static_cast<std::size_t>(ranks));
    long long partial = 0;
    for (int r = 0; r + 1 < ranks; ++r) partial += parts[static_cast<std::size_t>(r)] = big(gen);
    parts.back() = (1LL << 33) - partial;
    std::vector<std::vector<long long>> data(static_cast<std::size_t>(ranks), std::vector<long long>(len));
    for (auto& v : data) {
      for (auto& x : v) x = big(gen);
    }
    std::vector<int> ok(static_cast<std::size_t>(ranks), 1);
    run_ranks(ranks, [&](const Comm& comm) {
      const auto r = static_cast<std::size_t>(comm.rank());
      bool good = comm.sum_all(parts[r]) == (1LL << 33);
      const auto total = comm.sum_all(std::span<const long long>(data[r]));
      const auto scan = comm.scan_sum(std::span<const long long>(data[r]));
      std::vector<long long> expect_scan(len, 0);
      for (std::size_t q = 0; q <= r; ++q) {
        for (std::size_t k = 0; k < len; ++k) expect_scan[k] += data[q][k];
      }
      good = good && scan == expect_scan;
      if (comm.rank() + 1 == comm.size()) good = good && scan == total;
      std::vector<double> dv(len);
      for (std::size_t k = 0; k < len; ++k) dv[k] = static_cast<double>(data[r][k]) * 1e-3 + 0.1;
      const auto dsum = comm.sum_all(std::span<const double>(dv));
      const auto dscan = comm.scan_sum(std::span<const double>(dv));
      if (comm.rank() + 1 == comm.size()) good = good && test::bitwise_equal(dsum, dscan);
      std::vector<int> tags(len);
      for (std::size_t k = 0; k < len; ++k) tags[k] = static_cast<int>(r * 1000 + k);
      const auto gathered = comm.gather_all(std::span<const int>(tags));
      for (std::size_t q = 0; q < static_cast<std::size_t>(comm.size()); ++q) {
        for (std::size_t k = 0; k < len; ++k) good = good && gathered[q * len + k] == static_cast<int>(q * 1000 + k);
      }
      ok[r] = good ? 1 : 0;
    });
    for (int v : ok) failures += v == 0;
  }
  o.require(failures == 0, std::to_string(failures) + " rank-trials failed");
  if (o.pass) o.detail = "1000 trials";
  return o;
}

Outcome criterion9() {
  Outcome o;
  int bad32 = 0, bad64 = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    bad32 += !test::sort_trial<int>(seed);
    bad64 += !test::sort_trial<long long>(seed + 1000000);
  }
  o.require(bad32 == 0, std::to_string(bad32) + " int-key trials failed");
  o.require(bad64 == 0, std::to_string(bad64) + " long long-key trials failed");
  if (o.pass) o.detail = "1000 trials per key width";
  return o;
}

// Expected file body from an independent summation of the entry list.
std::string expected_file(const std::vector<test::Entry>& entries, long long n) {
  std::map<std::pair<long long, long long>, double> sums;
  for (const auto& e : entries) sums[{e.row, e.col}] += e.value;
  std::ostringstream out;
  out << "%%MatrixMarket matrix coordinate real general\n" << n << ' ' << n << ' ' << sums.size() << '\n';
  char buf[64];
  for (const auto& [pos, v] : sums) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << pos.first + 1 << ' ' << pos.second + 1 << ' ' << buf << '\n';
  }
  return out.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion10() {
  Outcome o;
  const auto p = temp_path("c10.mtx");
  const auto q = temp_path("c10b.mtx");
  std::mt19937_64 gen(10);
  for (int k = 0; k < 20; ++k) {
    const int n = std::uniform_int_distribution<int>(1, 120)(gen);
    const int ranks = 1 + k % 4;
    const auto width = k % 2 == 0 ? IndexWidth::I32 : IndexWidth::I64;
    const long long offset = width == IndexWidth::I64 ? kBigOffset : 0;
    const auto entries = test::random_entries(500 + static_cast<std::uint64_t>(k), n, 5);
    run_ranks(ranks, [&](const Comm& comm) {
      const CrsMatrix a = test::build_matrix(entries, n, offset, width, comm);
      write_coordinate_file(a, p);
      const auto back = read_coordinate_file(p, comm, width, offset);
      write_coordinate_file(back.matrix, q);
      const auto counts = count_entries(p, comm);
      if (comm.rank() != 0) return;
      const std::string name = "matrix #" + std::to_string(k);
      o.require(slurp(p) == expected_file(entries, n), name + ": written file differs from oracle");
      o.require(slurp(p) == slurp(q), name + ": write(read(file)) differs");
      o.require(counts.nnz == a.num_global_nonzeros64() && counts.rows == a.num_global_rows64() &&
                    counts.cols == a.num_global_cols64(),
                name + ": count_entries totals differ");
      o.require(back.matrix.num_global_nonzeros64() == a.num_global_nonzeros64(), name + ": nnz differs");
    });
  }
  run_ranks(2, [&](const Comm& comm) {
    auto g = generate_crs_problem(GalleryKind::Laplace2D, 3, 3, IndexWidth::I32, 0, comm);
    write_coordinate_file(g.matrix, p);
  });
  std::istringstream lines(slurp(p));
  std::string line;
  int data_lines = -1;  // the size line is not data
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '%') ++data_lines;
  }
  o.require(data_lines == 33, "Laplace2D 3x3 file has " + std::to_string(data_lines) + " data lines");
  if (o.pass) o.detail = "20 round trips; Laplace2D 3x3 file has 33 data lines";
  return o;
}

Outcome criterion11() {
  Outcome o;
  run_ranks(2, [&](const Comm& comm) {
    auto p = generate_crs_problem(GalleryKind::Laplace2D, 16, 16, IndexWidth::I64, 0, comm);
    const auto report = cg_solve(p.matrix, p.b, p.x, kCgTol, kCgMaxIters16);
    Vector ax(p.map), r(p.map);
    p.matrix.multiply(false, p.x, ax);
    r.update(1.0, p.b, -1.0, ax, 0.0);
    const double rel = r.norm2() / p.b.norm2();
    const auto x = test::gather_by_gid(p.x);
    const auto b = test::gather_by_gid(p.b);
    if (comm.rank() != 0) return;
    const auto dense = test::dense_solve(test::dense_laplace2d(16, 16), b);
    double err = 0.0;
    for (std::size_t i = 0; i < dense.size(); ++i) err = std::max(err, std::abs(x[i] - dense[i]));
    o.require(report.converged, "not converged");
    o.require(report.iterations <= kCgMaxIters16, "too many iterations");
    o.require(rel <= kCgTol * (1 + kResidualSlack), "recomputed residual " + std::to_string(rel));
    o.require(err < kSolutionErrorLimit, "max error vs dense solve " + std::to_string(err));
    if (o.pass) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "iterations=%d residual=%.3g max_error=%.3g", report.iterations, rel, err);
      o.detail = buf;
    }
  });
  return o;
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {
      criterion1, criterion2, criterion3, criterion4,  criterion5, criterion6,
      criterion7, criterion8, criterion9, criterion10, criterion11,
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %zu: %s %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
