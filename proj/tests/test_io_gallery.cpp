#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "spx/error.hpp"
#include "spx/gallery.hpp"
#include "spx/matrix_io.hpp"
#include "test_support.hpp"

using namespace spx;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("spx_io_" + name)).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kTwoByTwo =
    "%%MatrixMarket matrix coordinate real general\n"
    "% a comment\n"
    "2 2 4\n"
    "1 1 2\n1 2 -1\n2 1 -1\n2 2 2\n";

}  // namespace

TEST_CASE("count_entries") {
  const auto p = temp_path("count.mtx");
  write_text(p, kTwoByTwo);
  run_ranks(2, [&](const Comm& comm) {
    const auto c = count_entries(p, comm);
    CHECK(c.rows == 2);
    CHECK(c.cols == 2);
    CHECK(c.nnz == 4);
    CHECK(c.nonzeros_per_row == std::vector<long long>{2, 2});
  });
  const auto bad = temp_path("bad_header.mtx");
  write_text(bad, "%%MatrixMarket matrix coordinate real symmetric\n2 2 0\n");
  run_ranks(2, [&](const Comm& comm) {
    try {
      count_entries(bad, comm);
      FAIL("expected parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
    }
  });
}

TEST_CASE("parse errors carry line numbers") {
  SerialComm comm;
  const auto p = temp_path("bad_entry.mtx");
  write_text(p, "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n3 1 1\n");
  try {
    read_coordinate_file(p, comm, IndexWidth::I32);
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  write_text(p, "%%MatrixMarket matrix coordinate real general\n2 2\n");
  try {
    count_entries(p, comm);
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  write_text(p, "%%MatrixMarket matrix coordinate real general\n2 3 0\n");
  CHECK_THROWS_AS(read_coordinate_file(p, comm, IndexWidth::I32), ParseError);
  try {
    read_coordinate_file(temp_path("does_not_exist.mtx"), comm, IndexWidth::I32);
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
}

TEST_CASE("reading at both widths with an offset") {
  const auto p = temp_path("read.mtx");
  write_text(p, kTwoByTwo);
  run_ranks(2, [&](const Comm& comm) {
    auto narrow = read_coordinate_file(p, comm, IndexWidth::I32, 0);
    CHECK(narrow.matrix.num_global_nonzeros64() == 4);
    CHECK(narrow.matrix.num_global_rows64() == 2);
    auto wide = read_coordinate_file(p, comm, IndexWidth::I64, 3000000000LL);
    CHECK(wide.map.max_all_gid64() == 3000000001LL);
    Vector xn(narrow.map), yn(narrow.map), xw(wide.map), yw(wide.map);
    xn.put_scalar(1.0);
    xw.put_scalar(1.0);
    narrow.matrix.multiply(false, xn, yn);
    wide.matrix.multiply(false, xw, yw);
    CHECK(test::bitwise_equal(test::gather_by_gid(yn), test::gather_by_gid(yw)));
    try {
      read_coordinate_file(p, comm, IndexWidth::I32, 3000000000LL);
      FAIL("expected width-range error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::WidthRange);
    }
  });
}

TEST_CASE("raw triples") {
  SerialComm comm;
  const auto p = temp_path("triples.txt");
  write_text(p, "1 1 2\n1 2 -1\n\n2 1 -1\n2 2 2\n");
  const auto c = count_entries(p, comm);
  CHECK(c.rows == 2);
  CHECK(c.nnz == 4);
  auto m = read_coordinate_file(p, comm, IndexWidth::I64, 0, CoordinateFormat::RawTriples);
  CHECK(m.matrix.num_global_nonzeros64() == 4);
}

TEST_CASE("write then read is the identity") {
  const auto p = temp_path("roundtrip.mtx");
  const auto q = temp_path("roundtrip2.mtx");
  for (int ranks : {1, 3}) {
    run_ranks(ranks, [&](const Comm& comm) {
      const auto entries = test::random_entries(5, 25, 4);
      const auto a = test::build_matrix(entries, 25, 0, IndexWidth::I32, comm);
      write_coordinate_file(a, p);
      auto b = read_coordinate_file(p, comm, IndexWidth::I32, 0);
      write_coordinate_file(b.matrix, q);
      if (comm.rank() == 0) CHECK(read_text(p) == read_text(q));
      const auto c = count_entries(p, comm);
      CHECK(c.nnz == a.num_global_nonzeros64());
    });
  }
}

TEST_CASE("offset matrices write the same file") {
  SerialComm comm;
  const auto p = temp_path("plain.mtx");
  const auto q = temp_path("shifted.mtx");
  const auto entries = test::random_entries(9, 12, 3);
  write_coordinate_file(test::build_matrix(entries, 12, 0, IndexWidth::I32, comm), p);
  write_coordinate_file(test::build_matrix(entries, 12, 3000000000LL, IndexWidth::I64, comm), q);
  CHECK(read_text(p) == read_text(q));
}

TEST_CASE("empty matrix file") {
  SerialComm comm;
  const auto p = temp_path("empty.mtx");
  CrsMatrix a(Map(0, 0, comm));
  a.fill_complete();
  write_coordinate_file(a, p);
  CHECK(read_text(p) == "%%MatrixMarket matrix coordinate real general\n0 0 0\n");
  CHECK(count_entries(p, comm).nnz == 0);
}

TEST_CASE("gallery Laplace2D") {
  SerialComm comm;
  auto p3 = generate_crs_problem(GalleryKind::Laplace2D, 3, 3, IndexWidth::I32, 0, comm);
  CHECK(p3.matrix.num_global_rows64() == 9);
  CHECK(p3.matrix.num_global_nonzeros64() == 33);
  std::vector<int> cols(5);
  std::vector<double> vals(5);
  CHECK(p3.matrix.extract_global_row_copy(4, cols, vals) == 5);
  CHECK(cols == std::vector<int>{1, 3, 4, 5, 7});
  CHECK(vals == std::vector<double>{-1, -1, 4, -1, -1});

  auto p1 = generate_crs_problem(GalleryKind::Laplace2D, 1, 1, IndexWidth::I32, 0, comm);
  CHECK(p1.matrix.num_global_nonzeros64() == 1);
  CHECK(p1.b[0] == 4.0);

  GalleryOptions opts;
  opts.nx = opts.ny = 4;
  opts.use_long_long = true;
  opts.gid_offset = 3000000000LL;
  auto p4 = generate_crs_problem(opts, comm);
  CHECK(p4.map.global_indices_long_long());
  CHECK(p4.map.max_all_gid64() == 3000000015LL);
  CHECK_THROWS_AS(generate_crs_problem(GalleryKind::Laplace2D, 4, 4, IndexWidth::I32, 3000000000LL, comm),
                  Error);

  run_ranks(3, [](const Comm& c) {
    auto p = generate_crs_problem(GalleryKind::Laplace2D, 5, 4, IndexWidth::I64, 0, c);
    Vector y(p.map);
    p.matrix.multiply(false, p.xexact, y);
    CHECK(test::bitwise_equal(y.values(), p.b.values()));
    for (double x : p.x.values()) CHECK(x == 0.0);
  });
}
