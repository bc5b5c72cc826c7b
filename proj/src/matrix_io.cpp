#include "spx/matrix_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "map_data.hpp"
#include "spx/distributor.hpp"
#include "spx/error.hpp"

namespace spx {

namespace {

constexpr const char* kHeader = "%%MatrixMarket matrix coordinate real general";

struct Triple {
  long long row;
  long long col;
  double value;
};
static_assert(sizeof(Triple) == 24);

struct ParsedFile {
  long long rows = 0;
  long long cols = 0;
  std::vector<Triple> entries;  // 1-based
};

// Outcome of rank 0's work, shared with every rank.
struct Status {
  ErrorKind kind = ErrorKind::Parse;
  bool failed = false;
  long long line = 0;
  std::string message;
};

std::string rstrip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  return s;
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

[[noreturn]] void parse_fail(long long line, const std::string& what) {
  throw ParseError(line, what);
}

// Reads exactly the given fields; trailing text is an error.
template <class... T>
bool read_fields(const std::string& text, T&... out) {
  std::istringstream in(text);
  if (!((in >> out) && ...)) return false;
  std::string rest;
  return !(in >> rest);
}

ParsedFile parse_file(const std::string& path, CoordinateFormat format) {
  std::ifstream in(path);
  if (!in) throw_error(ErrorKind::Io, "cannot open " + path);

  ParsedFile file;
  std::string text;
  long long line = 0;
  if (format == CoordinateFormat::Auto) {
    const int c0 = in.peek();
    format = CoordinateFormat::RawTriples;
    if (c0 == '%') {
      char buf[14] = {};
      in.read(buf, 14);
      if (std::strncmp(buf, "%%MatrixMarket", 14) == 0) format = CoordinateFormat::MatrixMarket;
      in.clear();
      in.seekg(0);
    }
  }

  auto check_entry = [&](const Triple& t) {
    if (t.row < 1 || t.row > file.rows || t.col < 1 || t.col > file.cols) {
      parse_fail(line, "entry index out of bounds");
    }
  };

  if (format == CoordinateFormat::MatrixMarket) {
    if (!std::getline(in, text) || rstrip(text) != kHeader) {
      parse_fail(1, std::string("expected header \"") + kHeader + "\"");
    }
    line = 1;
    long long nnz = -1;
    while (std::getline(in, text)) {
      ++line;
      if (blank(text) || text[0] == '%') continue;
      if (!read_fields(text, file.rows, file.cols, nnz) || file.rows < 0 || file.cols < 0 ||
          nnz < 0) {
        parse_fail(line, "malformed size line");
      }
      break;
    }
    if (nnz < 0) parse_fail(line + 1, "missing size line");
    if (file.rows != file.cols) parse_fail(line, "matrix is not square");
    file.entries.reserve(static_cast<std::size_t>(nnz));
    while (std::getline(in, text)) {
      ++line;
      if (blank(text)) continue;
      Triple t{};
      if (!read_fields(text, t.row, t.col, t.value)) parse_fail(line, "malformed entry line");
      if (static_cast<long long>(file.entries.size()) == nnz) parse_fail(line, "more entries than declared");
      check_entry(t);
      file.entries.push_back(t);
    }
    if (static_cast<long long>(file.entries.size()) != nnz) {
      parse_fail(line + 1, "fewer entries than declared");
    }
    return file;
  }

  file.rows = file.cols = std::numeric_limits<long long>::max();
  long long n = 0;
  while (std::getline(in, text)) {
    ++line;
    if (blank(text)) continue;
    Triple t{};
    if (!read_fields(text, t.row, t.col, t.value)) parse_fail(line, "malformed triple");
    check_entry(t);
    n = std::max({n, t.row, t.col});
    file.entries.push_back(t);
  }
  file.rows = file.cols = n;
  return file;
}

Bytes encode_status(const Status& s) {
  std::ostringstream out;
  out << static_cast<int>(s.failed) << ' ' << static_cast<int>(s.kind) << ' ' << s.line << ' '
      << s.message;
  const auto str = out.str();
  Bytes b(str.size());
  std::memcpy(b.data(), str.data(), str.size());
  return b;
}

Status decode_status(const Bytes& b) {
  std::string str(b.size(), '\0');
  std::memcpy(str.data(), b.data(), b.size());
  std::istringstream in(str);
  Status s;
  int failed = 0, kind = 0;
  in >> failed >> kind >> s.line;
  in.get();
  std::getline(in, s.message, '\0');
  s.failed = failed != 0;
  s.kind = static_cast<ErrorKind>(kind);
  return s;
}

// Runs `work` on rank 0 and rethrows any failure on every rank.
template <class Fn>
void on_root(const Comm& comm, Fn&& work) {
  Status status;
  if (comm.rank() == 0) {
    try {
      work();
    } catch (const ParseError& e) {
      status = {ErrorKind::Parse, true, e.line(), e.what()};
    } catch (const Error& e) {
      status = {e.kind(), true, 0, e.what()};
    }
  }
  status = decode_status(comm.broadcast_bytes(encode_status(status), 0));
  if (!status.failed) return;
  if (status.kind == ErrorKind::Parse) throw ParseError(status.line, status.message);
  throw Error(status.kind, status.message);
}

template <class T>
std::vector<T> broadcast_vector(const Comm& comm, const std::vector<T>& v) {
  Bytes b(v.size() * sizeof(T));
  if (!v.empty()) std::memcpy(b.data(), v.data(), b.size());
  b = comm.broadcast_bytes(b, 0);
  std::vector<T> out(b.size() / sizeof(T));
  if (!out.empty()) std::memcpy(out.data(), b.data(), b.size());
  return out;
}

}  // namespace

EntryCounts count_entries(const std::string& path, const Comm& comm, CoordinateFormat format) {
  std::vector<long long> header(3, 0);
  std::vector<long long> per_row;
  on_root(comm, [&] {
    const ParsedFile file = parse_file(path, format);
    header = {file.rows, file.cols, static_cast<long long>(file.entries.size())};
    per_row.assign(static_cast<std::size_t>(file.rows), 0);
    for (const auto& t : file.entries) ++per_row[static_cast<std::size_t>(t.row - 1)];
  });
  header = broadcast_vector(comm, header);
  EntryCounts counts;
  counts.rows = header[0];
  counts.cols = header[1];
  counts.nnz = header[2];
  counts.nonzeros_per_row = broadcast_vector(comm, per_row);
  return counts;
}

CoordinateMatrix read_coordinate_file(const std::string& path, const Comm& comm, IndexWidth width,
                                      long long gid_offset, CoordinateFormat format) {
  ParsedFile file;
  on_root(comm, [&] { file = parse_file(path, format); });
  const long long rows = broadcast_vector(comm, std::vector<long long>{file.rows})[0];

  BlockMap map = BlockMap::uniform(rows, gid_offset, comm, width);

  std::vector<int> dest;
  std::vector<Triple> send;
  if (comm.rank() == 0) {
    send.reserve(file.entries.size());
    dest.reserve(file.entries.size());
    for (const auto& t : file.entries) {
      send.push_back({t.row - 1 + gid_offset, t.col - 1 + gid_offset, t.value});
      dest.push_back(map.linear_owner(send.back().row));
    }
  }
  const CommPlan plan = CommPlan::create_from_sends(comm, dest, true);
  const auto mine = plan.execute_items<Triple>(PlanDirection::Forward, std::span<const Triple>(send));

  CrsMatrix matrix(map);
  detail::dispatch_width(map.width_state(), [&](auto tag) {
    using GO = decltype(tag);
    for (const auto& t : mine) {
      const GO col = static_cast<GO>(t.col);
      matrix.insert_global_values(static_cast<GO>(t.row), std::span<const GO>(&col, 1),
                                  std::span<const double>(&t.value, 1));
    }
  });
  matrix.fill_complete();
  return {map, std::move(matrix)};
}

void write_coordinate_file(const CrsMatrix& matrix, const std::string& path) {
  if (!matrix.filled()) throw_error(ErrorKind::Lifecycle, "write_coordinate_file: matrix is not filled");
  const BlockMap& row_map = matrix.row_matrix_row_map();
  const BlockMap& col_map = matrix.row_matrix_col_map();
  const Comm& comm = row_map.comm();
  const long long row_base = matrix.operator_range_map().index_base64();
  const long long col_base = matrix.operator_domain_map().index_base64();

  std::vector<Triple> send;
  std::vector<double> vals;
  std::vector<int> lcols;
  for (int r = 0; r < matrix.num_my_rows(); ++r) {
    const int n = matrix.num_my_row_entries(r);
    vals.resize(static_cast<std::size_t>(n));
    lcols.resize(static_cast<std::size_t>(n));
    matrix.extract_my_row_copy(r, vals, lcols);
    for (int k = 0; k < n; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      send.push_back({row_map.gid64(r) - row_base + 1, col_map.gid64(lcols[kk]) - col_base + 1, vals[kk]});
    }
  }
  const std::vector<int> dest(send.size(), 0);
  const CommPlan plan = CommPlan::create_from_sends(comm, dest, true);
  auto all = plan.execute_items<Triple>(PlanDirection::Forward, std::span<const Triple>(send));
  const long long rows = matrix.num_global_rows64();
  const long long cols = matrix.num_global_cols64();

  on_root(comm, [&] {
    std::stable_sort(all.begin(), all.end(), [](const Triple& a, const Triple& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (f == nullptr) throw_error(ErrorKind::Io, "cannot open " + path + " for writing");
    std::fprintf(f, "%s\n%lld %lld %zu\n", kHeader, rows, cols, all.size());
    for (const auto& t : all) std::fprintf(f, "%lld %lld %.17g\n", t.row, t.col, t.value);
    const bool ok = std::ferror(f) == 0;
    if (std::fclose(f) != 0 || !ok) throw_error(ErrorKind::Io, "failed writing " + path);
  });
}

}  // namespace spx
