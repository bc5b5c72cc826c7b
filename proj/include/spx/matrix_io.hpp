#ifndef SPX_MATRIX_IO_HPP
#define SPX_MATRIX_IO_HPP

#include <string>
#include <vector>

#include "spx/block_map.hpp"
#include "spx/comm.hpp"
#include "spx/crs_matrix.hpp"

namespace spx {

/// MatrixMarket files must start with exactly
/// "%%MatrixMarket matrix coordinate real general". Raw triples are
/// whitespace-separated "i j v" lines without a header; the matrix is square
/// with dimension equal to the largest index. Indices in files are 1-based.
enum class CoordinateFormat { Auto, MatrixMarket, RawTriples };

struct EntryCounts {
  long long rows = 0;
  long long cols = 0;
  long long nnz = 0;
  std::vector<long long> nonzeros_per_row;
};

struct CoordinateMatrix {
  BlockMap map;
  CrsMatrix matrix;
};

/// Counting pass. Rank 0 reads; every rank gets the result. Collective.
EntryCounts count_entries(const std::string& path, const Comm& comm,
                          CoordinateFormat format = CoordinateFormat::Auto);

/// Builds a filled square matrix on a uniform row map over
/// [gid_offset, gid_offset + rows) at the requested width. File row i becomes
/// GID gid_offset + i - 1. Duplicate entries are summed. Collective.
CoordinateMatrix read_coordinate_file(const std::string& path, const Comm& comm,
                                      IndexWidth width, long long gid_offset = 0,
                                      CoordinateFormat format = CoordinateFormat::Auto);

/// Writes a filled matrix as MatrixMarket coordinate real general, with file
/// indices relative to the row and domain map index bases. Collective.
void write_coordinate_file(const CrsMatrix& matrix, const std::string& path);

}  // namespace spx

#endif  // SPX_MATRIX_IO_HPP
