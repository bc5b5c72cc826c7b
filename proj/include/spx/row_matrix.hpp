#ifndef SPX_ROW_MATRIX_HPP
#define SPX_ROW_MATRIX_HPP

#include <span>

#include "spx/block_map.hpp"
#include "spx/config.hpp"
#include "spx/multi_vector.hpp"

namespace spx {

/// Read-only, row-oriented view of a real sparse matrix, sufficient for
/// iterative solvers. The suffix-64 counts are valid for both widths; the
/// narrow counts throw ErrorKind::Width on 64-bit matrices.
class RowMatrix {
 public:
  virtual ~RowMatrix() = default;

  virtual bool filled() const = 0;

  virtual long long num_global_nonzeros64() const = 0;
  virtual long long num_global_rows64() const = 0;
  virtual long long num_global_cols64() const = 0;
  virtual long long num_global_diagonals64() const = 0;
#ifndef SPX_NO_32BIT_GLOBAL_INDICES
  virtual int num_global_nonzeros() const = 0;
  virtual int num_global_rows() const = 0;
  virtual int num_global_cols() const = 0;
  virtual int num_global_diagonals() const = 0;
#endif

  virtual int num_my_rows() const = 0;
  virtual int num_my_nonzeros() const = 0;
  virtual int num_my_row_entries(int local_row) const = 0;
  /// Copies one local row as (value, column-map LID) pairs; returns the count.
  virtual int extract_my_row_copy(int local_row, std::span<double> values,
                                  std::span<int> local_cols) const = 0;

  /// y = A x. Collective.
  virtual void multiply(bool transpose, const MultiVector& x, MultiVector& y) const = 0;
  virtual void extract_diagonal_copy(Vector& diagonal) const = 0;

  virtual const BlockMap& row_matrix_row_map() const = 0;
  virtual const BlockMap& row_matrix_col_map() const = 0;
  virtual const BlockMap& operator_domain_map() const = 0;
  virtual const BlockMap& operator_range_map() const = 0;
};

}  // namespace spx

#endif  // SPX_ROW_MATRIX_HPP
