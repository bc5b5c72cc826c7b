#ifndef SPX_CRS_MATRIX_HPP
#define SPX_CRS_MATRIX_HPP

#include <optional>
#include <span>
#include <vector>

#include "spx/crs_graph.hpp"
#include "spx/distributor.hpp"
#include "spx/multi_vector.hpp"
#include "spx/row_matrix.hpp"

namespace spx {

/// Physical widths of a matrix's current stores, in bytes. A store that does
/// not exist in the current state reports 0.
struct StorageStats {
  int bytes_per_packed_column_index = 0;
  int bytes_per_value = 0;
  int bytes_per_global_index_pre_fill = 0;
};

/// Row-distributed compressed-row matrix of doubles.
///
/// Values inserted twice at the same (row, column) are summed. After
/// fill_complete() the pattern is frozen but values can still be replaced or
/// summed into.
class CrsMatrix : public RowMatrix {
 public:
  explicit CrsMatrix(const BlockMap& row_map);

#ifndef SPX_NO_32BIT_GLOBAL_INDICES
  void insert_global_values(int global_row, std::span<const int> cols,
                            std::span<const double> values);
  /// Returns the number of (row, col) targets absent from the pattern.
  int modify_global_values(int global_row, std::span<const int> cols,
                           std::span<const double> values, CombineMode mode);
  int replace_global_values(int global_row, std::span<const int> cols,
                            std::span<const double> values) {
    return modify_global_values(global_row, cols, values, CombineMode::Replace);
  }
  int sum_into_global_values(int global_row, std::span<const int> cols,
                             std::span<const double> values) {
    return modify_global_values(global_row, cols, values, CombineMode::SumInto);
  }
  int extract_global_row_copy(int global_row, std::span<int> cols,
                              std::span<double> values) const;
#endif
#ifndef SPX_NO_64BIT_GLOBAL_INDICES
  void insert_global_values(long long global_row, std::span<const long long> cols,
                            std::span<const double> values);
  int modify_global_values(long long global_row, std::span<const long long> cols,
                           std::span<const double> values, CombineMode mode);
  int replace_global_values(long long global_row, std::span<const long long> cols,
                            std::span<const double> values) {
    return modify_global_values(global_row, cols, values, CombineMode::Replace);
  }
  int sum_into_global_values(long long global_row, std::span<const long long> cols,
                             std::span<const double> values) {
    return modify_global_values(global_row, cols, values, CombineMode::SumInto);
  }
  int extract_global_row_copy(long long global_row, std::span<long long> cols,
                              std::span<double> values) const;
#endif

  /// Collective.
  void fill_complete();
  void fill_complete(const BlockMap& domain_map, const BlockMap& range_map);

  /// y = A x. Transpose is not supported.
  void apply(const MultiVector& x, MultiVector& y) const { multiply(false, x, y); }

  const CrsGraph& graph() const { return graph_; }
  WidthState width_state() const { return graph_.width_state(); }
  /// Plan fetching remote x entries; absent when no rank has remote columns.
  const CommPlan* import_plan() const { return import_plan_ ? &*import_plan_ : nullptr; }
  StorageStats storage_stats() const;
  /// Packed values, aligned with graph().extract_my_row_view(). Filled only.
  std::span<const double> packed_values() const;

  // RowMatrix
  bool filled() const override { return graph_.filled(); }
  long long num_global_nonzeros64() const override { return graph_.num_global_entries64(); }
  long long num_global_rows64() const override { return graph_.num_global_rows64(); }
  long long num_global_cols64() const override { return graph_.num_global_cols64(); }
  long long num_global_diagonals64() const override { return graph_.num_global_diagonals64(); }
#ifndef SPX_NO_32BIT_GLOBAL_INDICES
  int num_global_nonzeros() const override { return graph_.num_global_entries(); }
  int num_global_rows() const override { return graph_.num_global_rows(); }
  int num_global_cols() const override { return graph_.num_global_cols(); }
  int num_global_diagonals() const override { return graph_.num_global_diagonals(); }
#endif
  int num_my_rows() const override { return graph_.num_my_rows(); }
  int num_my_nonzeros() const override { return graph_.num_my_entries(); }
  int num_my_row_entries(int local_row) const override { return graph_.num_my_indices(local_row); }
  int extract_my_row_copy(int local_row, std::span<double> values,
                          std::span<int> local_cols) const override;
  void multiply(bool transpose, const MultiVector& x, MultiVector& y) const override;
  void extract_diagonal_copy(Vector& diagonal) const override;
  const BlockMap& row_matrix_row_map() const override { return graph_.row_map(); }
  const BlockMap& row_matrix_col_map() const override { return graph_.col_map(); }
  const BlockMap& operator_domain_map() const override { return graph_.domain_map(); }
  const BlockMap& operator_range_map() const override { return graph_.range_map(); }

 private:
  template <class GO>
  void insert_impl(GO global_row, std::span<const GO> cols, std::span<const double> values);
  template <class GO>
  int modify_impl(GO global_row, std::span<const GO> cols, std::span<const double> values,
                  CombineMode mode);
  template <class GO>
  int extract_impl(GO global_row, std::span<GO> cols, std::span<double> values) const;
  template <class GO>
  void build_import();

  CrsGraph graph_;
  std::vector<std::vector<double>> row_values_;  // before fill, parallel to the graph's row sets
  std::vector<double> values_;                   // after fill, packed
  std::optional<CommPlan> import_plan_;
  std::vector<int> export_domain_lids_;
};

}  // namespace spx

#endif  // SPX_CRS_MATRIX_HPP
