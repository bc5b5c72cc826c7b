#ifndef SPX_CRS_GRAPH_HPP
#define SPX_CRS_GRAPH_HPP

#include <optional>
#include <span>
#include <vector>

#include "spx/block_map.hpp"
#include "spx/config.hpp"

namespace spx {

/// Per-width index storage of a graph. Before fill, the store matching the
/// row map's width holds one sorted, duplicate-free column set per local row
/// in global indices. The `int` store additionally holds the packed local
/// CRS arrays after fill, whatever the row map's width.
template <class GO>
struct GraphIndexData {
  std::vector<std::vector<GO>> global_rows;
};

template <>
struct GraphIndexData<int> {
  std::vector<std::vector<int>> global_rows;
  std::vector<int> row_offsets;  // num_my_rows + 1
  std::vector<int> local_cols;   // column-map LIDs, ascending global column order per row
};

/// Row-distributed sparsity pattern.
///
/// Rows are inserted with global indices at the width of the row map. The
/// narrow (int) entry points throw ErrorKind::Width on 64-bit graphs and the
/// long long entry points throw ErrorKind::Width on 32-bit graphs.
/// fill_complete() builds the column map, converts every column to an int
/// local index and freezes the pattern.
class CrsGraph {
 public:
  /// Row map element size must be 1.
  explicit CrsGraph(const BlockMap& row_map);

#ifndef SPX_NO_32BIT_GLOBAL_INDICES
  void insert_global_indices(int global_row, std::span<const int> cols);
  void remove_global_indices(int global_row);
  /// Copies the row's global columns (ascending) into `out`; returns the count.
  int extract_global_row_copy(int global_row, std::span<int> out) const;
  /// Pre-fill only, 32-bit graphs only.
  std::span<const int> extract_global_row_view(int global_row) const;
  int num_global_indices(int global_row) const;
#endif
#ifndef SPX_NO_64BIT_GLOBAL_INDICES
  void insert_global_indices(long long global_row, std::span<const long long> cols);
  void remove_global_indices(long long global_row);
  int extract_global_row_copy(long long global_row, std::span<long long> out) const;
  std::span<const long long> extract_global_row_view(long long global_row) const;
  int num_global_indices(long long global_row) const;
#endif

  /// Post-fill view of one row's local column indices.
  std::span<const int> extract_my_row_view(int local_row) const;

  /// Collective. Domain and range default to the row map.
  void fill_complete();
  void fill_complete(const BlockMap& domain_map, const BlockMap& range_map);

  bool filled() const { return filled_; }
  bool indices_are_global() const { return !filled_; }
  bool indices_are_local() const { return filled_; }

  const BlockMap& row_map() const { return row_map_; }
  const BlockMap& col_map() const;
  const BlockMap& domain_map() const;
  const BlockMap& range_map() const;
  WidthState width_state() const { return row_map_.width_state(); }

  int num_my_rows() const { return row_map_.num_my_elements(); }
  int num_my_entries() const;
  int num_my_indices(int local_row) const;

  // Global counts: valid after fill.
  long long num_global_rows64() const;
  long long num_global_cols64() const;
  long long num_global_entries64() const;
  long long num_global_diagonals64() const;
  long long num_global_block_rows64() const { return num_global_rows64(); }
  long long num_global_block_cols64() const { return num_global_cols64(); }
  long long num_global_block_diagonals64() const { return num_global_diagonals64(); }
#ifndef SPX_NO_32BIT_GLOBAL_INDICES
  int num_global_rows() const;
  int num_global_cols() const;
  int num_global_entries() const;
  int num_global_diagonals() const;
  int num_global_block_rows() const { return num_global_rows(); }
  int num_global_block_cols() const { return num_global_cols(); }
  int num_global_block_diagonals() const { return num_global_diagonals(); }
#endif

  /// Index store access. The long long store is available only for 64-bit
  /// graphs whose indices have not been made local; the int store for 32-bit
  /// graphs, or for 64-bit graphs after fill.
  template <class GO>
  const GraphIndexData<GO>& index_data() const;

  // Fill products used by CrsMatrix: the first num_owned_cols() column-map
  // entries are domain-map GIDs owned here (domain LIDs below); the rest are
  // remote, grouped by owning rank.
  int num_owned_cols() const { return num_owned_cols_; }
  std::span<const int> owned_col_domain_lids() const { return owned_col_domain_lids_; }
  std::span<const int> remote_col_owners() const { return remote_col_owners_; }

  // Width-generic internals shared with CrsMatrix and the readers. GO must
  // match the row map width.
  template <class GO>
  void insert_generic(GO global_row, std::span<const GO> cols);
  template <class GO>
  int local_row_of(GO global_row, const char* who) const;
  template <class GO>
  const std::vector<GO>& global_row_set(int local_row) const;

 private:
  template <class GO>
  void require_width(const char* who) const;
  void require_unfilled(const char* who) const;
  void require_filled(const char* who) const;
  template <class GO>
  int extract_impl(GO global_row, std::span<GO> out) const;
  template <class GO>
  void fill_impl(const BlockMap& domain_map, const BlockMap& range_map);
  template <class GO>
  GraphIndexData<GO>& store();
  template <class GO>
  const GraphIndexData<GO>& store() const;

  BlockMap row_map_;
  std::optional<BlockMap> col_map_;
  std::optional<BlockMap> domain_map_;
  std::optional<BlockMap> range_map_;
  GraphIndexData<int> data32_;
  GraphIndexData<long long> data64_;
  bool filled_ = false;

  int num_owned_cols_ = 0;
  std::vector<int> owned_col_domain_lids_;
  std::vector<int> remote_col_owners_;
  long long global_entries_ = 0;
  long long global_diagonals_ = 0;
};

}  // namespace spx

#endif  // SPX_CRS_GRAPH_HPP
