#include "spx/crs_graph.hpp"

#include <algorithm>
#include <climits>
#include <string>
#include <type_traits>

#include "map_data.hpp"
#include "spx/directory.hpp"
#include "spx/error.hpp"

namespace spx {

namespace {

template <class GO>
constexpr WidthState width_of() {
  return std::is_same_v<GO, int> ? WidthState::I32 : WidthState::I64;
}

int narrow_count(long long v, const char* who) {
  if (v > INT_MAX) throw_error(ErrorKind::WidthRange, std::string(who) + ": count exceeds 32 bits");
  return static_cast<int>(v);
}

}  // namespace

CrsGraph::CrsGraph(const BlockMap& row_map) : row_map_(row_map) {
  if (!row_map.global_indices_type_valid()) {
    throw_error(ErrorKind::WidthState, "CrsGraph: row map has no valid global index width");
  }
  if (row_map.element_size() != 1) {
    throw_error(ErrorKind::ContractViolation, "CrsGraph: row map element size must be 1");
  }
  const auto n = static_cast<std::size_t>(row_map.num_my_elements());
  if (row_map.global_indices_int()) {
    data32_.global_rows.resize(n);
  } else {
    data64_.global_rows.resize(n);
  }
}

template <class GO>
GraphIndexData<GO>& CrsGraph::store() {
  if constexpr (std::is_same_v<GO, int>) return data32_;
  else return data64_;
}

template <class GO>
const GraphIndexData<GO>& CrsGraph::store() const {
  if constexpr (std::is_same_v<GO, int>) return data32_;
  else return data64_;
}

template <class GO>
void CrsGraph::require_width(const char* who) const {
  if (row_map_.width_state() != width_of<GO>()) {
    throw_error(ErrorKind::Width, std::string(who) + ": " +
                                      (std::is_same_v<GO, int> ? "32" : "64") +
                                      "-bit entry point called on a " +
                                      to_string(row_map_.width_state()) + "-bit graph");
  }
}

void CrsGraph::require_unfilled(const char* who) const {
  if (filled_) throw_error(ErrorKind::Lifecycle, std::string(who) + ": graph is already filled");
}

void CrsGraph::require_filled(const char* who) const {
  if (!filled_) throw_error(ErrorKind::Lifecycle, std::string(who) + ": graph is not filled");
}

template <class GO>
int CrsGraph::local_row_of(GO global_row, const char* who) const {
  require_width<GO>(who);
  const int lrow = row_map_.data().lid_of_gid(static_cast<long long>(global_row));
  if (lrow < 0) {
    throw_error(ErrorKind::NotOwned, std::string(who) + ": row " +
                                         std::to_string(static_cast<long long>(global_row)) +
                                         " is not owned by rank " +
                                         std::to_string(row_map_.comm().rank()));
  }
  return lrow;
}

template <class GO>
const std::vector<GO>& CrsGraph::global_row_set(int local_row) const {
  return store<GO>().global_rows[static_cast<std::size_t>(local_row)];
}

template <class GO>
void CrsGraph::insert_generic(GO global_row, std::span<const GO> cols) {
  require_width<GO>("insert_global_indices");
  require_unfilled("insert_global_indices");
  const int lrow = local_row_of(global_row, "insert_global_indices");
  auto& row = store<GO>().global_rows[static_cast<std::size_t>(lrow)];
  row.insert(row.end(), cols.begin(), cols.end());
  std::sort(row.begin(), row.end());
  row.erase(std::unique(row.begin(), row.end()), row.end());
}

template <class GO>
int CrsGraph::extract_impl(GO global_row, std::span<GO> out) const {
  const int lrow = local_row_of(global_row, "extract_global_row_copy");
  const int n = num_my_indices(lrow);
  if (out.size() < static_cast<std::size_t>(n)) {
    throw CapacityError(n, "extract_global_row_copy: buffer too small");
  }
  if (!filled_) {
    const auto& row = store<GO>().global_rows[static_cast<std::size_t>(lrow)];
    std::copy(row.begin(), row.end(), out.begin());
  } else {
    const auto cols = extract_my_row_view(lrow);
    for (int k = 0; k < n; ++k) {
      out[static_cast<std::size_t>(k)] = static_cast<GO>(col_map_->gid64(cols[static_cast<std::size_t>(k)]));
    }
  }
  return n;
}

#ifndef SPX_NO_32BIT_GLOBAL_INDICES
void CrsGraph::insert_global_indices(int global_row, std::span<const int> cols) {
  insert_generic<int>(global_row, cols);
}

void CrsGraph::remove_global_indices(int global_row) {
  require_unfilled("remove_global_indices");
  const int lrow = local_row_of(global_row, "remove_global_indices");
  data32_.global_rows[static_cast<std::size_t>(lrow)].clear();
}

int CrsGraph::extract_global_row_copy(int global_row, std::span<int> out) const {
  return extract_impl<int>(global_row, out);
}

std::span<const int> CrsGraph::extract_global_row_view(int global_row) const {
  const int lrow = local_row_of(global_row, "extract_global_row_view");
  require_unfilled("extract_global_row_view");
  return data32_.global_rows[static_cast<std::size_t>(lrow)];
}

int CrsGraph::num_global_indices(int global_row) const {
  return num_my_indices(local_row_of(global_row, "num_global_indices"));
}
#endif

#ifndef SPX_NO_64BIT_GLOBAL_INDICES
void CrsGraph::insert_global_indices(long long global_row, std::span<const long long> cols) {
  insert_generic<long long>(global_row, cols);
}

void CrsGraph::remove_global_indices(long long global_row) {
  require_unfilled("remove_global_indices");
  const int lrow = local_row_of(global_row, "remove_global_indices");
  data64_.global_rows[static_cast<std::size_t>(lrow)].clear();
}

int CrsGraph::extract_global_row_copy(long long global_row, std::span<long long> out) const {
  return extract_impl<long long>(global_row, out);
}

std::span<const long long> CrsGraph::extract_global_row_view(long long global_row) const {
  const int lrow = local_row_of(global_row, "extract_global_row_view");
  require_unfilled("extract_global_row_view");
  return data64_.global_rows[static_cast<std::size_t>(lrow)];
}

int CrsGraph::num_global_indices(long long global_row) const {
  return num_my_indices(local_row_of(global_row, "num_global_indices"));
}
#endif

std::span<const int> CrsGraph::extract_my_row_view(int local_row) const {
  require_filled("extract_my_row_view");
  if (local_row < 0 || local_row >= num_my_rows()) {
    throw_error(ErrorKind::ContractViolation, "extract_my_row_view: local row out of range");
  }
  const auto begin = static_cast<std::size_t>(data32_.row_offsets[static_cast<std::size_t>(local_row)]);
  const auto end = static_cast<std::size_t>(data32_.row_offsets[static_cast<std::size_t>(local_row) + 1]);
  return std::span<const int>(data32_.local_cols).subspan(begin, end - begin);
}

int CrsGraph::num_my_indices(int local_row) const {
  if (local_row < 0 || local_row >= num_my_rows()) {
    throw_error(ErrorKind::ContractViolation, "num_my_indices: local row out of range");
  }
  const auto r = static_cast<std::size_t>(local_row);
  if (filled_) return data32_.row_offsets[r + 1] - data32_.row_offsets[r];
  return row_map_.global_indices_int() ? static_cast<int>(data32_.global_rows[r].size())
                                       : static_cast<int>(data64_.global_rows[r].size());
}

int CrsGraph::num_my_entries() const {
  if (filled_) return static_cast<int>(data32_.local_cols.size());
  long long total = 0;
  for (int r = 0; r < num_my_rows(); ++r) total += num_my_indices(r);
  return narrow_count(total, "num_my_entries");
}

void CrsGraph::fill_complete() { fill_complete(row_map_, row_map_); }

void CrsGraph::fill_complete(const BlockMap& domain_map, const BlockMap& range_map) {
  require_unfilled("fill_complete");
  require_type_match(row_map_, domain_map, "fill_complete");
  require_type_match(row_map_, range_map, "fill_complete");
  detail::dispatch_width(row_map_.width_state(),
                         [&](auto tag) { fill_impl<decltype(tag)>(domain_map, range_map); });
}

template <class GO>
void CrsGraph::fill_impl(const BlockMap& domain_map, const BlockMap& range_map) {
  const Comm& comm = row_map_.comm();
  auto& rows = store<GO>().global_rows;

  std::vector<GO> referenced;
  for (const auto& row : rows) referenced.insert(referenced.end(), row.begin(), row.end());
  std::sort(referenced.begin(), referenced.end());
  referenced.erase(std::unique(referenced.begin(), referenced.end()), referenced.end());

  // Owned columns first, in domain-map order.
  std::vector<long long> col_gids;
  col_gids.reserve(referenced.size());
  owned_col_domain_lids_.clear();
  const auto domain_gids = detail::my_gids<GO>(domain_map);
  for (int dlid = 0; dlid < static_cast<int>(domain_gids.size()); ++dlid) {
    const GO g = domain_gids[static_cast<std::size_t>(dlid)];
    if (std::binary_search(referenced.begin(), referenced.end(), g)) {
      col_gids.push_back(g);
      owned_col_domain_lids_.push_back(dlid);
    }
  }
  num_owned_cols_ = static_cast<int>(col_gids.size());

  // Remote columns, grouped by owner, ascending GID within an owner.
  std::vector<GO> remote;
  for (GO g : referenced) {
    if (domain_map.data().lid_of_gid(g) < 0) remote.push_back(g);
  }
  const DirectoryEntries owners = get_directory_entries(domain_map, std::span<const GO>(remote), false);
  const bool bad_local =
      std::any_of(owners.procs.begin(), owners.procs.end(), [](int p) { return p < 0; });
  if (comm.max_all(bad_local ? 1 : 0) != 0) {
    throw_error(ErrorKind::InvalidColumn,
                "fill_complete: a column index is not present in the domain map");
  }
  std::vector<std::size_t> order(remote.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (owners.procs[a] != owners.procs[b]) return owners.procs[a] < owners.procs[b];
    return remote[a] < remote[b];
  });
  remote_col_owners_.clear();
  for (std::size_t i : order) {
    col_gids.push_back(remote[i]);
    remote_col_owners_.push_back(owners.procs[i]);
  }

  const IndexWidth width = std::is_same_v<GO, int> ? IndexWidth::I32 : IndexWidth::I64;
  col_map_ = BlockMap::from_list(-1, col_gids, domain_map.index_base64(), comm, width);

  // Pack. Within a row, entries stay in ascending global column order.
  const auto& col_data = col_map_->data();
  auto& packed = data32_;
  packed.row_offsets.assign(rows.size() + 1, 0);
  packed.local_cols.clear();
  long long diagonals = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const long long row_gid = row_map_.gid64(static_cast<int>(r));
    for (GO g : rows[r]) {
      packed.local_cols.push_back(col_data.lid_of_gid(g));
      if (static_cast<long long>(g) == row_gid) ++diagonals;
    }
    if (packed.local_cols.size() > static_cast<std::size_t>(INT_MAX)) {
      throw_error(ErrorKind::ContractViolation, "fill_complete: local entry count exceeds 32 bits");
    }
    packed.row_offsets[r + 1] = static_cast<int>(packed.local_cols.size());
  }
  rows.clear();
  rows.shrink_to_fit();

  const long long local[2] = {static_cast<long long>(packed.local_cols.size()), diagonals};
  const auto global = comm.sum_all(std::span<const long long>(local, 2));
  global_entries_ = global[0];
  global_diagonals_ = global[1];
  domain_map_ = domain_map;
  range_map_ = range_map;
  filled_ = true;
}

const BlockMap& CrsGraph::col_map() const {
  require_filled("col_map");
  return *col_map_;
}
const BlockMap& CrsGraph::domain_map() const {
  require_filled("domain_map");
  return *domain_map_;
}
const BlockMap& CrsGraph::range_map() const {
  require_filled("range_map");
  return *range_map_;
}

long long CrsGraph::num_global_rows64() const {
  require_filled("num_global_rows64");
  return range_map_->num_global_points64();
}
long long CrsGraph::num_global_cols64() const {
  require_filled("num_global_cols64");
  return domain_map_->num_global_points64();
}
long long CrsGraph::num_global_entries64() const {
  require_filled("num_global_entries64");
  return global_entries_;
}
long long CrsGraph::num_global_diagonals64() const {
  require_filled("num_global_diagonals64");
  return global_diagonals_;
}

#ifndef SPX_NO_32BIT_GLOBAL_INDICES
int CrsGraph::num_global_rows() const {
  require_width<int>("num_global_rows");
  return narrow_count(num_global_rows64(), "num_global_rows");
}
int CrsGraph::num_global_cols() const {
  require_width<int>("num_global_cols");
  return narrow_count(num_global_cols64(), "num_global_cols");
}
int CrsGraph::num_global_entries() const {
  require_width<int>("num_global_entries");
  return narrow_count(num_global_entries64(), "num_global_entries");
}
int CrsGraph::num_global_diagonals() const {
  require_width<int>("num_global_diagonals");
  return narrow_count(num_global_diagonals64(), "num_global_diagonals");
}
#endif

template <class GO>
const GraphIndexData<GO>& CrsGraph::index_data() const {
  if constexpr (std::is_same_v<GO, long long>) {
    if (!row_map_.global_indices_long_long()) {
      throw_error(ErrorKind::Width, "index_data<long long>: row map is not 64-bit");
    }
    if (filled_) {
      throw_error(ErrorKind::Lifecycle, "index_data<long long>: indices have been made local");
    }
    return data64_;
  } else {
    if (!row_map_.global_indices_int() && !filled_) {
      throw_error(ErrorKind::Width,
                  "index_data<int>: 64-bit graph whose indices have not been made local");
    }
    return data32_;
  }
}

#ifndef SPX_NO_32BIT_GLOBAL_INDICES
template void CrsGraph::insert_generic<int>(int, std::span<const int>);
template int CrsGraph::local_row_of<int>(int, const char*) const;
template const std::vector<int>& CrsGraph::global_row_set<int>(int) const;
#endif
#ifndef SPX_NO_64BIT_GLOBAL_INDICES
template void CrsGraph::insert_generic<long long>(long long, std::span<const long long>);
template int CrsGraph::local_row_of<long long>(long long, const char*) const;
template const std::vector<long long>& CrsGraph::global_row_set<long long>(int) const;
template const GraphIndexData<long long>& CrsGraph::index_data<long long>() const;
#endif
template const GraphIndexData<int>& CrsGraph::index_data<int>() const;

}  // namespace spx
