#include "spx/crs_matrix.hpp"

#include <algorithm>
#include <string>

#include "map_data.hpp"
#include "spx/error.hpp"

namespace spx {

CrsMatrix::CrsMatrix(const BlockMap& row_map) : graph_(row_map) {
  row_values_.resize(static_cast<std::size_t>(row_map.num_my_elements()));
}

template <class GO>
void CrsMatrix::insert_impl(GO global_row, std::span<const GO> cols,
                            std::span<const double> values) {
  if (graph_.filled()) throw_error(ErrorKind::Lifecycle, "insert_global_values: matrix is filled");
  if (cols.size() != values.size()) {
    throw_error(ErrorKind::ContractViolation, "insert_global_values: length mismatch");
  }
  const int lrow = graph_.local_row_of(global_row, "insert_global_values");
  auto& vals = row_values_[static_cast<std::size_t>(lrow)];
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const auto& set = graph_.global_row_set<GO>(lrow);
    auto it = std::lower_bound(set.begin(), set.end(), cols[k]);
    const auto pos = it - set.begin();
    if (it != set.end() && *it == cols[k]) {
      vals[static_cast<std::size_t>(pos)] += values[k];
    } else {
      graph_.insert_generic<GO>(global_row, cols.subspan(k, 1));
      vals.insert(vals.begin() + pos, values[k]);
    }
  }
}

template <class GO>
int CrsMatrix::modify_impl(GO global_row, std::span<const GO> cols, std::span<const double> values,
                           CombineMode mode) {
  if (cols.size() != values.size()) {
    throw_error(ErrorKind::ContractViolation, "modify_global_values: length mismatch");
  }
  const int lrow = graph_.local_row_of(global_row, "modify_global_values");
  int missing = 0;
  auto combine = [mode](double& entry, double v) {
    if (mode == CombineMode::Replace) entry = v;
    else entry += v;
  };
  if (!graph_.filled()) {
    const auto& set = graph_.global_row_set<GO>(lrow);
    auto& vals = row_values_[static_cast<std::size_t>(lrow)];
    for (std::size_t k = 0; k < cols.size(); ++k) {
      auto it = std::lower_bound(set.begin(), set.end(), cols[k]);
      if (it == set.end() || *it != cols[k]) {
        ++missing;
        continue;
      }
      combine(vals[static_cast<std::size_t>(it - set.begin())], values[k]);
    }
    return missing;
  }
  const auto& col_data = graph_.col_map().data();
  const auto row = graph_.extract_my_row_view(lrow);
  const auto offset = static_cast<std::size_t>(graph_.index_data<int>().row_offsets[static_cast<std::size_t>(lrow)]);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const int lcol = col_data.lid_of_gid(static_cast<long long>(cols[k]));
    auto it = lcol < 0 ? row.end() : std::find(row.begin(), row.end(), lcol);
    if (it == row.end()) {
      ++missing;
      continue;
    }
    combine(values_[offset + static_cast<std::size_t>(it - row.begin())], values[k]);
  }
  return missing;
}

template <class GO>
int CrsMatrix::extract_impl(GO global_row, std::span<GO> cols, std::span<double> values) const {
  const int lrow = graph_.local_row_of(global_row, "extract_global_row_copy");
  const int n = graph_.num_my_indices(lrow);
  if (values.size() < static_cast<std::size_t>(n)) {
    throw CapacityError(n, "extract_global_row_copy: value buffer too small");
  }
  const int got = graph_.extract_global_row_copy(global_row, cols);
  if (!graph_.filled()) {
    const auto& vals = row_values_[static_cast<std::size_t>(lrow)];
    std::copy(vals.begin(), vals.end(), values.begin());
  } else {
    const auto offset = static_cast<std::size_t>(graph_.index_data<int>().row_offsets[static_cast<std::size_t>(lrow)]);
    std::copy_n(values_.begin() + static_cast<std::ptrdiff_t>(offset), n, values.begin());
  }
  return got;
}

#ifndef SPX_NO_32BIT_GLOBAL_INDICES
void CrsMatrix::insert_global_values(int global_row, std::span<const int> cols,
                                     std::span<const double> values) {
  insert_impl(global_row, cols, values);
}
int CrsMatrix::modify_global_values(int global_row, std::span<const int> cols,
                                    std::span<const double> values, CombineMode mode) {
  return modify_impl(global_row, cols, values, mode);
}
int CrsMatrix::extract_global_row_copy(int global_row, std::span<int> cols,
                                       std::span<double> values) const {
  return extract_impl(global_row, cols, values);
}
#endif

#ifndef SPX_NO_64BIT_GLOBAL_INDICES
void CrsMatrix::insert_global_values(long long global_row, std::span<const long long> cols,
                                     std::span<const double> values) {
  insert_impl(global_row, cols, values);
}
int CrsMatrix::modify_global_values(long long global_row, std::span<const long long> cols,
                                    std::span<const double> values, CombineMode mode) {
  return modify_impl(global_row, cols, values, mode);
}
int CrsMatrix::extract_global_row_copy(long long global_row, std::span<long long> cols,
                                       std::span<double> values) const {
  return extract_impl(global_row, cols, values);
}
#endif

void CrsMatrix::fill_complete() { fill_complete(graph_.row_map(), graph_.row_map()); }

void CrsMatrix::fill_complete(const BlockMap& domain_map, const BlockMap& range_map) {
  graph_.fill_complete(domain_map, range_map);
  values_.clear();
  for (auto& row : row_values_) values_.insert(values_.end(), row.begin(), row.end());
  row_values_.clear();
  row_values_.shrink_to_fit();
  detail::dispatch_width(graph_.width_state(), [&](auto tag) { build_import<decltype(tag)>(); });
}

template <class GO>
void CrsMatrix::build_import() {
  const BlockMap& col_map = graph_.col_map();
  const Comm& comm = col_map.comm();
  const auto gids = detail::my_gids<GO>(col_map);
  const auto remote = gids.subspan(static_cast<std::size_t>(graph_.num_owned_cols()));
  if (comm.max_all(remote.empty() ? 0 : 1) == 0) return;

  auto result = CommPlan::create_from_recvs(comm, remote, graph_.remote_col_owners(), true);
  const auto& domain = graph_.domain_map().data();
  export_domain_lids_.clear();
  for (GO g : result.export_gids) {
    export_domain_lids_.push_back(domain.lid_of_gid(static_cast<long long>(g)));
  }
  import_plan_ = std::move(result.plan);
}

std::span<const double> CrsMatrix::packed_values() const {
  if (!graph_.filled()) throw_error(ErrorKind::Lifecycle, "packed_values: matrix is not filled");
  return values_;
}

StorageStats CrsMatrix::storage_stats() const {
  StorageStats s;
  s.bytes_per_value = static_cast<int>(sizeof(double));
  if (graph_.filled()) {
    s.bytes_per_packed_column_index =
        static_cast<int>(sizeof(decltype(graph_.index_data<int>().local_cols)::value_type));
  } else if (graph_.width_state() == WidthState::I64) {
    s.bytes_per_global_index_pre_fill = static_cast<int>(sizeof(long long));
  } else {
    s.bytes_per_global_index_pre_fill = static_cast<int>(sizeof(int));
  }
  return s;
}

int CrsMatrix::extract_my_row_copy(int local_row, std::span<double> values,
                                   std::span<int> local_cols) const {
  const auto row = graph_.extract_my_row_view(local_row);
  const int n = static_cast<int>(row.size());
  if (values.size() < row.size() || local_cols.size() < row.size()) {
    throw CapacityError(n, "extract_my_row_copy: buffer too small");
  }
  const auto offset = static_cast<std::size_t>(
      graph_.index_data<int>().row_offsets[static_cast<std::size_t>(local_row)]);
  std::copy(row.begin(), row.end(), local_cols.begin());
  std::copy_n(values_.begin() + static_cast<std::ptrdiff_t>(offset), n, values.begin());
  return n;
}

void CrsMatrix::multiply(bool transpose, const MultiVector& x, MultiVector& y) const {
  if (transpose) throw_error(ErrorKind::ContractViolation, "multiply: transpose is not supported");
  if (!graph_.filled()) throw_error(ErrorKind::Lifecycle, "multiply: matrix is not filled");
  require_type_match(graph_.row_map(), x.map(), "multiply");
  require_type_match(graph_.row_map(), y.map(), "multiply");
  const BlockMap& domain = graph_.domain_map();
  const BlockMap& range = graph_.range_map();
  if (x.my_length() != domain.num_my_points() || y.my_length() != range.num_my_points() ||
      x.num_vectors() != y.num_vectors()) {
    throw_error(ErrorKind::ContractViolation, "multiply: vector layouts do not match the matrix");
  }
  if (range.num_my_points() != graph_.num_my_rows()) {
    throw_error(ErrorKind::ContractViolation, "multiply: range map must match the row layout");
  }

  const auto owned = graph_.owned_col_domain_lids();
  const std::size_t num_cols = static_cast<std::size_t>(graph_.col_map().num_my_elements());
  const auto& packed = graph_.index_data<int>();
  std::vector<double> xcol(num_cols);
  std::vector<double> result(static_cast<std::size_t>(graph_.num_my_rows()));
  for (int j = 0; j < x.num_vectors(); ++j) {
    const auto xj = x.column(j);
    for (std::size_t k = 0; k < owned.size(); ++k) {
      xcol[k] = xj[static_cast<std::size_t>(owned[k])];
    }
    if (import_plan_) {
      std::vector<double> send(export_domain_lids_.size());
      for (std::size_t k = 0; k < send.size(); ++k) {
        send[k] = xj[static_cast<std::size_t>(export_domain_lids_[k])];
      }
      const auto recv =
          import_plan_->execute_items<double>(PlanDirection::Forward, std::span<const double>(send));
      std::copy(recv.begin(), recv.end(), xcol.begin() + static_cast<std::ptrdiff_t>(owned.size()));
    }
    for (std::size_t r = 0; r < result.size(); ++r) {
      double sum = 0.0;
      for (int k = packed.row_offsets[r]; k < packed.row_offsets[r + 1]; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        sum += values_[kk] * xcol[static_cast<std::size_t>(packed.local_cols[kk])];
      }
      result[r] = sum;
    }
    auto yj = y.column(j);
    std::copy(result.begin(), result.end(), yj.begin());
  }
}

void CrsMatrix::extract_diagonal_copy(Vector& diagonal) const {
  if (!graph_.filled()) throw_error(ErrorKind::Lifecycle, "extract_diagonal_copy: matrix is not filled");
  require_type_match(graph_.row_map(), diagonal.map(), "extract_diagonal_copy");
  if (diagonal.my_length() != graph_.num_my_rows()) {
    throw_error(ErrorKind::ContractViolation, "extract_diagonal_copy: length mismatch");
  }
  const BlockMap& row_map = graph_.row_map();
  const BlockMap& col_map = graph_.col_map();
  const auto& packed = graph_.index_data<int>();
  for (int r = 0; r < graph_.num_my_rows(); ++r) {
    const auto rr = static_cast<std::size_t>(r);
    const int diag_lid = col_map.data().lid_of_gid(row_map.gid64(r));
    double d = 0.0;
    for (int k = packed.row_offsets[rr]; k < packed.row_offsets[rr + 1]; ++k) {
      if (packed.local_cols[static_cast<std::size_t>(k)] == diag_lid) {
        d = values_[static_cast<std::size_t>(k)];
        break;
      }
    }
    diagonal[r] = d;
  }
}

}  // namespace spx
