#include "spx/multi_vector.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "spx/error.hpp"

namespace spx {

MultiVector::MultiVector(const BlockMap& map, int num_vectors)
    : map_(map), num_vectors_(num_vectors), my_length_(map.num_my_points()) {
  if (!map.global_indices_type_valid()) {
    throw_error(ErrorKind::WidthState, "MultiVector: map has no valid global index width");
  }
  if (num_vectors < 1) throw_error(ErrorKind::ContractViolation, "MultiVector: need >= 1 vector");
  values_.resize(static_cast<std::size_t>(my_length_) * static_cast<std::size_t>(num_vectors));
}

#ifndef SPX_NO_32BIT_GLOBAL_INDICES
int MultiVector::global_length() const {
  if (!map_.global_indices_int()) {
    throw_error(ErrorKind::Width, "global_length: called on a 64-bit vector; use global_length64");
  }
  return map_.num_global_points();
}
#endif

std::span<double> MultiVector::column(int j) {
  if (j < 0 || j >= num_vectors_) {
    throw_error(ErrorKind::ContractViolation, "vector index " + std::to_string(j) + " out of range");
  }
  return {values_.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(my_length_),
          static_cast<std::size_t>(my_length_)};
}

std::span<const double> MultiVector::column(int j) const {
  return const_cast<MultiVector*>(this)->column(j);
}

template <class GO>
ModifyStatus MultiVector::modify_impl(GO gid, int block_offset, int vector_index, double value,
                                      CombineMode mode) {
  if (vector_index < 0 || vector_index >= num_vectors_) {
    throw_error(ErrorKind::ContractViolation,
                "vector index " + std::to_string(vector_index) + " out of range");
  }
  if (block_offset < 0 || block_offset >= map_.element_size()) {
    throw_error(ErrorKind::ContractViolation, "block offset out of range");
  }
  const int lid = map_.lid(gid);
  if (lid < 0) return ModifyStatus::NotOwned;
  double& entry = column(vector_index)[static_cast<std::size_t>(lid * map_.element_size() + block_offset)];
  if (mode == CombineMode::Replace) {
    entry = value;
  } else {
    entry += value;
  }
  return ModifyStatus::Ok;
}

#ifndef SPX_NO_32BIT_GLOBAL_INDICES
ModifyStatus MultiVector::modify_global_value(int gid, int block_offset, int vector_index,
                                              double value, CombineMode mode) {
  return modify_impl(gid, block_offset, vector_index, value, mode);
}

int MultiVector::modify_global_values(std::span<const int> gids, std::span<const double> values,
                                      int vector_index, CombineMode mode) {
  if (gids.size() != values.size()) {
    throw_error(ErrorKind::ContractViolation, "modify_global_values: length mismatch");
  }
  int not_owned = 0;
  for (std::size_t i = 0; i < gids.size(); ++i) {
    if (modify_impl(gids[i], 0, vector_index, values[i], mode) == ModifyStatus::NotOwned) ++not_owned;
  }
  return not_owned;
}
#endif

#ifndef SPX_NO_64BIT_GLOBAL_INDICES
ModifyStatus MultiVector::modify_global_value(long long gid, int block_offset, int vector_index,
                                              double value, CombineMode mode) {
  return modify_impl(gid, block_offset, vector_index, value, mode);
}

int MultiVector::modify_global_values(std::span<const long long> gids,
                                      std::span<const double> values, int vector_index,
                                      CombineMode mode) {
  if (gids.size() != values.size()) {
    throw_error(ErrorKind::ContractViolation, "modify_global_values: length mismatch");
  }
  int not_owned = 0;
  for (std::size_t i = 0; i < gids.size(); ++i) {
    if (modify_impl(gids[i], 0, vector_index, values[i], mode) == ModifyStatus::NotOwned) ++not_owned;
  }
  return not_owned;
}
#endif

void MultiVector::put_scalar(double s) { std::fill(values_.begin(), values_.end(), s); }

void MultiVector::set_random(std::uint64_t seed) {
  std::mt19937_64 gen(seed + static_cast<std::uint64_t>(map_.comm().rank()));
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& v : values_) v = dist(gen);
}

void MultiVector::check_compatible(const MultiVector& other, const char* who) const {
  require_type_match(map_, other.map_, who);
  if (other.my_length_ != my_length_ || other.num_vectors_ != num_vectors_) {
    throw_error(ErrorKind::ContractViolation, std::string(who) + ": local lengths differ");
  }
}

void MultiVector::update(double alpha, const MultiVector& x, double beta) {
  check_compatible(x, "update");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    values_[i] = alpha * x.values_[i] + beta * values_[i];
  }
}

void MultiVector::update(double alpha, const MultiVector& x, double beta, const MultiVector& y,
                         double gamma) {
  check_compatible(x, "update");
  check_compatible(y, "update");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    values_[i] = alpha * x.values_[i] + beta * y.values_[i] + gamma * values_[i];
  }
}

void MultiVector::multiply_elementwise(double alpha, const MultiVector& x, const MultiVector& y,
                                       double gamma) {
  check_compatible(x, "multiply_elementwise");
  check_compatible(y, "multiply_elementwise");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    values_[i] = alpha * x.values_[i] * y.values_[i] + gamma * values_[i];
  }
}

std::vector<double> MultiVector::dot(const MultiVector& other) const {
  check_compatible(other, "dot");
  std::vector<double> local(static_cast<std::size_t>(num_vectors_), 0.0);
  for (int j = 0; j < num_vectors_; ++j) {
    auto a = column(j);
    auto b = other.column(j);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    local[static_cast<std::size_t>(j)] = s;
  }
  return map_.comm().sum_all(std::span<const double>(local));
}

std::vector<double> MultiVector::norm2() const {
  auto sq = dot(*this);
  for (double& v : sq) v = std::sqrt(v);
  return sq;
}

std::vector<double> MultiVector::norm_inf() const {
  std::vector<double> local(static_cast<std::size_t>(num_vectors_), 0.0);
  for (int j = 0; j < num_vectors_; ++j) {
    for (double v : column(j)) {
      local[static_cast<std::size_t>(j)] = std::max(local[static_cast<std::size_t>(j)], std::abs(v));
    }
  }
  return map_.comm().max_all(std::span<const double>(local));
}

}  // namespace spx
