#ifndef SPX_MULTI_VECTOR_HPP
#define SPX_MULTI_VECTOR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "spx/block_map.hpp"
#include "spx/config.hpp"

namespace spx {

enum class CombineMode { Replace, SumInto };

enum class ModifyStatus { Ok, NotOwned };

/// Map-distributed dense columns of doubles. Column j holds
/// map.num_my_points() values stored contiguously.
///
/// Operations between multivectors require type-matching maps
/// (ErrorKind::WidthMix otherwise) and equal local lengths.
class MultiVector {
 public:
  MultiVector(const BlockMap& map, int num_vectors);

  const BlockMap& map() const { return map_; }
  int num_vectors() const { return num_vectors_; }
  int my_length() const { return my_length_; }
  long long global_length64() const { return map_.num_global_points64(); }
#ifndef SPX_NO_32BIT_GLOBAL_INDICES
  int global_length() const;
#endif

  std::span<double> column(int j);
  std::span<const double> column(int j) const;
  double& operator()(int local_row, int j) { return column(j)[static_cast<std::size_t>(local_row)]; }
  double operator()(int local_row, int j) const { return column(j)[static_cast<std::size_t>(local_row)]; }

  /// Changes the entry at (gid, block_offset) in column vector_index if the
  /// GID is owned here; otherwise returns ModifyStatus::NotOwned and leaves
  /// the vector untouched.
#ifndef SPX_NO_32BIT_GLOBAL_INDICES
  ModifyStatus modify_global_value(int gid, int block_offset, int vector_index, double value,
                                   CombineMode mode);
  ModifyStatus replace_global_value(int gid, int vector_index, double value) {
    return modify_global_value(gid, 0, vector_index, value, CombineMode::Replace);
  }
  ModifyStatus sum_into_global_value(int gid, int vector_index, double value) {
    return modify_global_value(gid, 0, vector_index, value, CombineMode::SumInto);
  }
  /// Batch form; returns how many GIDs were not owned here.
  int modify_global_values(std::span<const int> gids, std::span<const double> values,
                           int vector_index, CombineMode mode);
#endif
#ifndef SPX_NO_64BIT_GLOBAL_INDICES
  ModifyStatus modify_global_value(long long gid, int block_offset, int vector_index, double value,
                                   CombineMode mode);
  ModifyStatus replace_global_value(long long gid, int vector_index, double value) {
    return modify_global_value(gid, 0, vector_index, value, CombineMode::Replace);
  }
  ModifyStatus sum_into_global_value(long long gid, int vector_index, double value) {
    return modify_global_value(gid, 0, vector_index, value, CombineMode::SumInto);
  }
  int modify_global_values(std::span<const long long> gids, std::span<const double> values,
                           int vector_index, CombineMode mode);
#endif

  void put_scalar(double s);
  /// Uniform values in [-1, 1] from a generator seeded with seed + rank.
  void set_random(std::uint64_t seed);
  /// this <- alpha * x + beta * this
  void update(double alpha, const MultiVector& x, double beta);
  /// this <- alpha * x + beta * y + gamma * this
  void update(double alpha, const MultiVector& x, double beta, const MultiVector& y, double gamma);
  /// this(i, j) <- x(i, j) * y(i, j) * alpha + gamma * this(i, j)
  void multiply_elementwise(double alpha, const MultiVector& x, const MultiVector& y, double gamma);

  /// Per-column dot products and norms. Collective.
  std::vector<double> dot(const MultiVector& other) const;
  std::vector<double> norm2() const;
  std::vector<double> norm_inf() const;

 private:
  void check_compatible(const MultiVector& other, const char* who) const;
  template <class GO>
  ModifyStatus modify_impl(GO gid, int block_offset, int vector_index, double value,
                           CombineMode mode);

  BlockMap map_;
  int num_vectors_;
  int my_length_;
  std::vector<double> values_;
};

/// Single-column MultiVector.
class Vector : public MultiVector {
 public:
  explicit Vector(const BlockMap& map) : MultiVector(map, 1) {}
  double& operator[](int i) { return (*this)(i, 0); }
  double operator[](int i) const { return (*this)(i, 0); }
  std::span<double> values() { return column(0); }
  std::span<const double> values() const { return column(0); }
  double dot(const Vector& other) const { return MultiVector::dot(other)[0]; }
  double norm2() const { return MultiVector::norm2()[0]; }
};

}  // namespace spx

#endif  // SPX_MULTI_VECTOR_HPP
