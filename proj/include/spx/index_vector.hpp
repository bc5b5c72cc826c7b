#ifndef SPX_INDEX_VECTOR_HPP
#define SPX_INDEX_VECTOR_HPP

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "spx/block_map.hpp"
#include "spx/config.hpp"
#include "spx/error.hpp"

namespace spx {

/// Map-distributed dense vector of index values, one entry per local element.
/// Index storage only: no arithmetic.
template <class T>
class BasicIndexVector {
 public:
  explicit BasicIndexVector(const BlockMap& map, T fill_value = T{})
      : map_(map), values_(static_cast<std::size_t>(map.num_my_elements()), fill_value) {}

  const BlockMap& map() const { return map_; }
  int my_length() const { return static_cast<int>(values_.size()); }

  T get(int lid) const { return values_.at(checked(lid)); }
  void set(int lid, T value) { values_.at(checked(lid)) = value; }
  T operator[](int lid) const { return values_[static_cast<std::size_t>(lid)]; }
  T& operator[](int lid) { return values_[static_cast<std::size_t>(lid)]; }

  void put_value(T value) { std::fill(values_.begin(), values_.end(), value); }
  std::span<const T> values() const { return values_; }
  std::span<T> values() { return values_; }

  /// Copies the local values into `out`.
  void extract_copy(std::span<T> out) const {
    if (out.size() < values_.size()) {
      throw CapacityError(my_length(), "extract_copy: output buffer too small");
    }
    std::copy(values_.begin(), values_.end(), out.begin());
  }
  std::vector<T> extract_copy() const { return values_; }

 private:
  std::size_t checked(int lid) const {
    if (lid < 0 || lid >= my_length()) {
      throw_error(ErrorKind::ContractViolation, "local index " + std::to_string(lid) + " out of range");
    }
    return static_cast<std::size_t>(lid);
  }

  BlockMap map_;
  std::vector<T> values_;
};

/// Rank-local resizable dense vector of index values.
template <class T>
class BasicSerialDenseIndexVector {
 public:
  BasicSerialDenseIndexVector() = default;
  explicit BasicSerialDenseIndexVector(int length) { size(length); }
  explicit BasicSerialDenseIndexVector(std::span<const T> values)
      : values_(values.begin(), values.end()) {}

  /// Sets the length to `length`, zero-filling everything.
  void size(int length) {
    require_length(length);
    values_.assign(static_cast<std::size_t>(length), T{});
  }
  /// Changes the length, keeping the common prefix; new entries are zero.
  void resize(int length) {
    require_length(length);
    values_.resize(static_cast<std::size_t>(length), T{});
  }

  int length() const { return static_cast<int>(values_.size()); }
  T operator()(int i) const { return values_.at(static_cast<std::size_t>(i)); }
  T& operator()(int i) { return values_.at(static_cast<std::size_t>(i)); }
  T operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  T& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
  std::span<const T> values() const { return values_; }
  std::span<T> values() { return values_; }

 private:
  static void require_length(int length) {
    if (length < 0) throw_error(ErrorKind::ContractViolation, "length must be >= 0");
  }
  std::vector<T> values_;
};

#ifndef SPX_NO_32BIT_GLOBAL_INDICES
using IntVector = BasicIndexVector<int>;
using IntSerialDenseVector = BasicSerialDenseIndexVector<int>;
#endif
#ifndef SPX_NO_64BIT_GLOBAL_INDICES
using LongLongVector = BasicIndexVector<long long>;
using LongLongSerialDenseVector = BasicSerialDenseIndexVector<long long>;
#endif

/// Compile-time selection of the index container family for a GID type, for
/// width-generic code: GidTypeVector<int>::impl is IntVector and
/// GidTypeVector<long long>::impl is LongLongVector.
template <class GO>
struct GidTypeVector;
template <class GO>
struct GidTypeSerialDenseVector;

#ifndef SPX_NO_32BIT_GLOBAL_INDICES
template <>
struct GidTypeVector<int> {
  using impl = IntVector;
};
template <>
struct GidTypeSerialDenseVector<int> {
  using impl = IntSerialDenseVector;
};
#endif
#ifndef SPX_NO_64BIT_GLOBAL_INDICES
template <>
struct GidTypeVector<long long> {
  using impl = LongLongVector;
};
template <>
struct GidTypeSerialDenseVector<long long> {
  using impl = LongLongSerialDenseVector;
};
#endif

}  // namespace spx

#endif  // SPX_INDEX_VECTOR_HPP
