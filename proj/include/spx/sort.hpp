#ifndef SPX_SORT_HPP
#define SPX_SORT_HPP

#include <span>

#include "spx/config.hpp"

namespace spx {

/// Sorts `keys` in place and applies the same permutation to every companion
/// array. Companion lists may be empty; every companion must have the same
/// length as `keys` (ErrorKind::ContractViolation otherwise). The order of
/// companions attached to equal keys is unspecified.
void sort(bool ascending, std::span<int> keys, std::span<const std::span<double>> double_companions,
          std::span<const std::span<int>> int_companions,
          std::span<const std::span<long long>> long_long_companions);

#ifndef SPX_NO_64BIT_GLOBAL_INDICES
void sort(bool ascending, std::span<long long> keys,
          std::span<const std::span<double>> double_companions,
          std::span<const std::span<int>> int_companions,
          std::span<const std::span<long long>> long_long_companions);
#endif

}  // namespace spx

#endif  // SPX_SORT_HPP
