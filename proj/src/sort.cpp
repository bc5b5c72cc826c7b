#include "spx/sort.hpp"

#include <utility>

#include "spx/error.hpp"

namespace spx {

namespace {

template <class Companion>
void check_lengths(std::span<const std::span<Companion>> companions, std::size_t n) {
  for (const auto& c : companions) {
    if (c.size() != n) {
      throw_error(ErrorKind::ContractViolation, "sort: companion array length differs from keys");
    }
  }
}

// Shell sort with Knuth gaps; every key move is mirrored in the companions.
template <class K>
void shell_sort(bool ascending, std::span<K> keys, std::span<const std::span<double>> dc,
                std::span<const std::span<int>> ic, std::span<const std::span<long long>> lc) {
  const std::size_t n = keys.size();
  check_lengths(dc, n);
  check_lengths(ic, n);
  check_lengths(lc, n);

  auto before = [ascending](K a, K b) { return ascending ? a < b : b < a; };

  std::size_t gap = 1;
  while (gap < n / 3) gap = 3 * gap + 1;
  for (; gap > 0; gap /= 3) {
    for (std::size_t i = gap; i < n; ++i) {
      for (std::size_t j = i; j >= gap && before(keys[j], keys[j - gap]); j -= gap) {
        std::swap(keys[j], keys[j - gap]);
        for (const auto& c : dc) std::swap(c[j], c[j - gap]);
        for (const auto& c : ic) std::swap(c[j], c[j - gap]);
        for (const auto& c : lc) std::swap(c[j], c[j - gap]);
      }
    }
  }
}

}  // namespace

void sort(bool ascending, std::span<int> keys, std::span<const std::span<double>> dc,
          std::span<const std::span<int>> ic, std::span<const std::span<long long>> lc) {
  shell_sort(ascending, keys, dc, ic, lc);
}

#ifndef SPX_NO_64BIT_GLOBAL_INDICES
void sort(bool ascending, std::span<long long> keys, std::span<const std::span<double>> dc,
          std::span<const std::span<int>> ic, std::span<const std::span<long long>> lc) {
  shell_sort(ascending, keys, dc, ic, lc);
}
#endif

}  // namespace spx
