#ifndef SPX_MULTI_MODE_HPP
#define SPX_MULTI_MODE_HPP

#include <span>

#include "spx/block_map.hpp"
#include "spx/config.hpp"
#include "spx/error.hpp"

namespace spx {

namespace detail {
template <class GO>
long long checksum_gids(std::span<const GO> gids, long long index_base) {
  long long sum = 0;
  for (GO g : gids) sum += static_cast<long long>(g) - index_base;
  return sum;
}
}  // namespace detail

/// Sum of (gid - index_base) over the locally owned GIDs. Written once for
/// all three build modes: each width's branch is compiled only when that
/// width is available.
inline long long local_gid_checksum(const BlockMap& map) {
#ifndef SPX_NO_32BIT_GLOBAL_INDICES
  if (map.global_indices_int()) {
    return detail::checksum_gids(map.my_global_elements(), map.index_base64());
  } else
#endif
#ifndef SPX_NO_64BIT_GLOBAL_INDICES
  if (map.global_indices_long_long()) {
    return detail::checksum_gids(map.my_global_elements64(), map.index_base64());
  } else
#endif
    throw_error(ErrorKind::WidthState, "local_gid_checksum: global index type unknown");
}

}  // namespace spx

#endif  // SPX_MULTI_MODE_HPP
