#ifndef SPX_SRC_MAP_DATA_HPP
#define SPX_SRC_MAP_DATA_HPP

#include <memory>
#include <span>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "spx/block_map.hpp"
#include "spx/directory.hpp"
#include "spx/error.hpp"

namespace spx::detail {

struct MapData {
  const Comm* comm = nullptr;
  WidthState width = WidthState::Invalid;
  int element_size = 1;
  long long index_base = 0;
  long long num_global = 0;

  // Exactly one of these holds the local GIDs, matching `width`.
  std::vector<int> gids32;
  std::vector<long long> gids64;

  long long min_my = -1, max_my = -1, min_all = -1, max_all = -1;

  // Linear maps: the concatenation of all ranks' GIDs in rank order is the
  // range [linear_start, linear_start + num_global); rank r owns offsets
  // [rank_offsets[r], rank_offsets[r+1]).
  bool linear = false;
  long long linear_start = 0;
  std::vector<long long> rank_offsets;

  // Non-linear maps: GID -> LID.
  std::unordered_map<long long, int> lid_of;

  // Built on first directory query.
  mutable std::shared_ptr<const Directory> directory;

  int num_my() const {
    return static_cast<int>(width == WidthState::I64 ? gids64.size() : gids32.size());
  }
  long long gid_at(int lid) const {
    return width == WidthState::I64 ? gids64[static_cast<std::size_t>(lid)]
                                    : static_cast<long long>(gids32[static_cast<std::size_t>(lid)]);
  }
  int lid_of_gid(long long gid) const;
};

/// Owner lookup service behind get_directory_entries for non-linear maps.
///
/// GIDs are registered, as (gid, owner rank, owner LID) records, with the
/// arithmetic owner of the GID's slot in a uniform contiguous distribution of
/// [min_all_gid, max_all_gid]. Queries go to the same slot owner and the
/// answers come back along the reversed route.
class Directory {
 public:
  explicit Directory(const BlockMap& map);

  DirectoryEntries query(std::span<const long long> gids, bool want_lids, bool want_sizes,
                         bool high_rank_sharing) const;

 private:
  int slot_owner(long long gid) const;

  struct Owner {
    int rank;
    int lid;
  };

  const Comm* comm_;
  int element_size_;
  bool empty_;
  long long lo_, hi_;
  std::unordered_map<long long, std::vector<Owner>> owners_;  // sorted by rank
};

/// Typed view of the local GIDs, for width-generic internal code.
template <class GO>
std::span<const GO> my_gids(const BlockMap& map) {
  if constexpr (std::is_same_v<GO, int>) {
    return map.data().gids32;
  } else {
    return map.data().gids64;
  }
}

/// Calls fn(GO{}) with GO = int or long long matching the map width. Widths
/// compiled out of the build are never instantiated.
template <class Fn>
decltype(auto) dispatch_width(WidthState w, Fn&& fn) {
#ifndef SPX_NO_32BIT_GLOBAL_INDICES
  if (w == WidthState::I32) return fn(int{});
#endif
#ifndef SPX_NO_64BIT_GLOBAL_INDICES
  if (w == WidthState::I64) return fn(static_cast<long long>(0));
#endif
  throw_error(ErrorKind::WidthState, "object has no valid global index width");
}

}  // namespace spx::detail

#endif
