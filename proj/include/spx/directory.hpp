#ifndef SPX_DIRECTORY_HPP
#define SPX_DIRECTORY_HPP

#include <span>
#include <vector>

#include "spx/block_map.hpp"
#include "spx/config.hpp"

namespace spx {

/// Owner information for a list of queried GIDs. Entries for GIDs that no
/// rank owns are -1. `lids` and `sizes` are empty unless requested.
struct DirectoryEntries {
  std::vector<int> procs;
  std::vector<int> lids;
  std::vector<int> sizes;
};

/// Resolves the owning rank (and optionally the owner's LID and the element
/// size) of arbitrary GIDs. Collective unless the map is linear, in which case
/// the answer is computed locally without communication.
///
/// A GID owned by several ranks resolves to the lowest such rank, or to the
/// highest when `high_rank_sharing_procs` is set.
#ifndef SPX_NO_32BIT_GLOBAL_INDICES
DirectoryEntries get_directory_entries(const BlockMap& map, std::span<const int> gids,
                                       bool want_lids = true, bool want_sizes = false,
                                       bool high_rank_sharing_procs = false);
#endif
#ifndef SPX_NO_64BIT_GLOBAL_INDICES
DirectoryEntries get_directory_entries(const BlockMap& map, std::span<const long long> gids,
                                       bool want_lids = true, bool want_sizes = false,
                                       bool high_rank_sharing_procs = false);
#endif

}  // namespace spx

#endif  // SPX_DIRECTORY_HPP
