#include "spx/directory.hpp"

#include <algorithm>
#include <string>

#include "map_data.hpp"
#include "spx/distributor.hpp"
#include "spx/error.hpp"

namespace spx {

namespace detail {

namespace {

struct Registration {
  long long gid;
  int rank;
  int lid;
};

struct Answer {
  int rank;
  int lid;
};

}  // namespace

Directory::Directory(const BlockMap& map)
    : comm_(&map.comm()),
      element_size_(map.element_size()),
      empty_(map.num_global_elements64() == 0),
      lo_(map.min_all_gid64()),
      hi_(map.max_all_gid64()) {
  const int n = map.num_my_elements();
  std::vector<Registration> regs;
  std::vector<int> dest;
  regs.reserve(static_cast<std::size_t>(n));
  dest.reserve(static_cast<std::size_t>(n));
  for (int lid = 0; lid < n; ++lid) {
    const long long g = map.gid64(lid);
    regs.push_back({g, comm_->rank(), lid});
    dest.push_back(slot_owner(g));
  }
  const CommPlan plan = CommPlan::create_from_sends(*comm_, dest, true);
  const auto received =
      plan.execute_items<Registration>(PlanDirection::Forward, std::span<const Registration>(regs));
  for (const Registration& r : received) owners_[r.gid].push_back({r.rank, r.lid});
  for (auto& [gid, list] : owners_) {
    std::sort(list.begin(), list.end(), [](const Owner& a, const Owner& b) { return a.rank < b.rank; });
  }
}

int Directory::slot_owner(long long gid) const {
  // Uniform division of [lo_, hi_] over the ranks; the first `extra` ranks
  // hold one more slot.
  const long long nslots = hi_ - lo_ + 1;
  const long long nranks = comm_->size();
  const long long per = nslots / nranks;
  const long long extra = nslots % nranks;
  const long long off = gid - lo_;
  const long long cut = extra * (per + 1);
  if (off < cut) return static_cast<int>(off / (per + 1));
  return static_cast<int>(extra + (off - cut) / per);
}

DirectoryEntries Directory::query(std::span<const long long> gids, bool want_lids,
                                  bool want_sizes, bool high_rank_sharing) const {
  const auto n = gids.size();
  DirectoryEntries out;
  out.procs.assign(n, -1);
  if (want_lids) out.lids.assign(n, -1);
  if (want_sizes) out.sizes.assign(n, -1);

  // Out-of-range GIDs are answered here; the rest travel to their slot owner.
  std::vector<long long> asked;
  std::vector<int> dest;
  std::vector<std::size_t> position;
  for (std::size_t i = 0; i < n; ++i) {
    if (empty_ || gids[i] < lo_ || gids[i] > hi_) continue;
    asked.push_back(gids[i]);
    dest.push_back(slot_owner(gids[i]));
    position.push_back(i);
  }
  const CommPlan plan = CommPlan::create_from_sends(*comm_, dest, true);
  const auto incoming =
      plan.execute_items<long long>(PlanDirection::Forward, std::span<const long long>(asked));

  std::vector<Answer> answers;
  answers.reserve(incoming.size());
  for (long long g : incoming) {
    auto it = owners_.find(g);
    if (it == owners_.end()) {
      answers.push_back({-1, -1});
    } else {
      const Owner& o = high_rank_sharing ? it->second.back() : it->second.front();
      answers.push_back({o.rank, o.lid});
    }
  }
  const auto replies =
      plan.execute_items<Answer>(PlanDirection::Reverse, std::span<const Answer>(answers));
  for (std::size_t k = 0; k < replies.size(); ++k) {
    const std::size_t i = position[k];
    out.procs[i] = replies[k].rank;
    if (want_lids) out.lids[i] = replies[k].lid;
    if (want_sizes && replies[k].rank >= 0) out.sizes[i] = element_size_;
  }
  return out;
}

}  // namespace detail

namespace {

DirectoryEntries linear_entries(const BlockMap& map, std::span<const long long> gids,
                                bool want_lids, bool want_sizes) {
  const auto& d = map.data();
  DirectoryEntries out;
  out.procs.resize(gids.size());
  if (want_lids) out.lids.resize(gids.size());
  if (want_sizes) out.sizes.resize(gids.size());
  for (std::size_t i = 0; i < gids.size(); ++i) {
    const int owner = map.linear_owner(gids[i]);
    out.procs[i] = owner;
    if (want_lids) {
      out.lids[i] = owner < 0 ? -1
                              : static_cast<int>(gids[i] - d.linear_start -
                                                 d.rank_offsets[static_cast<std::size_t>(owner)]);
    }
    if (want_sizes) out.sizes[i] = owner < 0 ? -1 : map.element_size();
  }
  return out;
}

DirectoryEntries entries_impl(const BlockMap& map, std::span<const long long> gids,
                              bool want_lids, bool want_sizes, bool high_rank_sharing) {
  if (!map.global_indices_type_valid()) {
    throw_error(ErrorKind::WidthState, "get_directory_entries: map has no valid width");
  }
  if (map.linear_map()) return linear_entries(map, gids, want_lids, want_sizes);
  return map.directory().query(gids, want_lids, want_sizes, high_rank_sharing);
}

}  // namespace

#ifndef SPX_NO_32BIT_GLOBAL_INDICES
DirectoryEntries get_directory_entries(const BlockMap& map, std::span<const int> gids,
                                       bool want_lids, bool want_sizes,
                                       bool high_rank_sharing_procs) {
  if (map.global_indices_long_long()) {
    throw_error(ErrorKind::Width, "get_directory_entries: 32-bit GIDs queried on a 64-bit map");
  }
  std::vector<long long> wide(gids.begin(), gids.end());
  return entries_impl(map, wide, want_lids, want_sizes, high_rank_sharing_procs);
}
#endif

#ifndef SPX_NO_64BIT_GLOBAL_INDICES
DirectoryEntries get_directory_entries(const BlockMap& map, std::span<const long long> gids,
                                       bool want_lids, bool want_sizes,
                                       bool high_rank_sharing_procs) {
  return entries_impl(map, gids, want_lids, want_sizes, high_rank_sharing_procs);
}
#endif

}  // namespace spx
