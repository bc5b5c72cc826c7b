#include "spx/block_map.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <string>
#include <unordered_set>

#include "map_data.hpp"
#include "spx/error.hpp"

namespace spx {

using detail::MapData;

const char* to_string(WidthState w) {
  switch (w) {
    case WidthState::Invalid: return "invalid";
    case WidthState::I32: return "32";
    case WidthState::I64: return "64";
  }
  return "invalid";
}

namespace {

constexpr long long kIntMin = INT_MIN;
constexpr long long kIntMax = INT_MAX;

bool fits_int(long long v) { return v >= kIntMin && v <= kIntMax; }

void require_width_compiled(IndexWidth w) {
  if (w == IndexWidth::I32 && !kHaveGlobalIndices32) {
    throw_error(ErrorKind::Width, "32-bit global indices are disabled in this build");
  }
  if (w == IndexWidth::I64 && !kHaveGlobalIndices64) {
    throw_error(ErrorKind::Width, "64-bit global indices are disabled in this build");
  }
}

void require_element_size(int element_size) {
  if (element_size < 1) {
    throw_error(ErrorKind::ContractViolation, "element size must be >= 1");
  }
}

// Fills the global aggregates. Collective.
void finish_aggregates(MapData& d) {
  const Comm& comm = *d.comm;
  const int n = d.num_my();
  const long long sentinel = d.index_base - 1;
  if (n > 0) {
    if (d.linear) {
      d.min_my = d.gid_at(0);
      d.max_my = d.gid_at(n - 1);
    } else {
      d.min_my = LLONG_MAX;
      d.max_my = LLONG_MIN;
      for (int i = 0; i < n; ++i) {
        d.min_my = std::min(d.min_my, d.gid_at(i));
        d.max_my = std::max(d.max_my, d.gid_at(i));
      }
    }
  }
  const long long mins = comm.min_all(n > 0 ? d.min_my : LLONG_MAX);
  const long long maxs = comm.max_all(n > 0 ? d.max_my : LLONG_MIN);
  if (n == 0) d.min_my = d.max_my = sentinel;
  if (mins == LLONG_MAX) {
    d.min_all = d.max_all = sentinel;
  } else {
    d.min_all = mins;
    d.max_all = maxs;
  }
}

std::shared_ptr<MapData> make_uniform(long long num_global, long long index_base,
                                      const Comm& comm, WidthState width, int element_size) {
  require_element_size(element_size);
  if (num_global < 0) {
    throw_error(ErrorKind::ContractViolation, "number of global elements must be >= 0");
  }
  if (width == WidthState::I32) {
    if (!fits_int(index_base - 1) || !fits_int(num_global) ||
        (num_global > 0 && !fits_int(index_base + num_global - 1))) {
      throw_error(ErrorKind::WidthRange,
                  "uniform map extent does not fit 32-bit global indices");
    }
  }
  auto d = std::make_shared<MapData>();
  d->comm = &comm;
  d->width = width;
  d->element_size = element_size;
  d->index_base = index_base;
  d->num_global = num_global;

  const long long nranks = comm.size();
  const long long base_count = num_global / nranks;
  const long long remainder = num_global % nranks;
  d->rank_offsets.resize(static_cast<std::size_t>(nranks) + 1);
  d->rank_offsets[0] = 0;
  for (long long p = 0; p < nranks; ++p) {
    const long long count = base_count + (p < remainder ? 1 : 0);
    d->rank_offsets[static_cast<std::size_t>(p) + 1] = d->rank_offsets[static_cast<std::size_t>(p)] + count;
  }
  const long long count = base_count + (comm.rank() < remainder ? 1 : 0);
  if (count > kIntMax) {
    throw_error(ErrorKind::ContractViolation, "local element count does not fit 32 bits");
  }
  const long long first = index_base + d->rank_offsets[static_cast<std::size_t>(comm.rank())];
  if (width == WidthState::I32) {
    d->gids32.resize(static_cast<std::size_t>(count));
    std::iota(d->gids32.begin(), d->gids32.end(), static_cast<int>(first));
  } else {
    d->gids64.resize(static_cast<std::size_t>(count));
    std::iota(d->gids64.begin(), d->gids64.end(), first);
  }
  d->linear = true;
  d->linear_start = index_base;
  finish_aggregates(*d);
  return d;
}

template <class GO>
std::shared_ptr<MapData> make_from_list(long long num_global, std::span<const GO> my_gids,
                                        long long index_base, const Comm& comm,
                                        WidthState width, int element_size) {
  require_element_size(element_size);
  if (num_global < -1) {
    throw_error(ErrorKind::ContractViolation, "number of global elements must be >= -1");
  }
  if (my_gids.size() > static_cast<std::size_t>(kIntMax)) {
    throw_error(ErrorKind::ContractViolation, "local element count does not fit 32 bits");
  }
  if (width == WidthState::I32) {
    if (!fits_int(index_base - 1)) {
      throw_error(ErrorKind::WidthRange, "index base does not fit 32-bit global indices");
    }
    for (GO g : my_gids) {
      if (!fits_int(static_cast<long long>(g))) {
        throw_error(ErrorKind::WidthRange,
                    "GID " + std::to_string(static_cast<long long>(g)) +
                        " does not fit 32-bit global indices");
      }
    }
  }

  auto d = std::make_shared<MapData>();
  d->comm = &comm;
  d->width = width;
  d->element_size = element_size;
  d->index_base = index_base;
  if (width == WidthState::I32) {
    d->gids32.assign(my_gids.begin(), my_gids.end());
  } else {
    d->gids64.assign(my_gids.begin(), my_gids.end());
  }

  // Local validation; the verdicts are shared so that all ranks fail together.
  enum : long long { kOk = 0, kDuplicate = 1, kBelowBase = 2 };
  long long local_error = kOk;
  const int n = static_cast<int>(my_gids.size());
  bool locally_consecutive = true;
  for (int i = 0; i < n; ++i) {
    const long long g = static_cast<long long>(my_gids[static_cast<std::size_t>(i)]);
    if (g < index_base) local_error = kBelowBase;
    if (i > 0 && g != static_cast<long long>(my_gids[static_cast<std::size_t>(i) - 1]) + 1) {
      locally_consecutive = false;
    }
  }
  d->lid_of.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (!d->lid_of.emplace(static_cast<long long>(my_gids[static_cast<std::size_t>(i)]), i).second) {
      local_error = kDuplicate;
    }
  }

  const long long first = n > 0 ? static_cast<long long>(my_gids[0]) : 0;
  const long long info[4] = {local_error, n, locally_consecutive ? 1 : 0, first};
  const auto all = comm.gather_all(std::span<const long long>(info, 4));
  const int nranks = comm.size();
  long long total = 0;
  for (int r = 0; r < nranks; ++r) {
    const long long* ri = &all[static_cast<std::size_t>(r) * 4];
    if (ri[0] == kDuplicate) {
      throw_error(ErrorKind::ContractViolation,
                  "duplicate GID in the local list of rank " + std::to_string(r));
    }
    if (ri[0] == kBelowBase) {
      throw_error(ErrorKind::ContractViolation,
                  "GID below the index base on rank " + std::to_string(r));
    }
    total += ri[1];
  }
  if (num_global != -1 && num_global != total) {
    throw_error(ErrorKind::Consistency, "stated global element count " +
                                            std::to_string(num_global) +
                                            " differs from the summed local counts " +
                                            std::to_string(total));
  }
  if (width == WidthState::I32 && total > kIntMax) {
    throw_error(ErrorKind::WidthRange, "global element count does not fit 32 bits");
  }
  d->num_global = total;

  // Linear if every rank holds a consecutive run and the runs abut in rank order.
  bool linear = true;
  long long next = 0;
  bool started = false;
  long long start = index_base;
  d->rank_offsets.assign(static_cast<std::size_t>(nranks) + 1, 0);
  for (int r = 0; r < nranks; ++r) {
    const long long* ri = &all[static_cast<std::size_t>(r) * 4];
    d->rank_offsets[static_cast<std::size_t>(r) + 1] = d->rank_offsets[static_cast<std::size_t>(r)] + ri[1];
    if (ri[1] == 0) continue;
    if (ri[2] == 0) linear = false;
    if (!started) {
      start = ri[3];
      started = true;
    } else if (ri[3] != next) {
      linear = false;
    }
    next = ri[3] + ri[1];
  }
  d->linear = linear;
  d->linear_start = start;
  if (linear) {
    d->lid_of.clear();
  } else {
    d->rank_offsets.clear();
  }
  finish_aggregates(*d);
  return d;
}

}  // namespace

namespace detail {

int MapData::lid_of_gid(long long gid) const {
  if (linear) {
    const long long off = gid - linear_start - rank_offsets[static_cast<std::size_t>(comm->rank())];
    return (off >= 0 && off < num_my()) ? static_cast<int>(off) : -1;
  }
  auto it = lid_of.find(gid);
  return it == lid_of.end() ? -1 : it->second;
}

}  // namespace detail

BlockMap::BlockMap() : data_(std::make_shared<MapData>()) {}

BlockMap::BlockMap(std::shared_ptr<MapData> data) : data_(std::move(data)) {}

#ifndef SPX_NO_32BIT_GLOBAL_INDICES
BlockMap::BlockMap(int num_global, int element_size, int index_base, const Comm& comm)
    : data_(make_uniform(num_global, index_base, comm, WidthState::I32, element_size)) {}

BlockMap::BlockMap(int num_global, std::span<const int> my_gids, int element_size,
                   int index_base, const Comm& comm)
    : data_(make_from_list<int>(num_global, my_gids, index_base, comm, WidthState::I32,
                                element_size)) {}
#endif

#ifndef SPX_NO_64BIT_GLOBAL_INDICES
BlockMap::BlockMap(long long num_global, int element_size, int index_base, const Comm& comm)
    : data_(make_uniform(num_global, index_base, comm, WidthState::I64, element_size)) {}

BlockMap::BlockMap(long long num_global, int element_size, long long index_base,
                   const Comm& comm)
    : data_(make_uniform(num_global, index_base, comm, WidthState::I64, element_size)) {}

BlockMap::BlockMap(long long num_global, std::span<const long long> my_gids, int element_size,
                   long long index_base, const Comm& comm)
    : data_(make_from_list<long long>(num_global, my_gids, index_base, comm, WidthState::I64,
                                      element_size)) {}
#endif

BlockMap BlockMap::uniform(long long num_global, long long index_base, const Comm& comm,
                           IndexWidth width, int element_size) {
  require_width_compiled(width);
  const auto state = width == IndexWidth::I32 ? WidthState::I32 : WidthState::I64;
  return BlockMap(make_uniform(num_global, index_base, comm, state, element_size));
}

BlockMap BlockMap::from_list(long long num_global, std::span<const long long> my_gids,
                             long long index_base, const Comm& comm, IndexWidth width,
                             int element_size) {
  require_width_compiled(width);
  const auto state = width == IndexWidth::I32 ? WidthState::I32 : WidthState::I64;
  return BlockMap(
      make_from_list<long long>(num_global, my_gids, index_base, comm, state, element_size));
}

WidthState BlockMap::width_state() const { return data_->width; }

bool BlockMap::global_indices_type_match(const BlockMap& other) const {
  return global_indices_type_valid() && width_state() == other.width_state();
}

void BlockMap::require_valid(const char* who) const {
  if (!global_indices_type_valid()) {
    throw_error(ErrorKind::WidthState, std::string(who) + ": map has no valid global index width");
  }
}

void BlockMap::require_narrow(const char* who) const {
  require_valid(who);
  if (width_state() != WidthState::I32) {
    throw_error(ErrorKind::Width,
                std::string(who) + ": 32-bit accessor called on a 64-bit map; use the 64 variant");
  }
}

long long BlockMap::gid64(int lid) const {
  require_valid("gid64");
  if (!my_lid(lid)) return data_->index_base - 1;
  return data_->gid_at(lid);
}

#ifndef SPX_NO_32BIT_GLOBAL_INDICES
int BlockMap::gid(int lid) const {
  require_narrow("gid");
  if (!my_lid(lid)) return static_cast<int>(data_->index_base - 1);
  return data_->gids32[static_cast<std::size_t>(lid)];
}

int BlockMap::lid(int gid) const {
  require_narrow("lid");
  return data_->lid_of_gid(gid);
}

bool BlockMap::my_gid(int gid) const { return lid(gid) >= 0; }

std::span<const int> BlockMap::my_global_elements() const {
  require_narrow("my_global_elements");
  return data_->gids32;
}

void BlockMap::my_global_elements(std::span<int> out) const {
  require_narrow("my_global_elements");
  if (out.size() < data_->gids32.size()) {
    throw CapacityError(num_my_elements(), "my_global_elements: output buffer too small");
  }
  std::copy(data_->gids32.begin(), data_->gids32.end(), out.begin());
}

int BlockMap::num_global_elements() const {
  require_narrow("num_global_elements");
  return static_cast<int>(data_->num_global);
}

int BlockMap::num_global_points() const {
  require_narrow("num_global_points");
  const long long points = num_global_points64();
  if (!fits_int(points)) throw_error(ErrorKind::WidthRange, "num_global_points exceeds 32 bits");
  return static_cast<int>(points);
}

int BlockMap::index_base() const {
  require_narrow("index_base");
  return static_cast<int>(data_->index_base);
}
int BlockMap::min_all_gid() const {
  require_narrow("min_all_gid");
  return static_cast<int>(data_->min_all);
}
int BlockMap::max_all_gid() const {
  require_narrow("max_all_gid");
  return static_cast<int>(data_->max_all);
}
int BlockMap::min_my_gid() const {
  require_narrow("min_my_gid");
  return static_cast<int>(data_->min_my);
}
int BlockMap::max_my_gid() const {
  require_narrow("max_my_gid");
  return static_cast<int>(data_->max_my);
}
#endif

#ifndef SPX_NO_64BIT_GLOBAL_INDICES
int BlockMap::lid(long long gid) const {
  require_valid("lid");
  return data_->lid_of_gid(gid);
}

bool BlockMap::my_gid(long long gid) const { return lid(gid) >= 0; }

std::span<const long long> BlockMap::my_global_elements64() const {
  require_valid("my_global_elements64");
  if (width_state() != WidthState::I64) {
    throw_error(ErrorKind::Width, "my_global_elements64: called on a 32-bit map");
  }
  return data_->gids64;
}

void BlockMap::my_global_elements(std::span<long long> out) const {
  require_valid("my_global_elements");
  const int n = num_my_elements();
  if (out.size() < static_cast<std::size_t>(n)) {
    throw CapacityError(n, "my_global_elements: output buffer too small");
  }
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = data_->gid_at(i);
}
#endif

GidViews BlockMap::my_global_elements_views() const {
  require_valid("my_global_elements_views");
  GidViews v;
  if (width_state() == WidthState::I32) {
    v.narrow = std::span<const int>(data_->gids32);
  } else {
    v.wide = std::span<const long long>(data_->gids64);
  }
  return v;
}

int BlockMap::num_my_elements() const { return data_->num_my(); }
int BlockMap::num_my_points() const { return data_->num_my() * data_->element_size; }
int BlockMap::element_size() const { return data_->element_size; }
long long BlockMap::num_global_elements64() const { return data_->num_global; }
long long BlockMap::num_global_points64() const {
  return data_->num_global * data_->element_size;
}

long long BlockMap::index_base64() const { return data_->index_base; }
long long BlockMap::min_all_gid64() const { return data_->min_all; }
long long BlockMap::max_all_gid64() const { return data_->max_all; }
long long BlockMap::min_my_gid64() const { return data_->min_my; }
long long BlockMap::max_my_gid64() const { return data_->max_my; }

bool BlockMap::linear_map() const { return data_->linear; }

bool BlockMap::distributed_global() const {
  return data_->comm != nullptr && data_->comm->size() > 1 &&
         data_->num_global != static_cast<long long>(data_->num_my());
}

const Comm& BlockMap::comm() const {
  if (data_->comm == nullptr) throw_error(ErrorKind::WidthState, "default-constructed map has no communicator");
  return *data_->comm;
}

bool BlockMap::same_as(const BlockMap& other) const {
  if (data_ == other.data_) return true;
  const MapData& a = *data_;
  const MapData& b = *other.data_;
  return a.width == b.width && a.element_size == b.element_size && a.gids32 == b.gids32 &&
         a.gids64 == b.gids64;
}

int BlockMap::linear_owner(long long gid) const {
  const MapData& d = *data_;
  if (!d.linear) return -1;
  const long long off = gid - d.linear_start;
  if (off < 0 || off >= d.num_global) return -1;
  auto it = std::upper_bound(d.rank_offsets.begin(), d.rank_offsets.end(), off);
  return static_cast<int>(it - d.rank_offsets.begin()) - 1;
}

const detail::Directory& BlockMap::directory() const {
  if (!data_->directory) data_->directory = std::make_shared<detail::Directory>(*this);
  return *data_->directory;
}

const detail::MapData& BlockMap::data() const { return *data_; }

void require_type_match(const BlockMap& a, const BlockMap& b, const char* who) {
  if (!a.global_indices_type_valid() || !b.global_indices_type_valid()) {
    throw_error(ErrorKind::WidthState, std::string(who) + ": operand map has no valid width");
  }
  if (!a.global_indices_type_match(b)) {
    throw_error(ErrorKind::WidthMix, std::string(who) + ": mixing " +
                                         to_string(a.width_state()) + "-bit and " +
                                         to_string(b.width_state()) + "-bit objects");
  }
}

}  // namespace spx
