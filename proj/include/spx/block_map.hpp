#ifndef SPX_BLOCK_MAP_HPP
#define SPX_BLOCK_MAP_HPP

#include <memory>
#include <optional>
#include <span>
#include <type_traits>

#include "spx/comm.hpp"
#include "spx/config.hpp"

namespace spx {

/// Global index width a map was constructed with. Default-constructed maps
/// are Invalid.
enum class WidthState { Invalid, I32, I64 };

/// Width requested from the run-time-selecting factories.
enum class IndexWidth { I32, I64 };

const char* to_string(WidthState w);

namespace detail {
struct MapData;
class Directory;
}  // namespace detail

/// Both views of the locally owned global indices. Exactly one is engaged for
/// a valid map, matching its width.
struct GidViews {
  std::optional<std::span<const int>> narrow;
  std::optional<std::span<const long long>> wide;
};

/// Distribution of global indices (GIDs) over the ranks of a communicator.
///
/// Every element is a block of element_size() points. Local counts and local
/// indices (LIDs) are always `int`; global quantities are available through
/// the suffix-64 accessors for maps of either width. The non-suffixed narrow
/// accessors return `int` and throw ErrorKind::Width on every call against a
/// 64-bit map, even when the value would fit.
///
/// Copies share the underlying layout. The communicator must outlive the map.
class BlockMap {
 public:
  BlockMap();

#ifndef SPX_NO_32BIT_GLOBAL_INDICES
  /// Uniform contiguous distribution of num_global elements. Collective.
  BlockMap(int num_global, int element_size, int index_base, const Comm& comm);
  /// User-supplied local GIDs; pass num_global = -1 to have it computed.
  BlockMap(int num_global, std::span<const int> my_gids, int element_size, int index_base,
           const Comm& comm);
#endif
#ifndef SPX_NO_64BIT_GLOBAL_INDICES
  BlockMap(long long num_global, int element_size, int index_base, const Comm& comm);
  BlockMap(long long num_global, int element_size, long long index_base, const Comm& comm);
  BlockMap(long long num_global, std::span<const long long> my_gids, int element_size,
           long long index_base, const Comm& comm);
#endif

  /// Width chosen at run time. Requesting a width compiled out of this build
  /// throws ErrorKind::Width; I32 with an extent beyond the signed 32-bit range
  /// throws ErrorKind::WidthRange.
  static BlockMap uniform(long long num_global, long long index_base, const Comm& comm,
                          IndexWidth width, int element_size = 1);
  static BlockMap from_list(long long num_global, std::span<const long long> my_gids,
                            long long index_base, const Comm& comm, IndexWidth width,
                            int element_size = 1);

  // Width state.
  WidthState width_state() const;
  bool global_indices_int() const { return width_state() == WidthState::I32; }
  bool global_indices_long_long() const { return width_state() == WidthState::I64; }
  bool global_indices_type_valid() const { return width_state() != WidthState::Invalid; }
  bool global_indices_type_match(const BlockMap& other) const;
  template <class T>
  bool global_indices_is_type() const {
    if constexpr (std::is_same_v<T, int>) return global_indices_int();
    else if constexpr (std::is_same_v<T, long long>) return global_indices_long_long();
    else return false;
  }

  // GID <-> LID. An invalid LID maps to index_base64() - 1; a GID not owned
  // here maps to LID -1.
#ifndef SPX_NO_32BIT_GLOBAL_INDICES
  int gid(int lid) const;
  int lid(int gid) const;
  bool my_gid(int gid) const;
#endif
  long long gid64(int lid) const;
#ifndef SPX_NO_64BIT_GLOBAL_INDICES
  int lid(long long gid) const;
  bool my_gid(long long gid) const;
#endif
  bool my_lid(int lid) const { return lid >= 0 && lid < num_my_elements(); }

  // Locally owned GIDs.
#ifndef SPX_NO_32BIT_GLOBAL_INDICES
  std::span<const int> my_global_elements() const;
  /// Copies into `out`; throws ErrorKind::Width for 64-bit maps.
  void my_global_elements(std::span<int> out) const;
#endif
#ifndef SPX_NO_64BIT_GLOBAL_INDICES
  std::span<const long long> my_global_elements64() const;
  /// Copies into `out`, widening 32-bit GIDs.
  void my_global_elements(std::span<long long> out) const;
#endif
  GidViews my_global_elements_views() const;

  // Sizes.
  int num_my_elements() const;
  int num_my_points() const;
  int element_size() const;
  long long num_global_elements64() const;
  long long num_global_points64() const;
#ifndef SPX_NO_32BIT_GLOBAL_INDICES
  int num_global_elements() const;
  int num_global_points() const;
#endif

  // Aggregates. Empty ranges report index_base64() - 1.
  long long index_base64() const;
  long long min_all_gid64() const;
  long long max_all_gid64() const;
  long long min_my_gid64() const;
  long long max_my_gid64() const;
#ifndef SPX_NO_32BIT_GLOBAL_INDICES
  int index_base() const;
  int min_all_gid() const;
  int max_all_gid() const;
  int min_my_gid() const;
  int max_my_gid() const;
#endif

  bool linear_map() const;  // globally contiguous, rank-ordered
  bool distributed_global() const;
  const Comm& comm() const;

  /// Same width, element size and local GID sequence. Local check.
  bool same_as(const BlockMap& other) const;
  bool shares_layout(const BlockMap& other) const { return data_ == other.data_; }

  /// Owner rank of `gid` by arithmetic, for linear maps; -1 if outside.
  int linear_owner(long long gid) const;

  // Used by the directory machinery.
  const detail::Directory& directory() const;
  const detail::MapData& data() const;

 private:
  explicit BlockMap(std::shared_ptr<detail::MapData> data);
  void require_valid(const char* who) const;
  void require_narrow(const char* who) const;

  std::shared_ptr<detail::MapData> data_;
};

/// BlockMap with element size 1.
class Map : public BlockMap {
 public:
  Map() = default;
  Map(const BlockMap& m) : BlockMap(m) {}  // NOLINT(google-explicit-constructor)
#ifndef SPX_NO_32BIT_GLOBAL_INDICES
  Map(int num_global, int index_base, const Comm& comm) : BlockMap(num_global, 1, index_base, comm) {}
  Map(int num_global, std::span<const int> my_gids, int index_base, const Comm& comm)
      : BlockMap(num_global, my_gids, 1, index_base, comm) {}
#endif
#ifndef SPX_NO_64BIT_GLOBAL_INDICES
  Map(long long num_global, int index_base, const Comm& comm)
      : BlockMap(num_global, 1, index_base, comm) {}
  Map(long long num_global, long long index_base, const Comm& comm)
      : BlockMap(num_global, 1, index_base, comm) {}
  Map(long long num_global, std::span<const long long> my_gids, long long index_base,
      const Comm& comm)
      : BlockMap(num_global, my_gids, 1, index_base, comm) {}
#endif
};

/// Throws ErrorKind::WidthMix unless both maps have the same valid width.
void require_type_match(const BlockMap& a, const BlockMap& b, const char* who);

}  // namespace spx

#endif  // SPX_BLOCK_MAP_HPP
