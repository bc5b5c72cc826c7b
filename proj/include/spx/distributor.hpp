#ifndef SPX_DISTRIBUTOR_HPP
#define SPX_DISTRIBUTOR_HPP

#include <cstddef>
#include <cstring>
#include <span>
#include <vector>

#include "spx/comm.hpp"
#include "spx/config.hpp"

namespace spx {

enum class PlanDirection { Forward, Reverse };

/// Reusable gather/scatter schedule between ranks.
///
/// Forward execution takes one item per export (in the order the exports were
/// declared) and delivers to each rank its imports grouped by source rank
/// ascending; within one source the items keep the sender's plan order.
/// Reverse execution is the exact inverse: feeding the forward result back
/// through it returns every rank's original send buffer.
class CommPlan {
 public:
  CommPlan() = default;

  /// Builds a plan from the destination rank of each export item. Collective.
  /// With `deterministic` set, the plan sends in destination-rank order;
  /// otherwise destinations are visited in order of first appearance.
  static CommPlan create_from_sends(const Comm& comm, std::span<const int> export_procs,
                                    bool deterministic);

  /// Result of create_from_recvs.
  template <class GO>
  struct FromRecvs;

#ifndef SPX_NO_32BIT_GLOBAL_INDICES
  static FromRecvs<int> create_from_recvs(const Comm& comm, std::span<const int> remote_gids,
                                     std::span<const int> remote_procs, bool deterministic);
#endif
#ifndef SPX_NO_64BIT_GLOBAL_INDICES
  static FromRecvs<long long> create_from_recvs(const Comm& comm,
                                                std::span<const long long> remote_gids,
                                     std::span<const int> remote_procs, bool deterministic);
#endif

  /// Routes fixed-size opaque items. Collective.
  std::vector<std::byte> execute(PlanDirection direction, std::size_t item_bytes,
                                 std::span<const std::byte> send_buffer) const;

  template <class T>
  std::vector<T> execute_items(PlanDirection direction, std::span<const T> items) const;

  int export_count() const { return static_cast<int>(exports_.procs.size()); }
  int import_count() const { return static_cast<int>(imports_.procs.size()); }
  /// Destination rank per export, in plan send order.
  std::span<const int> export_procs() const { return exports_.procs; }
  /// Source rank per import, in receive order (nondecreasing).
  std::span<const int> import_procs() const { return imports_.procs; }
  /// Position in the caller's export list of the k-th item sent.
  std::span<const int> export_order() const { return exports_.order; }
  bool deterministic() const { return deterministic_; }

  /// The same routing with the roles of exports and imports swapped.
  CommPlan reversed() const;

 private:
  template <class GO>
  static FromRecvs<GO> from_recvs_impl(const Comm& comm, std::span<const GO> remote_gids,
                                       std::span<const int> remote_procs, bool deterministic);

  // One end of the plan. `procs` lists the peer rank of each item in plan
  // order, grouped so each peer occupies one contiguous run; `order[k]` is
  // the index of the k-th plan item in the caller's buffer.
  struct Side {
    std::vector<int> procs;
    std::vector<int> order;
  };

  const Comm* comm_ = nullptr;
  Side exports_;
  Side imports_;
  bool deterministic_ = false;
};

/// `export_gids[i]` is a locally owned index that rank `export_procs[i]`
/// asked for. Forward execution of `plan` takes one item per export_gids entry
/// and hands each requester its items in the order it listed them.
template <class GO>
struct CommPlan::FromRecvs {
  CommPlan plan;
  std::vector<GO> export_gids;
  std::vector<int> export_procs;
};

template <class T>
std::vector<T> CommPlan::execute_items(PlanDirection direction, std::span<const T> items) const {
  auto raw = execute(direction, sizeof(T), std::as_bytes(items));
  std::vector<T> out(raw.size() / sizeof(T));
  if (!out.empty()) std::memcpy(out.data(), raw.data(), raw.size());
  return out;
}

}  // namespace spx

#endif  // SPX_DISTRIBUTOR_HPP
