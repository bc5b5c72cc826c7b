#include "spx/distributor.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "comm_tags.hpp"
#include "spx/error.hpp"

namespace spx {

namespace {

// Calls fn(peer, begin, end) for each maximal run of equal peers.
template <class Fn>
void for_each_run(std::span<const int> procs, Fn&& fn) {
  std::size_t begin = 0;
  while (begin < procs.size()) {
    std::size_t end = begin + 1;
    while (end < procs.size() && procs[end] == procs[begin]) ++end;
    fn(procs[begin], begin, end);
    begin = end;
  }
}

}  // namespace

CommPlan CommPlan::create_from_sends(const Comm& comm, std::span<const int> export_procs,
                                     bool deterministic) {
  const int nranks = comm.size();
  const auto stride = static_cast<std::size_t>(nranks) + 1;

  // Per-destination counts plus a trailing error flag, so that a bad entry on
  // any rank fails every rank.
  std::vector<int> counts(stride, 0);
  for (int p : export_procs) {
    if (p < 0 || p >= nranks) {
      counts.back() = 1;
    } else {
      ++counts[static_cast<std::size_t>(p)];
    }
  }
  const auto all = comm.gather_all(std::span<const int>(counts));
  for (int r = 0; r < nranks; ++r) {
    if (all[static_cast<std::size_t>(r) * stride + stride - 1] != 0) {
      throw_error(ErrorKind::ContractViolation,
                  "create_from_sends: export rank out of range on rank " + std::to_string(r));
    }
  }

  CommPlan plan;
  plan.comm_ = &comm;
  plan.deterministic_ = deterministic;

  const auto n = export_procs.size();
  plan.exports_.order.resize(n);
  std::iota(plan.exports_.order.begin(), plan.exports_.order.end(), 0);
  if (deterministic) {
    std::stable_sort(plan.exports_.order.begin(), plan.exports_.order.end(),
                     [&](int a, int b) { return export_procs[a] < export_procs[b]; });
  } else {
    std::vector<int> first_seen(static_cast<std::size_t>(nranks), -1);
    int next = 0;
    for (int p : export_procs) {
      if (first_seen[static_cast<std::size_t>(p)] < 0) first_seen[static_cast<std::size_t>(p)] = next++;
    }
    std::stable_sort(plan.exports_.order.begin(), plan.exports_.order.end(), [&](int a, int b) {
      return first_seen[static_cast<std::size_t>(export_procs[a])] <
             first_seen[static_cast<std::size_t>(export_procs[b])];
    });
  }
  plan.exports_.procs.reserve(n);
  for (int i : plan.exports_.order) plan.exports_.procs.push_back(export_procs[i]);

  const int me = comm.rank();
  for (int src = 0; src < nranks; ++src) {
    const int c = all[static_cast<std::size_t>(src) * stride + static_cast<std::size_t>(me)];
    plan.imports_.procs.insert(plan.imports_.procs.end(), static_cast<std::size_t>(c), src);
  }
  plan.imports_.order.resize(plan.imports_.procs.size());
  std::iota(plan.imports_.order.begin(), plan.imports_.order.end(), 0);
  return plan;
}

template <class GO>
CommPlan::FromRecvs<GO> CommPlan::from_recvs_impl(const Comm& comm,
                                                  std::span<const GO> remote_gids,
                                                  std::span<const int> remote_procs,
                                                  bool deterministic) {
  if (remote_gids.size() != remote_procs.size()) {
    throw_error(ErrorKind::ContractViolation,
                "create_from_recvs: remote GID and rank lists differ in length");
  }
  // Tell each owner what we want, then run that routing backwards.
  const CommPlan request = create_from_sends(comm, remote_procs, deterministic);
  FromRecvs<GO> out;
  out.export_gids = request.execute_items<GO>(PlanDirection::Forward, remote_gids);
  out.export_procs.assign(request.imports_.procs.begin(), request.imports_.procs.end());
  out.plan = request.reversed();
  return out;
}

#ifndef SPX_NO_32BIT_GLOBAL_INDICES
CommPlan::FromRecvs<int> CommPlan::create_from_recvs(const Comm& comm,
                                                     std::span<const int> remote_gids,
                                                     std::span<const int> remote_procs,
                                                     bool deterministic) {
  return from_recvs_impl<int>(comm, remote_gids, remote_procs, deterministic);
}
#endif

#ifndef SPX_NO_64BIT_GLOBAL_INDICES
CommPlan::FromRecvs<long long> CommPlan::create_from_recvs(const Comm& comm,
                                                           std::span<const long long> remote_gids,
                                                           std::span<const int> remote_procs,
                                                           bool deterministic) {
  return from_recvs_impl<long long>(comm, remote_gids, remote_procs, deterministic);
}
#endif

CommPlan CommPlan::reversed() const {
  CommPlan r = *this;
  std::swap(r.exports_, r.imports_);
  return r;
}

std::vector<std::byte> CommPlan::execute(PlanDirection direction, std::size_t item_bytes,
                                         std::span<const std::byte> send_buffer) const {
  const Side& out = direction == PlanDirection::Forward ? exports_ : imports_;
  const Side& in = direction == PlanDirection::Forward ? imports_ : exports_;
  if (comm_ == nullptr) {
    if (out.procs.empty() && in.procs.empty() && send_buffer.empty()) return {};
    throw_error(ErrorKind::Lifecycle, "execute: plan was never created");
  }
  if (send_buffer.size() != out.procs.size() * item_bytes) {
    throw_error(ErrorKind::ContractViolation,
                "execute: send buffer holds " + std::to_string(send_buffer.size()) +
                    " bytes, plan expects " + std::to_string(out.procs.size() * item_bytes));
  }

  for_each_run(out.procs, [&](int peer, std::size_t begin, std::size_t end) {
    Bytes message((end - begin) * item_bytes);
    for (std::size_t k = begin; k < end; ++k) {
      const auto src = static_cast<std::size_t>(out.order[k]) * item_bytes;
      std::copy_n(send_buffer.begin() + static_cast<std::ptrdiff_t>(src), item_bytes,
                  message.begin() + static_cast<std::ptrdiff_t>((k - begin) * item_bytes));
    }
    comm_->send(peer, detail::kPlanTag, std::move(message));
  });

  std::vector<std::byte> result(in.procs.size() * item_bytes);
  for_each_run(in.procs, [&](int peer, std::size_t begin, std::size_t end) {
    const Bytes message = comm_->receive(peer, detail::kPlanTag);
    if (message.size() != (end - begin) * item_bytes) {
      throw_error(ErrorKind::ContractViolation,
                  "execute: message from rank " + std::to_string(peer) +
                      " does not match the plan; item sizes differ across ranks?");
    }
    for (std::size_t k = begin; k < end; ++k) {
      const auto dst = static_cast<std::size_t>(in.order[k]) * item_bytes;
      std::copy_n(message.begin() + static_cast<std::ptrdiff_t>((k - begin) * item_bytes),
                  item_bytes, result.begin() + static_cast<std::ptrdiff_t>(dst));
    }
  });
  return result;
}

}  // namespace spx
