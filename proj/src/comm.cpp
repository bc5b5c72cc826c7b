#include "spx/comm.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstring>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <type_traits>

#include "comm_tags.hpp"
#include "spx/error.hpp"

namespace spx {

namespace detail {

struct Mailbox {
  struct Message {
    int source;
    int tag;
    Bytes payload;
  };
  std::mutex mutex;
  std::condition_variable arrived;
  std::deque<Message> queue;
};

struct World {
  explicit World(int n) : mailboxes(static_cast<std::size_t>(n)) {}

  void abort() {
    aborted.store(true);
    for (auto& box : mailboxes) {
      std::lock_guard lock(box.mutex);
      box.arrived.notify_all();
    }
  }

  std::vector<Mailbox> mailboxes;
  std::atomic<bool> aborted{false};
};

}  // namespace detail

namespace {

template <class T>
Bytes to_bytes(std::span<const T> values) {
  Bytes out(values.size_bytes());
  if (!values.empty()) std::memcpy(out.data(), values.data(), out.size());
  return out;
}

template <class T>
std::vector<T> from_bytes(const Bytes& bytes) {
  std::vector<T> out(bytes.size() / sizeof(T));
  if (!out.empty()) std::memcpy(out.data(), bytes.data(), out.size() * sizeof(T));
  return out;
}

// Integer sums wrap modulo 2^64 so that intermediate overflow cannot poison a
// result that itself fits.
template <class T>
T add(T a, T b) {
  if constexpr (std::is_integral_v<T>) {
    using U = std::make_unsigned_t<T>;
    return static_cast<T>(static_cast<U>(a) + static_cast<U>(b));
  } else {
    return a + b;
  }
}

template <class T>
T combine(ReduceOp op, T a, T b) {
  switch (op) {
    case ReduceOp::Sum: return add(a, b);
    case ReduceOp::Max: return std::max(a, b);
    case ReduceOp::Min: return std::min(a, b);
  }
  return a;
}

template <class T>
std::vector<std::vector<T>> exchange_equal(const Comm& comm, std::span<const T> local,
                                           const char* who) {
  auto all = comm.exchange_all(to_bytes(local));
  std::vector<std::vector<T>> out;
  out.reserve(all.size());
  for (auto& b : all) out.push_back(from_bytes<T>(b));
  for (const auto& v : out) {
    if (v.size() != local.size()) {
      throw_error(ErrorKind::ContractViolation,
                  std::string(who) + ": ranks contributed unequal counts");
    }
  }
  return out;
}

template <class T>
std::vector<T> gather_all_impl(const Comm& comm, std::span<const T> local) {
  auto parts = exchange_equal(comm, local, "gather_all");
  std::vector<T> out;
  out.reserve(local.size() * parts.size());
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

template <class T>
std::vector<T> reduce_prefix(ReduceOp op, const std::vector<std::vector<T>>& parts,
                             std::size_t last_rank) {
  std::vector<T> acc = parts[0];
  for (std::size_t r = 1; r <= last_rank; ++r) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = combine(op, acc[i], parts[r][i]);
  }
  return acc;
}

template <class T>
std::vector<T> reduce_all_impl(const Comm& comm, ReduceOp op, std::span<const T> values) {
  auto parts = exchange_equal(comm, values, "reduce_all");
  return reduce_prefix(op, parts, parts.size() - 1);
}

template <class T>
std::vector<T> scan_sum_impl(const Comm& comm, std::span<const T> values) {
  auto parts = exchange_equal(comm, values, "scan_sum");
  return reduce_prefix(ReduceOp::Sum, parts, static_cast<std::size_t>(comm.rank()));
}

template <class T>
std::vector<T> broadcast_impl(const Comm& comm, std::span<const T> values, int root) {
  auto out = from_bytes<T>(comm.broadcast_bytes(to_bytes(values), root));
  if (out.size() != values.size()) {
    throw_error(ErrorKind::ContractViolation, "broadcast: ranks passed unequal lengths");
  }
  return out;
}

template <class T>
T scalar_reduce(const Comm& comm, ReduceOp op, T v) {
  return reduce_all_impl(comm, op, std::span<const T>(&v, 1))[0];
}

}  // namespace

std::vector<Bytes> Comm::exchange_all(const Bytes& mine) const {
  const int n = size();
  const int me = rank();
  for (int r = 0; r < n; ++r) {
    if (r != me) send(r, detail::kCollectiveTag, mine);
  }
  std::vector<Bytes> all(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    all[static_cast<std::size_t>(r)] = (r == me) ? mine : receive(r, detail::kCollectiveTag);
  }
  return all;
}

void Comm::barrier() const { exchange_all({}); }

Bytes Comm::broadcast_bytes(const Bytes& values, int root) const {
  if (root < 0 || root >= size()) {
    throw_error(ErrorKind::Usage, "broadcast: invalid root rank " + std::to_string(root));
  }
  if (rank() == root) {
    for (int r = 0; r < size(); ++r) {
      if (r != root) send(r, detail::kCollectiveTag, values);
    }
    return values;
  }
  return receive(root, detail::kCollectiveTag);
}

std::vector<int> Comm::broadcast(std::span<const int> v, int root) const {
  return broadcast_impl(*this, v, root);
}
std::vector<long long> Comm::broadcast(std::span<const long long> v, int root) const {
  return broadcast_impl(*this, v, root);
}
std::vector<double> Comm::broadcast(std::span<const double> v, int root) const {
  return broadcast_impl(*this, v, root);
}

std::vector<int> Comm::gather_all(std::span<const int> v) const { return gather_all_impl(*this, v); }
std::vector<long long> Comm::gather_all(std::span<const long long> v) const {
  return gather_all_impl(*this, v);
}
std::vector<double> Comm::gather_all(std::span<const double> v) const {
  return gather_all_impl(*this, v);
}

std::vector<int> Comm::reduce_all(ReduceOp op, std::span<const int> v) const {
  return reduce_all_impl(*this, op, v);
}
std::vector<long long> Comm::reduce_all(ReduceOp op, std::span<const long long> v) const {
  return reduce_all_impl(*this, op, v);
}
std::vector<double> Comm::reduce_all(ReduceOp op, std::span<const double> v) const {
  return reduce_all_impl(*this, op, v);
}

std::vector<int> Comm::scan_sum(std::span<const int> v) const { return scan_sum_impl(*this, v); }
std::vector<long long> Comm::scan_sum(std::span<const long long> v) const {
  return scan_sum_impl(*this, v);
}
std::vector<double> Comm::scan_sum(std::span<const double> v) const {
  return scan_sum_impl(*this, v);
}

int Comm::sum_all(int v) const { return scalar_reduce(*this, ReduceOp::Sum, v); }
long long Comm::sum_all(long long v) const { return scalar_reduce(*this, ReduceOp::Sum, v); }
double Comm::sum_all(double v) const { return scalar_reduce(*this, ReduceOp::Sum, v); }
int Comm::max_all(int v) const { return scalar_reduce(*this, ReduceOp::Max, v); }
long long Comm::max_all(long long v) const { return scalar_reduce(*this, ReduceOp::Max, v); }
int Comm::min_all(int v) const { return scalar_reduce(*this, ReduceOp::Min, v); }
long long Comm::min_all(long long v) const { return scalar_reduce(*this, ReduceOp::Min, v); }

// SerialComm

void SerialComm::send(int dest, int tag, Bytes payload) const {
  if (dest != 0) throw_error(ErrorKind::Usage, "send: invalid destination rank");
  self_queue_.push_back({tag, std::move(payload)});
}

Bytes SerialComm::receive(int source, int tag) const {
  if (source != 0) throw_error(ErrorKind::Usage, "receive: invalid source rank");
  auto it = std::find_if(self_queue_.begin(), self_queue_.end(),
                         [tag](const Message& m) { return m.tag == tag; });
  if (it == self_queue_.end()) {
    // Nobody else can ever deliver it.
    throw_error(ErrorKind::ContractViolation, "receive: no matching self-message on serial comm");
  }
  Bytes out = std::move(it->payload);
  self_queue_.erase(it);
  return out;
}

// SimulatedComm

SimulatedComm::SimulatedComm(std::shared_ptr<detail::World> world, int rank)
    : world_(std::move(world)), rank_(rank) {}

int SimulatedComm::size() const { return static_cast<int>(world_->mailboxes.size()); }

void SimulatedComm::send(int dest, int tag, Bytes payload) const {
  if (dest < 0 || dest >= size()) {
    throw_error(ErrorKind::Usage, "send: invalid destination rank " + std::to_string(dest));
  }
  if (dest != rank_) count_message();
  auto& box = world_->mailboxes[static_cast<std::size_t>(dest)];
  {
    std::lock_guard lock(box.mutex);
    box.queue.push_back({rank_, tag, std::move(payload)});
  }
  box.arrived.notify_all();
}

Bytes SimulatedComm::receive(int source, int tag) const {
  if (source < 0 || source >= size()) {
    throw_error(ErrorKind::Usage, "receive: invalid source rank " + std::to_string(source));
  }
  auto& box = world_->mailboxes[static_cast<std::size_t>(rank_)];
  std::unique_lock lock(box.mutex);
  for (;;) {
    auto it = std::find_if(box.queue.begin(), box.queue.end(), [&](const auto& m) {
      return m.source == source && m.tag == tag;
    });
    if (it != box.queue.end()) {
      Bytes out = std::move(it->payload);
      box.queue.erase(it);
      return out;
    }
    if (world_->aborted.load()) {
      throw_error(ErrorKind::RankAborted, "another rank failed");
    }
    box.arrived.wait(lock);
  }
}

void run_ranks(int num_ranks, const RankProgram& program) {
  if (num_ranks < 1) throw_error(ErrorKind::Usage, "run_ranks: rank count must be >= 1");
  if (num_ranks == 1) {
    SerialComm comm;
    program(comm);
    return;
  }

  auto world = std::make_shared<detail::World>(num_ranks);
  std::mutex failure_mutex;
  std::exception_ptr first_failure;
  bool first_is_abort = false;

  {
    std::vector<std::jthread> threads;
    threads.reserve(static_cast<std::size_t>(num_ranks));
    for (int r = 0; r < num_ranks; ++r) {
      threads.emplace_back([&, r] {
        try {
          SimulatedComm comm(world, r);
          program(comm);
        } catch (...) {
          bool aborted = false;
          try {
            throw;
          } catch (const Error& e) {
            aborted = e.kind() == ErrorKind::RankAborted;
          } catch (...) {
          }
          {
            std::lock_guard lock(failure_mutex);
            if (!first_failure || (first_is_abort && !aborted)) {
              first_failure = std::current_exception();
              first_is_abort = aborted;
            }
          }
          world->abort();
        }
      });
    }
  }

  if (first_failure) std::rethrow_exception(first_failure);
}

}  // namespace spx
