#ifndef SPX_COMM_HPP
#define SPX_COMM_HPP

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace spx {

enum class CommKind { Serial, Simulated };
enum class ReduceOp { Sum, Max, Min };

using Bytes = std::vector<std::byte>;

/// Communicator over a fixed group of ranks.
///
/// Point-to-point sends are buffered and never block; receives block until a
/// message with the requested (source, tag) pair arrives. Messages between a
/// fixed ordered pair of ranks with the same tag are delivered in send order.
///
/// Collectives must be called by every rank in the same order. They require
/// equal per-rank counts and throw ErrorKind::ContractViolation on every rank
/// otherwise. Reductions combine contributions in rank order, so every rank
/// receives a bitwise-identical result and repeated runs at a fixed rank count
/// are reproducible. Integer sums are exact whenever the true result fits in
/// 64 bits, even if partial sums do not.
class Comm {
 public:
  virtual ~Comm() = default;

  virtual int rank() const = 0;
  virtual int size() const = 0;
  virtual CommKind kind() const = 0;

  virtual void send(int dest, int tag, Bytes payload) const = 0;
  virtual Bytes receive(int source, int tag) const = 0;

  /// Number of point-to-point messages this rank has sent to other ranks.
  std::uint64_t messages_sent() const { return messages_sent_; }

  void barrier() const;

  std::vector<int> broadcast(std::span<const int> values, int root) const;
  std::vector<long long> broadcast(std::span<const long long> values, int root) const;
  std::vector<double> broadcast(std::span<const double> values, int root) const;
  Bytes broadcast_bytes(const Bytes& values, int root) const;

  std::vector<int> gather_all(std::span<const int> local) const;
  std::vector<long long> gather_all(std::span<const long long> local) const;
  std::vector<double> gather_all(std::span<const double> local) const;

  std::vector<int> reduce_all(ReduceOp op, std::span<const int> values) const;
  std::vector<long long> reduce_all(ReduceOp op, std::span<const long long> values) const;
  std::vector<double> reduce_all(ReduceOp op, std::span<const double> values) const;

  std::vector<int> sum_all(std::span<const int> v) const { return reduce_all(ReduceOp::Sum, v); }
  std::vector<long long> sum_all(std::span<const long long> v) const {
    return reduce_all(ReduceOp::Sum, v);
  }
  std::vector<double> sum_all(std::span<const double> v) const {
    return reduce_all(ReduceOp::Sum, v);
  }
  std::vector<int> max_all(std::span<const int> v) const { return reduce_all(ReduceOp::Max, v); }
  std::vector<long long> max_all(std::span<const long long> v) const {
    return reduce_all(ReduceOp::Max, v);
  }
  std::vector<double> max_all(std::span<const double> v) const {
    return reduce_all(ReduceOp::Max, v);
  }
  std::vector<int> min_all(std::span<const int> v) const { return reduce_all(ReduceOp::Min, v); }
  std::vector<long long> min_all(std::span<const long long> v) const {
    return reduce_all(ReduceOp::Min, v);
  }
  std::vector<double> min_all(std::span<const double> v) const {
    return reduce_all(ReduceOp::Min, v);
  }

  /// Inclusive prefix sum over ranks 0..rank().
  std::vector<int> scan_sum(std::span<const int> values) const;
  std::vector<long long> scan_sum(std::span<const long long> values) const;
  std::vector<double> scan_sum(std::span<const double> values) const;

  // Scalar conveniences.
  int sum_all(int v) const;
  long long sum_all(long long v) const;
  double sum_all(double v) const;
  int max_all(int v) const;
  long long max_all(long long v) const;
  long long min_all(long long v) const;
  int min_all(int v) const;

  /// Sends `mine` to every rank and returns all ranks' payloads in rank order.
  std::vector<Bytes> exchange_all(const Bytes& mine) const;

 protected:
  void count_message() const { ++messages_sent_; }

 private:
  mutable std::uint64_t messages_sent_ = 0;
};

/// Single-rank communicator.
class SerialComm final : public Comm {
 public:
  int rank() const override { return 0; }
  int size() const override { return 1; }
  CommKind kind() const override { return CommKind::Serial; }
  void send(int dest, int tag, Bytes payload) const override;
  Bytes receive(int source, int tag) const override;

 private:
  struct Message {
    int tag;
    Bytes payload;
  };
  mutable std::deque<Message> self_queue_;
};

namespace detail {
struct World;
}

/// One rank of an in-process multi-rank world created by run_ranks().
class SimulatedComm final : public Comm {
 public:
  SimulatedComm(std::shared_ptr<detail::World> world, int rank);
  int rank() const override { return rank_; }
  int size() const override;
  CommKind kind() const override { return CommKind::Simulated; }
  void send(int dest, int tag, Bytes payload) const override;
  Bytes receive(int source, int tag) const override;

 private:
  std::shared_ptr<detail::World> world_;
  int rank_;
};

using RankProgram = std::function<void(const Comm&)>;

/// Runs `program` once per rank, each rank in its own thread with its own
/// SimulatedComm, and joins them. With num_ranks == 1 the program runs on the
/// calling thread with a SerialComm. If any rank throws, the remaining ranks
/// are released from blocking calls and the first failure is rethrown.
void run_ranks(int num_ranks, const RankProgram& program);

}  // namespace spx

#endif  // SPX_COMM_HPP
