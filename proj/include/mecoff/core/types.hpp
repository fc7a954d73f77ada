#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mecoff {

/// Execution venue of a task: 0 is the owner's own processor, 1..M are the
/// edge servers co-located with base stations 1..M.
using Venue = int;
inline constexpr Venue kLocalVenue = 0;

/// One unit of computation. Immutable once constructed.
class Task {
 public:
  Task(std::int64_t id, int owner, std::int64_t data_size_bits,
       std::int64_t cycles_per_bit, std::int64_t arrival_slot);

  std::int64_t id() const noexcept { return id_; }
  int owner() const noexcept { return owner_; }
  std::int64_t data_size_bits() const noexcept { return data_size_bits_; }
  std::int64_t cycles_per_bit() const noexcept { return cycles_per_bit_; }
  std::int64_t arrival_slot() const noexcept { return arrival_slot_; }

  /// data_size_bits * cycles_per_bit; overflow is rejected by the constructor.
  std::int64_t total_cycles() const noexcept { return total_cycles_; }

 private:
  std::int64_t id_;
  int owner_;
  std::int64_t data_size_bits_;
  std::int64_t cycles_per_bit_;
  std::int64_t arrival_slot_;
  std::int64_t total_cycles_;
};

struct UserNode {
  int id = 0;
  double cpu_rate_hz = 0.0;
  double tx_power_w = 0.0;
  int local_queue_capacity = 1;
  double kappa_local = 0.0;  // J*s^2/cycle^3
};

struct EdgeServer {
  int id = 1;  // venue index, never 0
  double cpu_rate_hz = 0.0;
  double capacity_cycles = 0.0;  // max backlog the server admits
  int queue_limit = 1;
  double kappa_server = 0.0;
};

struct Link {
  int user = 0;
  int server = 1;
  double rate_bps = 0.0;
};

/// Integer latency/energy weights with w_a + w_b == phi.
class Weights {
 public:
  Weights(int w_a, int w_b, int phi);

  int w_a() const noexcept { return w_a_; }
  int w_b() const noexcept { return w_b_; }
  int phi() const noexcept { return phi_; }

  friend bool operator==(const Weights&, const Weights&) = default;

 private:
  int w_a_;
  int w_b_;
  int phi_;
};

/// Dense form of the K x (M+1) binary decision matrix: one venue per task.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<Venue> venues) : venues_(std::move(venues)) {}

  std::size_t size() const noexcept { return venues_.size(); }
  bool empty() const noexcept { return venues_.empty(); }
  Venue operator[](std::size_t task) const { return venues_[task]; }
  std::span<const Venue> venues() const noexcept { return venues_; }

  /// Expands to the binary matrix; row i has a single 1 at column venue(i).
  std::vector<std::vector<int>> to_matrix(int num_servers) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;

 private:
  std::vector<Venue> venues_;
};

/// True iff every venue lies in [0, num_servers].
bool check_assignment(const Assignment& a, int num_servers);

std::string venue_name(Venue v);

}  // namespace mecoff
