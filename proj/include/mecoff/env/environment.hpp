#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "mecoff/core/config.hpp"
#include "mecoff/core/rng.hpp"
#include "mecoff/core/types.hpp"
#include "mecoff/env/cost.hpp"

namespace mecoff::env {

// FIFO processor with deterministic service. Admission is bounded both by a
// task count and by total queued cycles.
class WorkQueue {
 public:
  WorkQueue(double cpu_rate_hz, int task_limit, double capacity_cycles);

  bool can_admit(double cycles) const noexcept;
  void admit(double cycles);

  /// Serves up to cpu_rate * seconds cycles in FIFO order; returns cycles served.
  double advance(double seconds);

  double queued_cycles() const noexcept { return queued_cycles_; }
  int queued_tasks() const noexcept { return static_cast<int>(remaining_.size()); }
  double cpu_rate_hz() const noexcept { return cpu_rate_hz_; }
  int task_limit() const noexcept { return task_limit_; }
  double capacity_cycles() const noexcept { return capacity_cycles_; }

 private:
  double cpu_rate_hz_;
  int task_limit_;
  double capacity_cycles_;
  std::deque<double> remaining_;
  double queued_cycles_ = 0.0;
};

class ServerState {
 public:
  explicit ServerState(const EdgeServer& server);

  const EdgeServer& server() const noexcept { return server_; }
  const WorkQueue& queue() const noexcept { return queue_; }
  WorkQueue& queue() noexcept { return queue_; }
  double queued_cycles() const noexcept { return queue_.queued_cycles(); }
  int queued_tasks() const noexcept { return queue_.queued_tasks(); }

 private:
  EdgeServer server_;
  WorkQueue queue_;
};

class DeviceState {
 public:
  explicit DeviceState(const UserNode& node);

  const UserNode& node() const noexcept { return node_; }
  const WorkQueue& queue() const noexcept { return queue_; }
  WorkQueue& queue() noexcept { return queue_; }

 private:
  UserNode node_;
  WorkQueue queue_;
};

enum class TaskStatus { completed, dropped };

struct TaskOutcome {
  std::int64_t slot = 0;
  int user = 0;
  std::int64_t task_id = 0;
  Venue venue = kLocalVenue;
  CostBreakdown cost;  // all zero for dropped tasks
  TaskStatus status = TaskStatus::completed;
};

struct EnvState {
  std::int64_t slot = 0;
  std::vector<ServerState> servers;
  std::vector<DeviceState> devices;
  std::vector<std::deque<Task>> pending;   // decision queue per user
  std::vector<std::deque<Task>> deferred;  // arrivals waiting for pending room
  std::vector<std::int64_t> dropped;       // per user
  std::vector<TaskOutcome> completed;      // kept only when history is on
  std::int64_t generated = 0;
  std::int64_t completed_count = 0;
  std::int64_t dropped_count = 0;
  std::int64_t next_task_id = 0;

  int num_users() const noexcept { return static_cast<int>(pending.size()); }
  int num_servers() const noexcept { return static_cast<int>(servers.size()); }
  std::int64_t pending_count() const noexcept;
};

struct SlotMetrics {
  double energy_j = 0.0;
  double latency_s = 0.0;
  std::int64_t completed = 0;
  std::int64_t dropped = 0;
  std::vector<double> backlog_before_drain;  // per server, after admissions
  std::vector<double> backlog_after_drain;
};

struct StepResult {
  std::vector<double> rewards;  // per user; 0 for users that did not act
  std::vector<bool> acted;
  std::vector<TaskOutcome> outcomes;  // this slot only, ascending user index
  SlotMetrics metrics;
};

/// Size and per-bit demand stamped on every generated task.
struct TaskShape {
  std::int64_t data_size_bits = 0;
  std::int64_t cycles_per_bit = 0;
};

EnvState make_initial_state(const ValidatedConfig& cfg);

/// Poisson(lambda) new tasks per user for `slot`, ids from `first_id` upward.
std::vector<Task> generate_arrivals(double lambda, int num_users, std::int64_t slot, Rng& rng,
                                    const TaskShape& shape, std::int64_t first_id);

/// Places arrivals into pending queues; anything beyond tasks_per_user_max
/// waits in the deferred queue (never dropped).
void enqueue_arrivals(EnvState& state, std::vector<Task> tasks, int tasks_per_user_max);

/// Executes one slot: head-of-queue task of each acting user is admitted in
/// ascending user order (or dropped when the venue is full), then all queues
/// are served for one slot duration. actions.size() must equal num_users.
StepResult step(EnvState& state, std::span<const std::optional<Venue>> actions,
                const ValidatedConfig& cfg, bool record_history = true);

/// Queued cycles per server, index-aligned with state.servers.
std::vector<double> server_loads(const EnvState& state);

/// generated == pending + deferred + completed + dropped.
bool conserves_tasks(const EnvState& state);

struct EnvOptions {
  bool record_history = false;
};

// Owns one episode's state plus the arrival stream.
class Environment {
 public:
  Environment(ValidatedConfig cfg, Rng arrivals, EnvOptions options = {});

  /// Fresh queues at slot 0; the arrival stream continues.
  void reset();

  /// Draws this slot's arrivals into the pending queues.
  void begin_slot();

  StepResult step(std::span<const std::optional<Venue>> actions);

  const EnvState& state() const noexcept { return state_; }
  const ValidatedConfig& config() const noexcept { return cfg_; }

 private:
  ValidatedConfig cfg_;
  Rng arrivals_;
  EnvOptions options_;
  EnvState state_;
};

}  // namespace mecoff::env
