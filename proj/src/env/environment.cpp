#include "mecoff/env/environment.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "mecoff/rl/reward.hpp"

namespace mecoff::env {

WorkQueue::WorkQueue(double cpu_rate_hz, int task_limit, double capacity_cycles)
    : cpu_rate_hz_(cpu_rate_hz), task_limit_(task_limit), capacity_cycles_(capacity_cycles) {}

bool WorkQueue::can_admit(double cycles) const noexcept {
  return queued_tasks() < task_limit_ && queued_cycles_ + cycles <= capacity_cycles_;
}

void WorkQueue::admit(double cycles) {
  if (!can_admit(cycles)) {
    throw std::logic_error("WorkQueue::admit on a full queue");
  }
  remaining_.push_back(cycles);
  queued_cycles_ += cycles;
}

double WorkQueue::advance(double seconds) {
  const double budget = cpu_rate_hz_ * seconds;
  double left = budget;
  while (left > 0.0 && !remaining_.empty()) {
    double& head = remaining_.front();
    const double take = std::min(head, left);
    head -= take;
    left -= take;
    if (head <= 0.0) {
      remaining_.pop_front();
    }
  }
  if (remaining_.empty()) {
    queued_cycles_ = 0.0;
  } else {
    queued_cycles_ = 0.0;
    for (double r : remaining_) queued_cycles_ += r;
  }
  return budget - left;
}

ServerState::ServerState(const EdgeServer& server)
    : server_(server), queue_(server.cpu_rate_hz, server.queue_limit, server.capacity_cycles) {}

DeviceState::DeviceState(const UserNode& node)
    : node_(node),
      queue_(node.cpu_rate_hz, node.local_queue_capacity, std::numeric_limits<double>::infinity()) {}

std::int64_t EnvState::pending_count() const noexcept {
  std::int64_t n = 0;
  for (const auto& q : pending) n += static_cast<std::int64_t>(q.size());
  return n;
}

EnvState make_initial_state(const ValidatedConfig& cfg) {
  EnvState s;
  const int users = cfg->num_users;
  s.servers.reserve(static_cast<std::size_t>(cfg->num_servers));
  for (Venue j = 1; j <= cfg->num_servers; ++j) {
    s.servers.emplace_back(cfg.edge_server(j));
  }
  s.devices.reserve(static_cast<std::size_t>(users));
  for (int u = 0; u < users; ++u) {
    s.devices.emplace_back(cfg.user_node(u));
  }
  s.pending.resize(static_cast<std::size_t>(users));
  s.deferred.resize(static_cast<std::size_t>(users));
  s.dropped.assign(static_cast<std::size_t>(users), 0);
  return s;
}

std::vector<Task> generate_arrivals(double lambda, int num_users, std::int64_t slot, Rng& rng,
                                    const TaskShape& shape, std::int64_t first_id) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("generate_arrivals: lambda must be positive");
  }
  std::vector<Task> tasks;
  std::int64_t id = first_id;
  for (int u = 0; u < num_users; ++u) {
    const std::int64_t k = rng.poisson(lambda);
    for (std::int64_t i = 0; i < k; ++i) {
      tasks.emplace_back(id++, u, shape.data_size_bits, shape.cycles_per_bit, slot);
    }
  }
  return tasks;
}

void enqueue_arrivals(EnvState& state, std::vector<Task> tasks, int tasks_per_user_max) {
  const auto cap = static_cast<std::size_t>(tasks_per_user_max);
  for (Task& t : tasks) {
    const auto u = static_cast<std::size_t>(t.owner());
    if (u >= state.pending.size()) {
      throw std::out_of_range(fmt::format("task {} owned by unknown user {}", t.id(), t.owner()));
    }
    state.next_task_id = std::max(state.next_task_id, t.id() + 1);
    ++state.generated;
    if (state.deferred[u].empty() && state.pending[u].size() < cap) {
      state.pending[u].push_back(std::move(t));
    } else {
      state.deferred[u].push_back(std::move(t));
    }
  }
}

StepResult step(EnvState& state, std::span<const std::optional<Venue>> actions,
                const ValidatedConfig& cfg, bool record_history) {
  const int users = state.num_users();
  if (static_cast<int>(actions.size()) != users) {
    throw std::invalid_argument(
        fmt::format("step: {} actions for {} users", actions.size(), users));
  }
  const auto cap = static_cast<std::size_t>(cfg->tasks_per_user_max);

  StepResult result;
  result.rewards.assign(static_cast<std::size_t>(users), 0.0);
  result.acted.assign(static_cast<std::size_t>(users), false);

  for (int u = 0; u < users; ++u) {
    const auto ui = static_cast<std::size_t>(u);
    if (!actions[ui]) continue;
    const Venue v = *actions[ui];
    if (state.pending[ui].empty()) {
      throw std::invalid_argument(fmt::format("step: user {} acted with no pending task", u));
    }
    if (v < 0 || v > state.num_servers()) {
      throw std::invalid_argument(fmt::format("step: user {} chose invalid venue {}", u, v));
    }

    Task task = std::move(state.pending[ui].front());
    state.pending[ui].pop_front();
    if (!state.deferred[ui].empty() && state.pending[ui].size() < cap) {
      state.pending[ui].push_back(std::move(state.deferred[ui].front()));
      state.deferred[ui].pop_front();
    }

    const double cycles = static_cast<double>(task.total_cycles());
    DeviceState& device = state.devices[ui];
    TaskOutcome outcome{state.slot, u, task.id(), v, {}, TaskStatus::dropped};

    if (v == kLocalVenue) {
      if (device.queue().can_admit(cycles)) {
        outcome.cost = local_cost(task, device.node(), device.queue().queued_cycles());
        device.queue().admit(cycles);
        outcome.status = TaskStatus::completed;
      }
    } else {
      ServerState& server = state.servers[static_cast<std::size_t>(v - 1)];
      if (server.queue().can_admit(cycles)) {
        outcome.cost = offload_cost(task, device.node(), cfg.link(u, v), server);
        server.queue().admit(cycles);
        outcome.status = TaskStatus::completed;
      }
    }

    result.acted[ui] = true;
    if (outcome.status == TaskStatus::completed) {
      result.rewards[ui] = rl::reward_from_time(outcome.cost.latency_s());
      result.metrics.energy_j += outcome.cost.energy_j();
      result.metrics.latency_s += outcome.cost.latency_s();
      ++result.metrics.completed;
      ++state.completed_count;
      if (record_history) state.completed.push_back(outcome);
    } else {
      result.rewards[ui] = cfg.drop_penalty();
      ++result.metrics.dropped;
      ++state.dropped_count;
      ++state.dropped[ui];
    }
    result.outcomes.push_back(outcome);
  }

  const double dt = cfg->slot_duration_s;
  result.metrics.backlog_before_drain = server_loads(state);
  for (auto& s : state.servers) s.queue().advance(dt);
  for (auto& d : state.devices) d.queue().advance(dt);
  result.metrics.backlog_after_drain = server_loads(state);
  ++state.slot;
  return result;
}

std::vector<double> server_loads(const EnvState& state) {
  std::vector<double> loads;
  loads.reserve(state.servers.size());
  for (const auto& s : state.servers) loads.push_back(s.queued_cycles());
  return loads;
}

bool conserves_tasks(const EnvState& state) {
  std::int64_t deferred = 0;
  for (const auto& q : state.deferred) deferred += static_cast<std::int64_t>(q.size());
  return state.generated ==
         state.pending_count() + deferred + state.completed_count + state.dropped_count;
}

Environment::Environment(ValidatedConfig cfg, Rng arrivals, EnvOptions options)
    : cfg_(std::move(cfg)),
      arrivals_(std::move(arrivals)),
      options_(options),
      state_(make_initial_state(cfg_)) {}

void Environment::reset() { state_ = make_initial_state(cfg_); }

void Environment::begin_slot() {
  const TaskShape shape{cfg_->data_size_bits, cfg_->cycles_per_bit};
  auto tasks = generate_arrivals(cfg_->arrival_rate_lambda, state_.num_users(), state_.slot,
                                 arrivals_, shape, state_.next_task_id);
  enqueue_arrivals(state_, std::move(tasks), cfg_->tasks_per_user_max);
}

StepResult Environment::step(std::span<const std::optional<Venue>> actions) {
  return env::step(state_, actions, cfg_, options_.record_history);
}

}  // namespace mecoff::env
