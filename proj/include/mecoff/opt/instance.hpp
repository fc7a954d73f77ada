#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mecoff/core/config.hpp"
#include "mecoff/core/rng.hpp"
#include "mecoff/env/environment.hpp"

namespace mecoff::opt {

struct VenueCost {
  double latency_s = 0.0;
  double energy_j = 0.0;
};

// One offloading decision problem: |tasks| x (M+1) cost table plus the
// per-server admission limits. Costs already include whatever backlog the
// server had when the instance was built; under the serialized queue model
// tasks sent to the same server additionally wait for their predecessors
// (in task order) inside the instance.
struct OffloadInstance {
  int num_servers = 0;
  std::vector<std::int64_t> task_ids;
  std::vector<double> task_cycles;
  std::vector<VenueCost> costs;  // row-major, row i = task i, column j = venue j
  std::vector<double> server_capacity_cycles;
  std::vector<int> server_task_limit;  // empty: unlimited
  std::vector<double> server_cpu_rate_hz;  // required by the serialized model
  std::vector<char> local_allowed;         // empty: local allowed everywhere
  std::optional<double> latency_bound_s;
  OptimizerQueueModel queue_model = OptimizerQueueModel::independent;
  double latency_scale = 1.0;  // objective divides latencies by this
  double energy_scale = 1.0;

  std::size_t num_tasks() const noexcept { return task_cycles.size(); }
  int num_venues() const noexcept { return num_servers + 1; }

  const VenueCost& cost(std::size_t task, Venue venue) const {
    return costs[task * static_cast<std::size_t>(num_venues()) + static_cast<std::size_t>(venue)];
  }
  bool is_local_allowed(std::size_t task) const {
    return local_allowed.empty() || local_allowed[task] != 0;
  }
  int task_limit(Venue server) const {
    return server_task_limit.empty() ? -1 : server_task_limit[static_cast<std::size_t>(server - 1)];
  }

  /// Dimensions agree, every cost is finite and positive. Throws std::invalid_argument.
  void validate() const;
};

/// Instance for the head-of-queue task of each listed user, costed with the
/// environment's cost model against the current server and device backlogs.
/// Server limits are what remains of each server's queue.
OffloadInstance build_instance(const env::EnvState& state, std::span<const int> users,
                               const ValidatedConfig& cfg);

struct RandomInstanceSpec {
  int max_tasks = 6;
  int max_servers = 3;
  double min_cost = 0.5;
  double max_cost = 100.0;
  bool with_capacity = true;
};

/// Random instance with positive costs; used by certification runs.
OffloadInstance random_instance(Rng& rng, const RandomInstanceSpec& spec = {});

}  // namespace mecoff::opt
