#include "mecoff/opt/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace mecoff::opt {

void OffloadInstance::validate() const {
  const std::size_t n = num_tasks();
  if (num_servers < 0) throw std::invalid_argument("instance: negative server count");
  if (task_ids.size() != n) throw std::invalid_argument("instance: task_ids size mismatch");
  if (costs.size() != n * static_cast<std::size_t>(num_venues())) {
    throw std::invalid_argument("instance: cost table is not |tasks| x (M+1)");
  }
  if (server_capacity_cycles.size() != static_cast<std::size_t>(num_servers)) {
    throw std::invalid_argument("instance: one capacity per server required");
  }
  if (!server_task_limit.empty() && server_task_limit.size() != static_cast<std::size_t>(num_servers)) {
    throw std::invalid_argument("instance: task limit size mismatch");
  }
  if (!local_allowed.empty() && local_allowed.size() != n) {
    throw std::invalid_argument("instance: local_allowed size mismatch");
  }
  if (queue_model == OptimizerQueueModel::serialized &&
      server_cpu_rate_hz.size() != static_cast<std::size_t>(num_servers)) {
    throw std::invalid_argument("instance: serialized model needs per-server cpu rates");
  }
  for (const auto& c : costs) {
    if (!(std::isfinite(c.latency_s) && c.latency_s > 0.0 && std::isfinite(c.energy_j) &&
          c.energy_j > 0.0)) {
      throw std::invalid_argument("instance: costs must be finite and positive");
    }
  }
  for (double c : task_cycles) {
    if (!(c > 0.0)) throw std::invalid_argument("instance: task cycles must be positive");
  }
  if (!(latency_scale > 0.0) || !(energy_scale > 0.0)) {
    throw std::invalid_argument("instance: scales must be positive");
  }
}

OffloadInstance build_instance(const env::EnvState& state, std::span<const int> users,
                               const ValidatedConfig& cfg) {
  OffloadInstance inst;
  inst.num_servers = state.num_servers();
  inst.queue_model = cfg->optimizer_queue_model;
  for (const auto& s : state.servers) {
    inst.server_capacity_cycles.push_back(
        std::max(0.0, s.server().capacity_cycles - s.queued_cycles()));
    inst.server_task_limit.push_back(std::max(0, s.server().queue_limit - s.queued_tasks()));
    inst.server_cpu_rate_hz.push_back(s.server().cpu_rate_hz);
  }

  double local_latency_sum = 0.0;
  double local_energy_sum = 0.0;
  for (int u : users) {
    const auto ui = static_cast<std::size_t>(u);
    if (ui >= state.pending.size() || state.pending[ui].empty()) {
      throw std::invalid_argument(fmt::format("build_instance: user {} has no pending task", u));
    }
    const Task& task = state.pending[ui].front();
    const env::DeviceState& device = state.devices[ui];
    inst.task_ids.push_back(task.id());
    inst.task_cycles.push_back(static_cast<double>(task.total_cycles()));

    const env::CostBreakdown local =
        env::local_cost(task, device.node(), device.queue().queued_cycles());
    inst.costs.push_back({local.latency_s(), local.energy_j()});
    local_latency_sum += local.latency_s();
    local_energy_sum += local.energy_j();
    for (Venue j = 1; j <= inst.num_servers; ++j) {
      const env::CostBreakdown c = env::offload_cost(task, device.node(), cfg.link(u, j),
                                                     state.servers[static_cast<std::size_t>(j - 1)]);
      inst.costs.push_back({c.latency_s(), c.energy_j()});
    }
  }
  if (cfg->normalize_costs && !users.empty()) {
    const auto n = static_cast<double>(users.size());
    inst.latency_scale = local_latency_sum / n;
    inst.energy_scale = local_energy_sum / n;
  }
  return inst;
}

OffloadInstance random_instance(Rng& rng, const RandomInstanceSpec& spec) {
  OffloadInstance inst;
  const auto n = static_cast<std::size_t>(rng.uniform_index(static_cast<std::uint64_t>(spec.max_tasks) + 1));
  inst.num_servers = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(spec.max_servers)));
  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform01(); };

  double total_cycles = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    inst.task_ids.push_back(static_cast<std::int64_t>(i));
    const double cycles = static_cast<double>(1 + rng.uniform_index(10));
    inst.task_cycles.push_back(cycles);
    total_cycles += cycles;
    for (int j = 0; j < inst.num_venues(); ++j) {
      inst.costs.push_back({draw(spec.min_cost, spec.max_cost), draw(spec.min_cost, spec.max_cost)});
    }
  }
  for (int j = 0; j < inst.num_servers; ++j) {
    inst.server_capacity_cycles.push_back(
        spec.with_capacity ? std::floor(draw(0.0, total_cycles + 1.0)) : 1e300);
    inst.server_cpu_rate_hz.push_back(draw(0.5, 4.0));
  }
  if (spec.with_capacity && rng.uniform01() < 0.5) {
    for (int j = 0; j < inst.num_servers; ++j) {
      inst.server_task_limit.push_back(static_cast<int>(rng.uniform_index(n + 1)));
    }
  }
  inst.queue_model = rng.uniform01() < 0.5 ? OptimizerQueueModel::independent
                                           : OptimizerQueueModel::serialized;
  return inst;
}

}  // namespace mecoff::opt
