#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mecoff/core/types.hpp"

namespace mecoff {

enum class OptimizerQueueModel { independent, serialized };

enum class PolicyKind { local_only, optimized, rl_offload, rl_least_load };

std::string_view to_string(OptimizerQueueModel m);
std::string_view to_string(PolicyKind k);
PolicyKind parse_policy_kind(std::string_view name);  // throws ConfigError

inline constexpr PolicyKind kAllPolicies[] = {PolicyKind::local_only, PolicyKind::optimized,
                                              PolicyKind::rl_offload, PolicyKind::rl_least_load};

struct RLParams {
  double delta = 0.1;    // learning rate
  double beta = 0.9;     // discount
  double epsilon = 0.1;  // exploration probability
  bool epsilon_decay = false;
  double epsilon_min = 0.01;
  int episodes = 300;
  int monte_carlo_runs = 20;
  int load_buckets = 4;
  bool use_modified = true;
  int eval_episodes = 1;
};

// Raw scenario description as read from a config file. Every field has a
// default so partial files are accepted; validate_config() enforces ranges.
struct SystemConfig {
  // [system]
  int num_users = 50;
  int num_servers = 5;
  int tasks_per_user_max = 10;
  double arrival_rate_lambda = 0.05;
  int slots_per_episode = 200;
  double slot_duration_s = 1.0;
  double latency_bound_s = 150.0;
  std::uint64_t seed = 42;
  double carrier_freq_hz = 5e9;  // reported only
  std::int64_t data_size_bits = 1'000'000'000;
  std::int64_t cycles_per_bit = 10;
  int local_queue_capacity = 1;
  int server_queue_limit = 1;
  double server_capacity_cycles = 1e10;

  // [costs]
  double link_rate_bps = 1e7;
  double server_cpu_rate_hz = 1e10;
  double local_cpu_rate_hz = 1.25e8;
  double tx_power_w = 0.1;
  double kappa_local = 1.6e-25;
  double kappa_server = 5e-31;
  int w_a = 5;
  int w_b = 5;
  int phi = 10;
  std::optional<double> drop_penalty;  // unset: -2 * latency_bound_s
  OptimizerQueueModel optimizer_queue_model = OptimizerQueueModel::independent;
  bool normalize_costs = false;

  // [rl]
  RLParams rl;

  // [sweep]
  std::vector<int> node_counts = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::vector<PolicyKind> policies = {std::begin(kAllPolicies), std::end(kAllPolicies)};
};

/// A SystemConfig that has passed validate_config(). Read-only.
class ValidatedConfig {
 public:
  const SystemConfig& raw() const noexcept { return cfg_; }
  const SystemConfig* operator->() const noexcept { return &cfg_; }

  Weights weights() const { return Weights(cfg_.w_a, cfg_.w_b, cfg_.phi); }
  double drop_penalty() const noexcept;
  std::int64_t task_cycles() const noexcept { return cfg_.data_size_bits * cfg_.cycles_per_bit; }

  UserNode user_node(int user) const;
  EdgeServer edge_server(Venue server) const;
  Link link(int user, Venue server) const;

  /// Same scenario with a different population; re-validated.
  ValidatedConfig with_num_users(int num_users) const;

 private:
  friend ValidatedConfig validate_config(const SystemConfig& raw);
  explicit ValidatedConfig(SystemConfig cfg) : cfg_(std::move(cfg)) {}

  SystemConfig cfg_;
};

/// Checks every invariant and reports all violations at once (ConfigError).
ValidatedConfig validate_config(const SystemConfig& raw);

/// Parses the sectioned text format ([system], [costs], [rl], [sweep]).
/// Absent keys keep their defaults; unknown sections or keys are errors.
SystemConfig parse_config(std::string_view text);
SystemConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(serialize_config(c)) re-serializes to
/// the same bytes.
std::string serialize_config(const SystemConfig& cfg);

}  // namespace mecoff
