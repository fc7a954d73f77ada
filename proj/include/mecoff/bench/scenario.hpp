#pragma once

#include <cstdint>
#include <ostream>
#include <span>

#include "mecoff/bench/metrics.hpp"
#include "mecoff/bench/policy.hpp"
#include "mecoff/core/config.hpp"
#include "mecoff/rl/trainer.hpp"

namespace mecoff::bench {

enum class StreamPurpose : std::uint64_t { evaluation = 1, training = 2, agents = 3, greedy = 4 };

/// Stream id for (purpose, num_users, run, policy). Evaluation arrivals do
/// not depend on the policy, so all policies face the same tasks.
std::uint64_t stream_for(StreamPurpose purpose, int num_users, int run, PolicyKind policy);

/// Trains the learner of an rl_* policy for one Monte Carlo run.
rl::TrainingResult train_policy(PolicyKind kind, const ValidatedConfig& cfg, int run);

/// Evaluation episodes of one run. `trace` receives every task outcome.
RunTotals simulate_run(Policy& policy, const ValidatedConfig& cfg, int run,
                       std::ostream* trace = nullptr);

/// Policy instance for one run, training it first when it learns.
std::unique_ptr<Policy> make_policy(PolicyKind kind, const ValidatedConfig& cfg, int run);

/// monte_carlo_runs runs of one policy at cfg->num_users. QoS references are
/// the local-only averages of the same run. The trace, if any, covers run 0.
MetricsRow run_scenario(PolicyKind kind, const ValidatedConfig& cfg,
                        std::ostream* trace = nullptr);

/// Every (policy, node count) cell, node counts outermost. Each row is
/// written to `csv` (header first) as soon as it is computed.
MetricsReport sweep(std::span<const PolicyKind> policies, std::span<const int> node_counts,
                    const ValidatedConfig& cfg, std::ostream* csv = nullptr);

}  // namespace mecoff::bench
