#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mecoff/core/config.hpp"
#include "mecoff/core/rng.hpp"
#include "mecoff/rl/learning_env.hpp"
#include "mecoff/rl/qtable.hpp"
#include "mecoff/rl/update.hpp"

namespace mecoff::rl {

// Independent learners, one Q-table, memory and random stream per user.
class AgentPool {
 public:
  AgentPool(int num_users, std::size_t num_states, int num_actions, std::uint64_t seed,
            std::uint64_t stream_base);

  /// Chooses an action for every user with a pending task from the current
  /// observations. Other users get no action.
  std::vector<std::optional<int>> decide(const LearningEnv& env, double epsilon);

  /// Consumes the rewards of the last step for the users that acted.
  void learn(const LearningEnv& env, const LearnStep& step, const RLParams& params,
             double epsilon);

  void clear_memories();

  const std::vector<QTable>& tables() const noexcept { return tables_; }
  std::vector<QTable>& tables() noexcept { return tables_; }

 private:
  std::vector<QTable> tables_;
  std::vector<AgentMemory> memories_;
  std::vector<Rng> rngs_;
  std::vector<std::size_t> last_state_;
  std::vector<int> last_action_;
};

/// Exploration rate for episode e: constant, or linear from epsilon down to
/// epsilon_min across the episodes when decay is on.
double epsilon_at(const RLParams& params, int episode);

struct TrainingResult {
  std::vector<QTable> tables;
  std::vector<double> episode_rewards;  // mean over acting agents, per episode
};

/// One independent training run.
TrainingResult train_run(LearningEnv& env, const RLParams& params, std::uint64_t seed,
                         std::uint64_t stream_base);

/// monte_carlo_runs runs; the series is averaged over runs and the tables
/// are those of the last run.
TrainingResult train(const EnvFactory& factory, const RLParams& params, std::uint64_t seed,
                     std::uint64_t stream_tag);

}  // namespace mecoff::rl
