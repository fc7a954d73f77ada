#include "mecoff/rl/trainer.hpp"

#include <algorithm>

#include "mecoff/rl/decision.hpp"

namespace mecoff::rl {

AgentPool::AgentPool(int num_users, std::size_t num_states, int num_actions, std::uint64_t seed,
                     std::uint64_t stream_base)
    : tables_(static_cast<std::size_t>(num_users),
              QTable(num_states, static_cast<std::size_t>(num_actions))),
      memories_(static_cast<std::size_t>(num_users)),
      last_state_(static_cast<std::size_t>(num_users), 0),
      last_action_(static_cast<std::size_t>(num_users), 0) {
  rngs_.reserve(static_cast<std::size_t>(num_users));
  for (int u = 0; u < num_users; ++u) {
    rngs_.push_back(seeded_rng(seed, make_stream_id({stream_base, static_cast<std::uint64_t>(u)})));
  }
}

std::vector<std::optional<int>> AgentPool::decide(const LearningEnv& env, double epsilon) {
  std::vector<std::optional<int>> actions(tables_.size());
  for (int u = 0; u < static_cast<int>(tables_.size()); ++u) {
    if (!env.has_task(u)) continue;
    const auto ui = static_cast<std::size_t>(u);
    const std::size_t s = env.observe(u);
    const std::vector<int> valid = env.valid_actions(u);
    const int a = select_action(tables_[ui], s, valid, epsilon, rngs_[ui]);
    last_state_[ui] = s;
    last_action_[ui] = a;
    actions[ui] = a;
  }
  return actions;
}

void AgentPool::learn(const LearningEnv& env, const LearnStep& step, const RLParams& params,
                      double epsilon) {
  const double bound = env.reward_bound();
  for (int u = 0; u < static_cast<int>(tables_.size()); ++u) {
    const auto ui = static_cast<std::size_t>(u);
    if (!step.acted[ui]) continue;
    const std::size_t s_next = env.observe(u);
    const double r = step.rewards[ui];
    QTable& q = tables_[ui];
    const auto a = static_cast<std::size_t>(last_action_[ui]);
    if (params.use_modified) {
      const double tau = std::clamp(sample_tau(r, memories_[ui], rngs_[ui]), -bound, bound);
      const double r_eff = retained_reward(r, s_next, memories_[ui]);
      q_update_modified(q, last_state_[ui], a, r_eff, s_next, params.delta, params.beta, epsilon,
                        tau);
    } else {
      q_update_standard(q, last_state_[ui], a, r, s_next, params.delta, params.beta);
    }
  }
}

void AgentPool::clear_memories() {
  for (auto& m : memories_) m.clear();
}

}  // namespace mecoff::rl
