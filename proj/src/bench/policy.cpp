#include "mecoff/bench/policy.hpp"

#include <stdexcept>

#include "mecoff/opt/instance.hpp"
#include "mecoff/opt/solver.hpp"
#include "mecoff/rl/agent_state.hpp"
#include "mecoff/rl/decision.hpp"

namespace mecoff::bench {

std::vector<std::optional<Venue>> LocalOnlyPolicy::decide(const env::EnvState& state) {
  std::vector<std::optional<Venue>> out(state.pending.size());
  for (std::size_t u = 0; u < out.size(); ++u) {
    if (!state.pending[u].empty()) out[u] = kLocalVenue;
  }
  return out;
}

std::vector<std::optional<Venue>> OptimizedPolicy::decide(const env::EnvState& state) {
  std::vector<int> users;
  for (int u = 0; u < state.num_users(); ++u) {
    if (!state.pending[static_cast<std::size_t>(u)].empty()) users.push_back(u);
  }
  std::vector<std::optional<Venue>> out(state.pending.size());
  if (users.empty()) return out;
  const opt::OffloadInstance inst = opt::build_instance(state, users, cfg_);
  const opt::Solution sol = opt::solve_weighted(inst, cfg_.weights());
  for (std::size_t i = 0; i < users.size(); ++i) {
    out[static_cast<std::size_t>(users[i])] = sol.assignment[i];
  }
  return out;
}

RlPolicy::RlPolicy(ValidatedConfig cfg, rl::LearnerKind learner, std::vector<rl::QTable> tables,
                   Rng rng)
    : cfg_(std::move(cfg)), learner_(learner), tables_(std::move(tables)), rng_(std::move(rng)) {
  if (tables_.size() != static_cast<std::size_t>(cfg_->num_users)) {
    throw std::invalid_argument("RlPolicy: one table per user required");
  }
}

PolicyKind RlPolicy::kind() const {
  return learner_ == rl::LearnerKind::offload ? PolicyKind::rl_offload
                                              : PolicyKind::rl_least_load;
}

std::vector<std::optional<Venue>> RlPolicy::decide(const env::EnvState& state) {
  const int buckets = cfg_->rl.load_buckets;
  std::vector<std::optional<int>> actions(state.pending.size());
  for (int u = 0; u < state.num_users(); ++u) {
    const auto ui = static_cast<std::size_t>(u);
    if (state.pending[ui].empty()) continue;
    const std::size_t s = rl::encode(rl::observe(state, u, buckets), buckets);
    const std::vector<int> valid = rl::valid_actions(learner_, u, state, cfg_);
    actions[ui] = rl::select_action(tables_[ui], s, valid, 0.0, rng_);
  }
  return rl::route_actions(learner_, state, actions);
}

bool is_rl(PolicyKind kind) noexcept {
  return kind == PolicyKind::rl_offload || kind == PolicyKind::rl_least_load;
}

rl::LearnerKind learner_for(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::rl_offload:
      return rl::LearnerKind::offload;
    case PolicyKind::rl_least_load:
      return rl::LearnerKind::least_load;
    default:
      throw std::invalid_argument("learner_for: not a learning policy");
  }
}

}  // namespace mecoff::bench
