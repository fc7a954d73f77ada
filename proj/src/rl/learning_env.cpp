#include "mecoff/rl/learning_env.hpp"

#include <stdexcept>

#include "mecoff/rl/agent_state.hpp"
#include "mecoff/rl/decision.hpp"

namespace mecoff::rl {

std::vector<int> valid_actions(LearnerKind kind, int user, const env::EnvState& state,
                               const ValidatedConfig& cfg) {
  std::vector<Venue> venues = valid_decisions(user, state, cfg);
  if (kind == LearnerKind::offload) return venues;
  if (venues.size() > 1) return {0, 1};
  return {0};
}

std::vector<std::optional<Venue>> route_actions(LearnerKind kind, const env::EnvState& st,
                                                std::span<const std::optional<int>> actions) {
  std::vector<std::optional<Venue>> venues(actions.size());
  if (kind == LearnerKind::offload) {
    for (std::size_t u = 0; u < actions.size(); ++u) {
      if (actions[u]) venues[u] = static_cast<Venue>(*actions[u]);
    }
    return venues;
  }

  const std::size_t m = st.servers.size();
  std::vector<double> loads = env::server_loads(st);
  std::vector<int> tasks(m);
  for (std::size_t j = 0; j < m; ++j) tasks[j] = st.servers[j].queued_tasks();
  std::vector<char> eligible(m);
  for (std::size_t u = 0; u < actions.size(); ++u) {
    if (!actions[u]) continue;
    if (*actions[u] == 0) {
      venues[u] = kLocalVenue;
      continue;
    }
    const double cycles = static_cast<double>(st.pending[u].front().total_cycles());
    bool any = false;
    for (std::size_t j = 0; j < m; ++j) {
      const EdgeServer& srv = st.servers[j].server();
      eligible[j] = tasks[j] < srv.queue_limit && loads[j] + cycles <= srv.capacity_cycles;
      any = any || eligible[j] != 0;
    }
    const Venue v = any ? least_load_action(loads, eligible, true)
                        : least_load_action(loads, {}, true);
    venues[u] = v;
    loads[static_cast<std::size_t>(v - 1)] += cycles;
    ++tasks[static_cast<std::size_t>(v - 1)];
  }
  return venues;
}


MecLearningEnv::MecLearningEnv(const ValidatedConfig& cfg, LearnerKind kind, Rng arrivals,
                               env::EnvOptions options)
    : cfg_(cfg), kind_(kind), env_(cfg, std::move(arrivals), options) {}

int MecLearningEnv::num_users() const { return cfg_->num_users; }

std::size_t MecLearningEnv::num_states() const {
  return rl::num_states(cfg_->rl.load_buckets, cfg_->num_servers);
}

int MecLearningEnv::num_actions() const {
  return kind_ == LearnerKind::offload ? cfg_->num_servers + 1 : 2;
}

int MecLearningEnv::slots_per_episode() const { return cfg_->slots_per_episode; }

double MecLearningEnv::reward_bound() const { return 2.0 * cfg_->latency_bound_s; }

void MecLearningEnv::reset() { env_.reset(); }

void MecLearningEnv::begin_slot() { env_.begin_slot(); }

bool MecLearningEnv::has_task(int user) const {
  return !env_.state().pending.at(static_cast<std::size_t>(user)).empty();
}

std::size_t MecLearningEnv::observe(int user) const {
  return encode(rl::observe(env_.state(), user, cfg_->rl.load_buckets), cfg_->rl.load_buckets);
}

std::vector<int> MecLearningEnv::valid_actions(int user) const {
  return rl::valid_actions(kind_, user, env_.state(), cfg_);
}

LearnStep MecLearningEnv::step(std::span<const std::optional<int>> actions) {
  const std::vector<std::optional<Venue>> venues = route_actions(kind_, env_.state(), actions);
  last_ = env_.step(venues);
  return LearnStep{last_.rewards, last_.acted};
}

}  // namespace mecoff::rl
