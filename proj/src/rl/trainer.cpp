#include "mecoff/rl/trainer.hpp"

#include <stdexcept>

namespace mecoff::rl {

double epsilon_at(const RLParams& params, int episode) {
  if (!params.epsilon_decay || params.episodes <= 1) return params.epsilon;
  const double frac = static_cast<double>(episode) / static_cast<double>(params.episodes - 1);
  return params.epsilon + (params.epsilon_min - params.epsilon) * frac;
}

TrainingResult train_run(LearningEnv& env, const RLParams& params, std::uint64_t seed,
                         std::uint64_t stream_base) {
  const int users = env.num_users();
  AgentPool pool(users, env.num_states(), env.num_actions(), seed, stream_base);
  TrainingResult result;
  result.episode_rewards.reserve(static_cast<std::size_t>(params.episodes));

  std::vector<double> sum(static_cast<std::size_t>(users));
  std::vector<int> count(static_cast<std::size_t>(users));
  for (int e = 0; e < params.episodes; ++e) {
    const double eps = epsilon_at(params, e);
    env.reset();
    pool.clear_memories();
    std::fill(sum.begin(), sum.end(), 0.0);
    std::fill(count.begin(), count.end(), 0);
    for (int t = 0; t < env.slots_per_episode(); ++t) {
      env.begin_slot();
      const auto actions = pool.decide(env, eps);
      const LearnStep step = env.step(actions);
      pool.learn(env, step, params, eps);
      for (std::size_t u = 0; u < sum.size(); ++u) {
        if (!step.acted[u]) continue;
        sum[u] += step.rewards[u];
        ++count[u];
      }
    }
    double total = 0.0;
    int agents = 0;
    for (std::size_t u = 0; u < sum.size(); ++u) {
      if (count[u] == 0) continue;
      total += sum[u] / count[u];
      ++agents;
    }
    result.episode_rewards.push_back(agents > 0 ? total / agents : 0.0);
  }
  result.tables = std::move(pool.tables());
  return result;
}

TrainingResult train(const EnvFactory& factory, const RLParams& params, std::uint64_t seed,
                     std::uint64_t stream_tag) {
  if (params.monte_carlo_runs < 1) throw std::invalid_argument("train: need at least one run");
  TrainingResult out;
  out.episode_rewards.assign(static_cast<std::size_t>(std::max(0, params.episodes)), 0.0);
  for (int run = 0; run < params.monte_carlo_runs; ++run) {
    std::unique_ptr<LearningEnv> env = factory(run);
    TrainingResult r =
        train_run(*env, params, seed, make_stream_id({stream_tag, static_cast<std::uint64_t>(run)}));
    for (std::size_t e = 0; e < r.episode_rewards.size(); ++e) {
      out.episode_rewards[e] += r.episode_rewards[e];
    }
    out.tables = std::move(r.tables);
  }
  for (double& v : out.episode_rewards) v /= params.monte_carlo_runs;
  return out;
}

}  // namespace mecoff::rl
