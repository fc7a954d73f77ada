#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "mecoff/core/config.hpp"
#include "mecoff/env/environment.hpp"
#include "mecoff/rl/agent_state.hpp"
#include "mecoff/rl/decision.hpp"
#include "mecoff/rl/learning_env.hpp"
#include "mecoff/rl/qtable.hpp"
#include "mecoff/rl/reward.hpp"
#include "mecoff/rl/surface.hpp"
#include "mecoff/rl/trainer.hpp"
#include "mecoff/rl/update.hpp"

using namespace mecoff;
using namespace mecoff::rl;

namespace {

ValidatedConfig small_config() {
  SystemConfig raw;
  raw.num_users = 3;
  raw.num_servers = 2;
  raw.arrival_rate_lambda = 0.3;
  raw.slots_per_episode = 20;
  raw.rl.episodes = 5;
  raw.rl.monte_carlo_runs = 2;
  raw.node_counts = {3};
  return validate_config(raw);
}

EnvFactory factory_for(const ValidatedConfig& cfg, LearnerKind kind) {
  return [cfg, kind](int run) -> std::unique_ptr<LearningEnv> {
    return std::make_unique<MecLearningEnv>(cfg, kind, seeded_rng(cfg->seed, 1000 + run));
  };
}

}  // namespace

TEST(Reward, NegatedExecutionTime) {
  EXPECT_EQ(reward_from_time(101.0), -101.0);
  EXPECT_THROW(reward_from_time(0.0), std::invalid_argument);
  EXPECT_THROW(reward_from_time(NAN), std::invalid_argument);
}

TEST(Update, StandardWorkedExample) {
  QTable q(2, 2);
  q.set(1, 0, -2.0);
  q.set(1, 1, -1.0);
  q_update_standard(q, 0, 0, -30.0, 1, 0.1, 0.9);
  EXPECT_DOUBLE_EQ(q.get(0, 0), -3.09);
}

TEST(Update, ModifiedWorkedExample) {
  QTable q(2, 2);
  q.set(1, 0, -2.0);
  q.set(1, 1, -1.0);
  q_update_modified(q, 0, 0, -30.0, 1, 0.1, 0.9, 0.1, 2.5);
  EXPECT_DOUBLE_EQ(q.get(0, 0), -3.0585);
}

TEST(Update, NonZeroStartingValue) {
  QTable q(2, 1);
  q.set(0, 0, -5.0);
  q.set(1, 0, -2.0);
  q_update_standard(q, 0, 0, -10.0, 1, 0.1, 0.9);
  EXPECT_DOUBLE_EQ(q.get(0, 0), -5.68);
}

TEST(Update, ModifiedWithoutExplorationIsStandard) {
  Rng rng = seeded_rng(1, 1);
  for (int i = 0; i < 200; ++i) {
    QTable a(3, 3), b(3, 3);
    for (std::size_t s = 0; s < 3; ++s) {
      for (std::size_t k = 0; k < 3; ++k) {
        const double v = -100.0 * rng.uniform01();
        a.set(s, k, v);
        b.set(s, k, v);
      }
    }
    const double r = -50.0 * rng.uniform01();
    q_update_standard(a, 0, 1, r, 2, 0.1, 0.9);
    q_update_modified(b, 0, 1, r, 2, 0.1, 0.9, 0.0, 123.0);
    EXPECT_EQ(a, b);
  }
}

TEST(Update, FixedPointIsStable) {
  // Q = r / (1 - beta) on a self loop.
  QTable q(1, 1);
  q.set(0, 0, -100.0);
  q_update_standard(q, 0, 0, -10.0, 0, 0.1, 0.9);
  EXPECT_NEAR(q.get(0, 0), -100.0, 1e-12);
}

TEST(Update, ContractsTowardTarget) {
  Rng rng = seeded_rng(2, 2);
  for (int i = 0; i < 500; ++i) {
    QTable q(2, 2);
    q.set(0, 0, -100.0 * rng.uniform01());
    q.set(1, 0, -100.0 * rng.uniform01());
    q.set(1, 1, -100.0 * rng.uniform01());
    const double r = -100.0 * rng.uniform01();
    const double target = r + 0.9 * q.max_value(1);
    const double before = std::abs(target - q.get(0, 0));
    q_update_standard(q, 0, 0, r, 1, 0.1, 0.9);
    EXPECT_LE(std::abs(target - q.get(0, 0)), before * (1 - 0.1) + 1e-9);
  }
}

TEST(Update, TouchesOneEntry) {
  QTable q(3, 3);
  for (std::size_t s = 0; s < 3; ++s)
    for (std::size_t a = 0; a < 3; ++a) q.set(s, a, -static_cast<double>(s * 3 + a));
  const QTable before = q;
  q_update_modified(q, 1, 2, -7.0, 0, 0.1, 0.9, 0.1, 1.0);
  for (std::size_t s = 0; s < 3; ++s) {
    for (std::size_t a = 0; a < 3; ++a) {
      if (s == 1 && a == 2) {
        EXPECT_NE(q.get(s, a), before.get(s, a));
      } else {
        EXPECT_EQ(q.get(s, a), before.get(s, a));
      }
    }
  }
}

TEST(QTable, RejectsNonFiniteWrites) {
  QTable q(1, 1);
  EXPECT_THROW(q.set(0, 0, INFINITY), std::domain_error);
  EXPECT_THROW(q.set(0, 0, NAN), std::domain_error);
  EXPECT_THROW(q.get(1, 0), std::out_of_range);
}

TEST(QTable, CsvRoundTrip) {
  QTable q(4, 3);
  Rng rng = seeded_rng(3, 3);
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t a = 0; a < 3; ++a) q.set(s, a, -1e3 * rng.uniform01());
  std::stringstream buf;
  write_qtable_csv(buf, q);
  EXPECT_EQ(buf.str().substr(0, buf.str().find('\n')), "state_index,action_index,value");
  EXPECT_EQ(read_qtable_csv(buf, 4, 3), q);
}

TEST(Exploration, WeightFromRewardDifference) {
  AgentMemory m;
  EXPECT_EQ(exploration_weight(0.5, -5.0, m), 0.0);
  m.prev_reward = -10.0;
  EXPECT_DOUBLE_EQ(exploration_weight(0.5, -5.0, m), 2.5);
}

TEST(Exploration, SampleTauAlwaysDraws) {
  AgentMemory m;
  Rng a = seeded_rng(4, 4), b = seeded_rng(4, 4);
  EXPECT_EQ(sample_tau(-1.0, m, a), 0.0);
  b.uniform01();
  EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Retention, SameStateReissuesPreviousReward) {
  AgentMemory m;
  EXPECT_EQ(retained_reward(-8.0, 3, m), -8.0);
  EXPECT_EQ(retained_reward(-2.0, 3, m), -8.0);
  EXPECT_EQ(retained_reward(-2.0, 3, m), -8.0);
  EXPECT_EQ(retained_reward(-2.0, 4, m), -2.0);
  EXPECT_EQ(*m.prev_state, 4u);
  m.clear();
  EXPECT_FALSE(m.prev_reward.has_value());
}

TEST(AgentState, QuantizeAndEncodeRoundTrip) {
  EXPECT_EQ(quantize(-0.5, 4), 0);
  EXPECT_EQ(quantize(0.26, 4), 1);
  EXPECT_EQ(quantize(1.0, 4), 3);
  EXPECT_EQ(quantize(7.0, 4), 3);
  EXPECT_EQ(num_states(4, 2), 64u);
  for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(encode(decode(i, 4, 2), 4), i);
  EXPECT_EQ(encode(AgentState{1, {0, 0}}, 4), 1u);
  EXPECT_EQ(encode(AgentState{0, {1, 0}}, 4), 4u);
}

TEST(AgentState, ObservesServerLoad) {
  const ValidatedConfig cfg = small_config();
  env::EnvState s = env::make_initial_state(cfg);
  EXPECT_EQ(observe(s, 0, 4), (AgentState{0, {0, 0}}));
  s.servers[1].queue().admit(cfg->server_capacity_cycles);
  EXPECT_EQ(observe(s, 0, 4), (AgentState{0, {0, 3}}));
}

TEST(Decision, ValidDecisionsSkipFullServers) {
  const ValidatedConfig cfg = small_config();
  env::EnvState s = env::make_initial_state(cfg);
  EXPECT_EQ(valid_decisions(0, s, cfg), (std::vector<Venue>{0, 1, 2}));
  s.servers[0].queue().admit(1.0);
  EXPECT_EQ(valid_decisions(0, s, cfg), (std::vector<Venue>{0, 2}));
}

TEST(Decision, GreedyTiesToLowestIndex) {
  QTable q(1, 3);
  Rng rng = seeded_rng(5, 5);
  const std::vector<int> valid{0, 1, 2};
  EXPECT_EQ(select_action(q, 0, valid, 0.0, rng), 0);
  q.set(0, 2, 1.0);
  EXPECT_EQ(select_action(q, 0, valid, 0.0, rng), 2);
  const std::vector<int> only_low{0, 1};
  EXPECT_EQ(select_action(q, 0, only_low, 0.0, rng), 0);
}

TEST(Decision, FullExplorationIsUniform) {
  QTable q(1, 3);
  q.set(0, 1, 5.0);
  Rng rng = seeded_rng(6, 6);
  const std::vector<int> valid{0, 1, 2};
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < 10000; ++i) ++counts[select_action(q, 0, valid, 1.0, rng)];
  for (int c : counts) EXPECT_NEAR(c, 3333, 200);
}

TEST(Decision, LeastLoad) {
  const std::vector<double> loads{3.0, 1.0, 2.0};
  const std::vector<char> all{1, 1, 1};
  EXPECT_EQ(least_load_action(loads, all, true), 2);
  EXPECT_EQ(least_load_action(loads, all, false), 0);
  const std::vector<double> tied{1.0, 1.0, 1.0};
  EXPECT_EQ(least_load_action(tied, all, true), 1);
  const std::vector<char> masked{1, 0, 1};
  EXPECT_EQ(least_load_action(loads, masked, true), 3);
  const std::vector<char> none{0, 0, 0};
  EXPECT_EQ(least_load_action(loads, none, true), 0);
}

TEST(Decision, LeastLoadRoutingProjectsEarlierOffloads) {
  SystemConfig raw = small_config().raw();
  raw.server_queue_limit = 5;
  raw.server_capacity_cycles = 1e12;
  const ValidatedConfig cfg = validate_config(raw);
  env::EnvState s = env::make_initial_state(cfg);
  env::enqueue_arrivals(s, {Task(0, 0, cfg->data_size_bits, cfg->cycles_per_bit, 0),
                            Task(1, 2, cfg->data_size_bits, cfg->cycles_per_bit, 0)},
                        cfg->tasks_per_user_max);
  const std::vector<std::optional<int>> actions{1, std::nullopt, 1};
  const auto venues = route_actions(LearnerKind::least_load, s, actions);
  EXPECT_EQ(venues[0], std::optional<Venue>(1));
  EXPECT_FALSE(venues[1].has_value());
  EXPECT_EQ(venues[2], std::optional<Venue>(2));
}

TEST(Trainer, ZeroEpisodes) {
  const ValidatedConfig cfg = small_config();
  MecLearningEnv env(cfg, LearnerKind::offload, seeded_rng(1, 1));
  RLParams p = cfg->rl;
  p.episodes = 0;
  const TrainingResult r = train_run(env, p, 1, 1);
  EXPECT_TRUE(r.episode_rewards.empty());
  ASSERT_EQ(r.tables.size(), 3u);
  for (const auto& t : r.tables)
    for (double v : t.values()) EXPECT_EQ(v, 0.0);
}

TEST(Trainer, Deterministic) {
  const ValidatedConfig cfg = small_config();
  for (LearnerKind kind : {LearnerKind::offload, LearnerKind::least_load}) {
    const TrainingResult a = train(factory_for(cfg, kind), cfg->rl, cfg->seed, 9);
    const TrainingResult b = train(factory_for(cfg, kind), cfg->rl, cfg->seed, 9);
    EXPECT_EQ(a.tables, b.tables);
    EXPECT_EQ(a.episode_rewards, b.episode_rewards);
    EXPECT_EQ(a.episode_rewards.size(), 5u);
  }
}

TEST(Trainer, ValuesStayBounded) {
  const ValidatedConfig cfg = small_config();
  for (bool modified : {false, true}) {
    RLParams p = cfg->rl;
    p.use_modified = modified;
    p.episodes = 20;
    MecLearningEnv env(cfg, LearnerKind::offload, seeded_rng(2, 2));
    const double limit = env.reward_bound() / (1.0 - p.beta);
    const TrainingResult r = train_run(env, p, 2, 2);
    for (const auto& t : r.tables)
      for (double v : t.values()) EXPECT_LE(std::abs(v), limit);
    for (double e : r.episode_rewards) EXPECT_LE(std::abs(e), env.reward_bound());
  }
}

TEST(Trainer, EpsilonSchedule) {
  RLParams p;
  p.epsilon = 0.5;
  p.epsilon_min = 0.1;
  p.episodes = 5;
  EXPECT_EQ(epsilon_at(p, 3), 0.5);
  p.epsilon_decay = true;
  EXPECT_DOUBLE_EQ(epsilon_at(p, 0), 0.5);
  EXPECT_DOUBLE_EQ(epsilon_at(p, 2), 0.3);
  EXPECT_DOUBLE_EQ(epsilon_at(p, 4), 0.1);
}

TEST(Surface, ShapeAndValues) {
  std::vector<QTable> tables(2, QTable(num_states(3, 2), 3));
  DecisionSurface zero = offload_decision_surface(tables, 3, 2);
  EXPECT_EQ(zero.buckets, 3);
  EXPECT_EQ(zero.num_actions, 3);
  ASSERT_EQ(zero.values.size(), 9u);
  for (double v : zero.values) EXPECT_EQ(v, 0.0);

  const std::size_t s2 = encode(AgentState{2, {2, 2}}, 3);
  tables[0].set(s2, 1, 1.0);
  tables[1].set(s2, 1, 3.0);
  tables[1].set(encode(AgentState{2, {2, 1}}, 3), 0, 9.0);
  const DecisionSurface s = offload_decision_surface(tables, 3, 2);
  EXPECT_EQ(s.at(2, 1), 3.0);
  EXPECT_EQ(s.at(2, 0), 0.0);

  std::stringstream buf;
  write_surface_csv(buf, s);
  EXPECT_EQ(buf.str().substr(0, buf.str().find('\n')), "bucket,action_0,action_1,action_2");
}
