#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mecoff/core/config.hpp"
#include "mecoff/core/rng.hpp"
#include "mecoff/env/environment.hpp"

namespace mecoff::rl {

struct LearnStep {
  std::vector<double> rewards;
  std::vector<bool> acted;
};

// What the learners see of an environment: discrete states, per-user action
// sets and per-user rewards.
class LearningEnv {
 public:
  virtual ~LearningEnv() = default;

  virtual int num_users() const = 0;
  virtual std::size_t num_states() const = 0;
  virtual int num_actions() const = 0;
  virtual int slots_per_episode() const = 0;
  /// Largest reward magnitude; bounds the exploration weight.
  virtual double reward_bound() const = 0;

  virtual void reset() = 0;
  virtual void begin_slot() = 0;
  virtual bool has_task(int user) const = 0;
  virtual std::size_t observe(int user) const = 0;
  virtual std::vector<int> valid_actions(int user) const = 0;
  virtual LearnStep step(std::span<const std::optional<int>> actions) = 0;
};

using EnvFactory = std::function<std::unique_ptr<LearningEnv>(int run)>;

enum class LearnerKind {
  offload,     // one action per venue
  least_load,  // {local, offload}; offload goes to the least-loaded server
};

/// Action indices open to `user`: every admissible venue for the offload
/// learner; {0} or {0, 1} for the least-load learner.
std::vector<int> valid_actions(LearnerKind kind, int user, const env::EnvState& state,
                               const ValidatedConfig& cfg);

/// Venues the given actions map to. Least-load routing walks users in
/// ascending order and projects each earlier offload onto the loads.
std::vector<std::optional<Venue>> route_actions(LearnerKind kind, const env::EnvState& state,
                                                std::span<const std::optional<int>> actions);

// Adapter from the slotted MEC environment to LearningEnv.
class MecLearningEnv final : public LearningEnv {
 public:
  MecLearningEnv(const ValidatedConfig& cfg, LearnerKind kind, Rng arrivals,
                 env::EnvOptions options = {});

  int num_users() const override;
  std::size_t num_states() const override;
  int num_actions() const override;
  int slots_per_episode() const override;
  double reward_bound() const override;

  void reset() override;
  void begin_slot() override;
  bool has_task(int user) const override;
  std::size_t observe(int user) const override;
  std::vector<int> valid_actions(int user) const override;
  LearnStep step(std::span<const std::optional<int>> actions) override;

  const env::Environment& environment() const noexcept { return env_; }
  const env::StepResult& last_result() const noexcept { return last_; }

 private:
  ValidatedConfig cfg_;
  LearnerKind kind_;
  env::Environment env_;
  env::StepResult last_;
};

}  // namespace mecoff::rl
