#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mecoff/core/config.hpp"
#include "mecoff/core/rng.hpp"
#include "mecoff/env/environment.hpp"
#include "mecoff/rl/learning_env.hpp"
#include "mecoff/rl/qtable.hpp"

namespace mecoff::bench {

// Picks venues for the users with a pending task. Policies only read the
// environment state; the harness applies their choices through env::step.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual PolicyKind kind() const = 0;
  virtual std::vector<std::optional<Venue>> decide(const env::EnvState& state) = 0;
};

class LocalOnlyPolicy final : public Policy {
 public:
  PolicyKind kind() const override { return PolicyKind::local_only; }
  std::vector<std::optional<Venue>> decide(const env::EnvState& state) override;
};

// Solves the weighted problem over this slot's head-of-queue tasks.
class OptimizedPolicy final : public Policy {
 public:
  explicit OptimizedPolicy(ValidatedConfig cfg) : cfg_(std::move(cfg)) {}
  PolicyKind kind() const override { return PolicyKind::optimized; }
  std::vector<std::optional<Venue>> decide(const env::EnvState& state) override;

 private:
  ValidatedConfig cfg_;
};

// Greedy execution of trained tables.
class RlPolicy final : public Policy {
 public:
  RlPolicy(ValidatedConfig cfg, rl::LearnerKind learner, std::vector<rl::QTable> tables,
           Rng rng);
  PolicyKind kind() const override;
  std::vector<std::optional<Venue>> decide(const env::EnvState& state) override;

 private:
  ValidatedConfig cfg_;
  rl::LearnerKind learner_;
  std::vector<rl::QTable> tables_;
  Rng rng_;
};

rl::LearnerKind learner_for(PolicyKind kind);  // rl_* kinds only
bool is_rl(PolicyKind kind) noexcept;

}  // namespace mecoff::bench
