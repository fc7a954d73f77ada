#pragma once

#include <cstddef>
#include <optional>

#include "mecoff/core/rng.hpp"
#include "mecoff/rl/qtable.hpp"

namespace mecoff::rl {

/// Q(s,a) += delta * (r + beta * max_a' Q(s',a') - Q(s,a)).
void q_update_standard(QTable& q, std::size_t s, std::size_t a, double r, std::size_t s_next,
                       double delta, double beta);

/// Q(s,a) += delta * (r + beta * ((1-eps) * max_a' Q(s',a') + eps * tau) - Q(s,a)).
/// With eps == 0 the result is bit-identical to q_update_standard.
void q_update_modified(QTable& q, std::size_t s, std::size_t a, double r, std::size_t s_next,
                       double delta, double beta, double epsilon, double tau);

struct AgentMemory {
  std::optional<double> prev_reward;
  std::optional<std::size_t> prev_state;  // encoded AgentState

  void clear() noexcept {
    prev_reward.reset();
    prev_state.reset();
  }
};

/// u * (r - prev_reward), or 0 when there is no previous reward.
double exploration_weight(double u, double r, const AgentMemory& memory);

/// exploration_weight with u drawn uniform on [0,1). Always consumes one draw.
double sample_tau(double r, const AgentMemory& memory, Rng& rng);

/// Re-issues the previous reward when `s` equals the previous state, then
/// records (returned reward, s).
double retained_reward(double r, std::size_t s, AgentMemory& memory);

}  // namespace mecoff::rl
