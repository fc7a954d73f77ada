#pragma once

#include <cmath>
#include <stdexcept>

namespace mecoff::rl {

/// Reward for a completed task: the negated end-to-end execution time
/// (communication + queueing + computation).
inline double reward_from_time(double total_execution_time_s) {
  if (!(total_execution_time_s > 0.0) || !std::isfinite(total_execution_time_s)) {
    throw std::invalid_argument("reward_from_time: execution time must be positive");
  }
  return -total_execution_time_s;
}

}  // namespace mecoff::rl
