#pragma once

#include <ostream>
#include <vector>

#include "mecoff/rl/qtable.hpp"

namespace mecoff::rl {

// Rows are load buckets b: the state with every digit equal to b. Columns are
// actions; each cell is the largest Q(s_b, a) across agents.
struct DecisionSurface {
  int buckets = 0;
  int num_actions = 0;
  std::vector<double> values;  // row-major buckets x actions

  double at(int bucket, int action) const {
    return values[static_cast<std::size_t>(bucket * num_actions + action)];
  }
};

DecisionSurface offload_decision_surface(const std::vector<QTable>& tables, int buckets,
                                         int num_servers);

/// bucket,action_0,...,action_{A-1}
void write_surface_csv(std::ostream& out, const DecisionSurface& surface);

}  // namespace mecoff::rl
