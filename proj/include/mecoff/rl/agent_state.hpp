#pragma once

#include <cstddef>
#include <vector>

#include "mecoff/env/environment.hpp"

namespace mecoff::rl {

struct AgentState {
  int own_backlog_bucket = 0;
  std::vector<int> server_load_buckets;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

/// min(B-1, floor(fraction * B)); negative fractions map to 0.
int quantize(double fraction, int buckets);

/// B^(M+1).
std::size_t num_states(int buckets, int num_servers);

/// Mixed-radix index: own bucket is the least significant digit, server j
/// the j-th digit.
std::size_t encode(const AgentState& s, int buckets);
AgentState decode(std::size_t index, int buckets, int num_servers);

/// Own backlog is the device's queued tasks over its queue capacity; server
/// load is queued cycles over capacity cycles.
AgentState observe(const env::EnvState& state, int user, int buckets);

}  // namespace mecoff::rl
