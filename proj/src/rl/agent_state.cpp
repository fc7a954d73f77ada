#include "mecoff/rl/agent_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mecoff::rl {

int quantize(double fraction, int buckets) {
  if (buckets < 2) throw std::invalid_argument("quantize: need at least 2 buckets");
  if (!(fraction > 0.0)) return 0;
  const double b = std::floor(fraction * buckets);
  return b >= buckets - 1 ? buckets - 1 : static_cast<int>(b);
}

std::size_t num_states(int buckets, int num_servers) {
  std::size_t n = 1;
  for (int k = 0; k <= num_servers; ++k) n *= static_cast<std::size_t>(buckets);
  return n;
}

std::size_t encode(const AgentState& s, int buckets) {
  const auto b = static_cast<std::size_t>(buckets);
  auto digit = [&](int d) {
    if (d < 0 || d >= buckets) throw std::out_of_range("encode: bucket out of range");
    return static_cast<std::size_t>(d);
  };
  std::size_t index = 0;
  for (auto it = s.server_load_buckets.rbegin(); it != s.server_load_buckets.rend(); ++it) {
    index = index * b + digit(*it);
  }
  return index * b + digit(s.own_backlog_bucket);
}

AgentState decode(std::size_t index, int buckets, int num_servers) {
  if (index >= num_states(buckets, num_servers)) {
    throw std::out_of_range("decode: index beyond state space");
  }
  const auto b = static_cast<std::size_t>(buckets);
  AgentState s;
  s.own_backlog_bucket = static_cast<int>(index % b);
  index /= b;
  s.server_load_buckets.resize(static_cast<std::size_t>(num_servers));
  for (int& d : s.server_load_buckets) {
    d = static_cast<int>(index % b);
    index /= b;
  }
  return s;
}

AgentState observe(const env::EnvState& state, int user, int buckets) {
  const env::WorkQueue& device = state.devices.at(static_cast<std::size_t>(user)).queue();
  AgentState s;
  s.own_backlog_bucket = quantize(
      static_cast<double>(device.queued_tasks()) / static_cast<double>(device.task_limit()),
      buckets);
  s.server_load_buckets.reserve(state.servers.size());
  for (const auto& srv : state.servers) {
    s.server_load_buckets.push_back(
        quantize(srv.queued_cycles() / srv.server().capacity_cycles, buckets));
  }
  return s;
}

}  // namespace mecoff::rl
