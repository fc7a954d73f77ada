#include "mecoff/rl/surface.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/ostream.h>

#include "mecoff/rl/agent_state.hpp"

namespace mecoff::rl {

DecisionSurface offload_decision_surface(const std::vector<QTable>& tables, int buckets,
                                         int num_servers) {
  if (tables.empty()) throw std::invalid_argument("surface: no tables");
  DecisionSurface out;
  out.buckets = buckets;
  out.num_actions = static_cast<int>(tables.front().num_actions());
  out.values.reserve(static_cast<std::size_t>(buckets * out.num_actions));
  for (int b = 0; b < buckets; ++b) {
    AgentState s{b, std::vector<int>(static_cast<std::size_t>(num_servers), b)};
    const std::size_t idx = encode(s, buckets);
    for (int a = 0; a < out.num_actions; ++a) {
      double best = tables.front().get(idx, static_cast<std::size_t>(a));
      for (const QTable& q : tables) best = std::max(best, q.get(idx, static_cast<std::size_t>(a)));
      out.values.push_back(best);
    }
  }
  return out;
}

void write_surface_csv(std::ostream& out, const DecisionSurface& surface) {
  out << "bucket";
  for (int a = 0; a < surface.num_actions; ++a) out << ",action_" << a;
  out << '\n';
  for (int b = 0; b < surface.buckets; ++b) {
    out << b;
    for (int a = 0; a < surface.num_actions; ++a) fmt::print(out, ",{}", surface.at(b, a));
    out << '\n';
  }
}

}  // namespace mecoff::rl
