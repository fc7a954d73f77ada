#include "mecoff/rl/decision.hpp"

#include <stdexcept>

namespace mecoff::rl {

std::vector<Venue> valid_decisions(int user, const env::EnvState& state,
                                   const ValidatedConfig& cfg) {
  const auto& pending = state.pending.at(static_cast<std::size_t>(user));
  const double cycles = pending.empty() ? static_cast<double>(cfg.task_cycles())
                                        : static_cast<double>(pending.front().total_cycles());
  std::vector<Venue> out{kLocalVenue};
  for (Venue j = 1; j <= state.num_servers(); ++j) {
    if (state.servers[static_cast<std::size_t>(j - 1)].queue().can_admit(cycles)) {
      out.push_back(j);
    }
  }
  return out;
}

int select_action(const QTable& q, std::size_t s, std::span<const int> valid, double epsilon,
                  Rng& rng) {
  if (valid.empty()) throw std::invalid_argument("select_action: no valid action");
  const double u = rng.uniform01();
  if (u < epsilon) {
    return valid[rng.uniform_index(valid.size())];
  }
  int best = valid.front();
  double best_q = q.get(s, static_cast<std::size_t>(best));
  for (int a : valid.subspan(1)) {
    const double v = q.get(s, static_cast<std::size_t>(a));
    if (v > best_q || (v == best_q && a < best)) {
      best = a;
      best_q = v;
    }
  }
  return best;
}

Venue least_load_action(std::span<const double> loads, std::span<const char> eligible,
                        bool offload) {
  if (!offload) return kLocalVenue;
  Venue best = kLocalVenue;
  double best_load = 0.0;
  for (std::size_t j = 0; j < loads.size(); ++j) {
    if (!eligible.empty() && eligible[j] == 0) continue;
    if (best == kLocalVenue || loads[j] < best_load) {
      best = static_cast<Venue>(j + 1);
      best_load = loads[j];
    }
  }
  return best;
}

Venue least_load_action(const env::EnvState& state, bool offload) {
  const std::vector<double> loads = env::server_loads(state);
  return least_load_action(loads, {}, offload);
}

}  // namespace mecoff::rl
