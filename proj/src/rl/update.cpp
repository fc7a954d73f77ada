#include "mecoff/rl/update.hpp"

#include <cmath>
#include <stdexcept>

namespace mecoff::rl {

namespace {

void check_params(double delta, double beta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta out of (0,1]");
  if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("beta out of [0,1)");
}

void apply(QTable& q, std::size_t s, std::size_t a, double r, double bootstrap, double delta,
           double beta) {
  const double old = q.get(s, a);
  q.set(s, a, old + delta * (r + beta * bootstrap - old));
}

}  // namespace

void q_update_standard(QTable& q, std::size_t s, std::size_t a, double r, std::size_t s_next,
                       double delta, double beta) {
  check_params(delta, beta);
  apply(q, s, a, r, q.max_value(s_next), delta, beta);
}

void q_update_modified(QTable& q, std::size_t s, std::size_t a, double r, std::size_t s_next,
                       double delta, double beta, double epsilon, double tau) {
  check_params(delta, beta);
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon out of [0,1]");
  if (!std::isfinite(tau)) throw std::invalid_argument("tau must be finite");
  const double max_next = q.max_value(s_next);
  // eps == 0 takes the plain target so that signed zeros cannot differ.
  const double bootstrap =
      epsilon == 0.0 ? max_next : (1.0 - epsilon) * max_next + epsilon * tau;
  apply(q, s, a, r, bootstrap, delta, beta);
}

double exploration_weight(double u, double r, const AgentMemory& memory) {
  if (!memory.prev_reward) return 0.0;
  return u * (r - *memory.prev_reward);
}

double sample_tau(double r, const AgentMemory& memory, Rng& rng) {
  return exploration_weight(rng.uniform01(), r, memory);
}

double retained_reward(double r, std::size_t s, AgentMemory& memory) {
  const double out =
      (memory.prev_reward && memory.prev_state && *memory.prev_state == s) ? *memory.prev_reward
                                                                           : r;
  memory.prev_reward = out;
  memory.prev_state = s;
  return out;
}

}  // namespace mecoff::rl
