#include "mecoff/env/cost.hpp"

#include "mecoff/env/environment.hpp"

namespace mecoff::env {

CostBreakdown local_cost(const Task& task, const UserNode& node, double queued_cycles) {
  const double cycles = static_cast<double>(task.total_cycles());
  CostBreakdown c;
  c.t_comp_s = cycles / node.cpu_rate_hz;
  c.t_queue_s = queued_cycles / node.cpu_rate_hz;
  c.e_comp_j = node.kappa_local * cycles * node.cpu_rate_hz * node.cpu_rate_hz;
  return c;
}

CostBreakdown offload_cost(const Task& task, const UserNode& sender, const Link& link,
                           const ServerState& server) {
  const double cycles = static_cast<double>(task.total_cycles());
  const double f = server.server().cpu_rate_hz;
  CostBreakdown c;
  c.t_comm_s = static_cast<double>(task.data_size_bits()) / link.rate_bps;
  c.t_queue_s = server.queued_cycles() / f;
  c.t_comp_s = cycles / f;
  c.e_tx_j = sender.tx_power_w * c.t_comm_s;
  c.e_comp_j = server.server().kappa_server * cycles * f * f;
  return c;
}

}  // namespace mecoff::env
