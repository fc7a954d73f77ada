#pragma once

#include "mecoff/core/types.hpp"

namespace mecoff::env {

class ServerState;

/// Latency and energy of one task at one venue. Local execution never has a
/// communication component; the result downlink is not modelled.
struct CostBreakdown {
  double t_comm_s = 0.0;
  double t_comp_s = 0.0;
  double t_queue_s = 0.0;
  double e_tx_j = 0.0;
  double e_comp_j = 0.0;

  double latency_s() const noexcept { return t_comm_s + t_queue_s + t_comp_s; }
  double energy_j() const noexcept { return e_tx_j + e_comp_j; }
};

/// t_comp = C / f_local, e_comp = kappa * C * f_local^2 with C = D * S.
/// `queued_cycles` is work already waiting on the device ahead of the task.
CostBreakdown local_cost(const Task& task, const UserNode& node, double queued_cycles = 0.0);

/// t_comm = D / rate, t_queue = backlog / f_server, t_comp = C / f_server,
/// e_tx = P_tx * t_comm, e_comp = kappa_server * C * f_server^2.
CostBreakdown offload_cost(const Task& task, const UserNode& sender, const Link& link,
                           const ServerState& server);

}  // namespace mecoff::env
