#include "mecoff/env/trace.hpp"

#include <fmt/ostream.h>

namespace mecoff::env {

void write_trace_header(std::ostream& out) {
  out << "slot,user,task_id,venue,t_comm,t_queue,t_comp,e_tx,e_comp,status\n";
}

void write_trace_rows(std::ostream& out, std::span<const TaskOutcome> outcomes) {
  for (const auto& o : outcomes) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{}\n", o.slot, o.user, o.task_id, o.venue,
               o.cost.t_comm_s, o.cost.t_queue_s, o.cost.t_comp_s, o.cost.e_tx_j, o.cost.e_comp_j,
               o.status == TaskStatus::completed ? "completed" : "dropped");
  }
}

}  // namespace mecoff::env
