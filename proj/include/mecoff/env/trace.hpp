#pragma once

#include <ostream>
#include <span>

#include "mecoff/env/environment.hpp"

namespace mecoff::env {

// Per-task CSV trace:
// slot,user,task_id,venue,t_comm,t_queue,t_comp,e_tx,e_comp,status
void write_trace_header(std::ostream& out);
void write_trace_rows(std::ostream& out, std::span<const TaskOutcome> outcomes);

}  // namespace mecoff::env
