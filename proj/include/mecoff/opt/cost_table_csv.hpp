#pragma once

#include <istream>
#include <ostream>

#include "mecoff/opt/instance.hpp"

namespace mecoff::opt {

// Cost-table fixtures: one row per (task, venue),
// columns task_id,venue_id,latency_s,energy_j,cycles.
void write_cost_table(std::ostream& out, const OffloadInstance& inst);

/// Rebuilds the cost table and task cycles. Servers get unlimited capacity;
/// callers set limits afterwards. Throws std::invalid_argument on malformed
/// or incomplete input.
OffloadInstance read_cost_table(std::istream& in);

}  // namespace mecoff::opt
