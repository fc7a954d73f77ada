#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mecoff/core/types.hpp"
#include "mecoff/opt/instance.hpp"

namespace mecoff::opt {

struct Solution {
  Assignment assignment;
  double objective = 0.0;
  double total_latency_s = 0.0;
  double total_energy_j = 0.0;
  bool optimal = false;
};

/// Linear objective sum_i latency * T_i + energy * E_i (after instance scaling).
struct ObjectiveWeights {
  double latency = 0.0;
  double energy = 0.0;
};

ObjectiveWeights objective_weights(const Weights& w);

struct Evaluation {
  bool feasible = false;
  double objective = 0.0;
  double total_latency_s = 0.0;
  double total_energy_j = 0.0;
  std::vector<double> task_latency_s;
};

/// Recomputes objective and totals for a complete assignment and checks
/// every constraint (capacity, task limits, local permission, latency bound).
Evaluation evaluate(const OffloadInstance& inst, const ObjectiveWeights& w,
                    std::span<const Venue> venues,
                    std::optional<double> latency_bound_s = std::nullopt);

class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, std::vector<std::int64_t> tasks)
      : std::runtime_error(what), tasks_(std::move(tasks)) {}
  const std::vector<std::int64_t>& tasks() const noexcept { return tasks_; }

 private:
  std::vector<std::int64_t> tasks_;
};

class InstanceTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Exact minimum of sum_i w_a*T_i + w_b*E_i under server capacities, by
/// depth-first branch and bound. Ties go to the lexicographically smallest
/// venue vector.
Solution solve_weighted(const OffloadInstance& inst, const Weights& w);

/// Exact minimum total energy subject to T_i <= latency_bound_s for every task.
Solution solve_energy_min(const OffloadInstance& inst, double latency_bound_s);

/// Exhaustive enumeration in lexicographic order; same tie-break as the
/// solver. Guarded to (M+1)^|tasks| <= 1e6.
Solution brute_force_oracle(const OffloadInstance& inst, const Weights& w,
                            std::optional<double> latency_bound_s = std::nullopt);

inline constexpr double kOracleLimit = 1e6;

/// Cost of the assigned prefix plus, for each unassigned task, its cheapest
/// admissible venue with capacity coupling ignored. Never exceeds the
/// objective of any feasible completion.
double lower_bound(std::span<const Venue> prefix, const OffloadInstance& inst, const Weights& w);

}  // namespace mecoff::opt
