#pragma once

#include <cstdint>

#include "mecoff/opt/instance.hpp"

namespace mecoff::opt {

struct CertificationReport {
  int instances = 0;
  int weighted_mismatches = 0;
  int energy_mismatches = 0;
  int both_infeasible = 0;  // energy-min cases where solver and oracle agree there is no answer
};

/// Compares solve_weighted and solve_energy_min with brute_force_oracle on
/// random instances: objectives must be equal and assignments identical.
CertificationReport certify_solver(std::uint64_t seed, int instances,
                                   const RandomInstanceSpec& spec = {});

}  // namespace mecoff::opt
