#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mecoff/core/config.hpp"
#include "mecoff/core/rng.hpp"
#include "mecoff/env/environment.hpp"
#include "mecoff/rl/qtable.hpp"

namespace mecoff::rl {

/// Local plus every server that can admit the user's head task right now.
/// Users without a pending task are checked against a default-sized task.
std::vector<Venue> valid_decisions(int user, const env::EnvState& state,
                                   const ValidatedConfig& cfg);

/// Epsilon-greedy over `valid` (ascending). One uniform draw decides
/// exploration; greedy ties go to the lowest action index.
int select_action(const QTable& q, std::size_t s, std::span<const int> valid, double epsilon,
                  Rng& rng);

/// Venue of the least-loaded server (ties to the lowest index), or local.
Venue least_load_action(const env::EnvState& state, bool offload);

/// Same over explicit loads, skipping servers whose mask entry is 0. Returns
/// local when no server is eligible.
Venue least_load_action(std::span<const double> loads, std::span<const char> eligible,
                        bool offload);

}  // namespace mecoff::rl
