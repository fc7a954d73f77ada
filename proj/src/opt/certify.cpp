#include "mecoff/opt/certify.hpp"

#include <optional>

#include "mecoff/opt/solver.hpp"

namespace mecoff::opt {

namespace {

template <typename F>
std::optional<Solution> attempt(F&& f) {
  try {
    return f();
  } catch (const InfeasibleError&) {
    return std::nullopt;
  }
}

bool same(const std::optional<Solution>& a, const std::optional<Solution>& b) {
  if (!a || !b) return !a && !b;
  return a->objective == b->objective && a->assignment == b->assignment;
}

}  // namespace

CertificationReport certify_solver(std::uint64_t seed, int instances,
                                   const RandomInstanceSpec& spec) {
  Rng rng = seeded_rng(seed, make_stream_id({0x6365727469667956ULL}));
  CertificationReport report;
  for (int k = 0; k < instances; ++k) {
    const OffloadInstance inst = random_instance(rng, spec);
    const int w_a = static_cast<int>(rng.uniform_index(11));
    const Weights w(w_a, 10 - w_a, 10);
    const double bound = spec.min_cost + (spec.max_cost - spec.min_cost) * rng.uniform01();

    const auto bb = attempt([&] { return solve_weighted(inst, w); });
    const auto bf = attempt([&] { return brute_force_oracle(inst, w); });
    if (!bb || !same(bb, bf)) ++report.weighted_mismatches;

    const auto em = attempt([&] { return solve_energy_min(inst, bound); });
    const auto ef = attempt([&] { return brute_force_oracle(inst, Weights(0, 1, 1), bound); });
    if (!same(em, ef)) ++report.energy_mismatches;
    if (!em && !ef) ++report.both_infeasible;
    ++report.instances;
  }
  return report;
}

}  // namespace mecoff::opt
