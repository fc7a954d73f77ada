#include "mecoff/opt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <fmt/format.h>

namespace mecoff::opt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool serialized(const OffloadInstance& inst) {
  return inst.queue_model == OptimizerQueueModel::serialized;
}

// Latency of task i at venue v when `acc` cycles were already placed on v
// earlier in task order.
double task_latency(const OffloadInstance& inst, std::size_t i, Venue v, double acc) {
  const double base = inst.cost(i, v).latency_s;
  if (v == kLocalVenue || !serialized(inst)) return base;
  return base + acc / inst.server_cpu_rate_hz[static_cast<std::size_t>(v - 1)];
}

double term(const OffloadInstance& inst, const ObjectiveWeights& w, double latency,
            double energy) {
  return w.latency * (latency / inst.latency_scale) + w.energy * (energy / inst.energy_scale);
}

// Mutable placement state shared by the search, the greedy start and evaluate().
struct Placement {
  std::vector<double> acc_cycles;
  std::vector<int> count;

  explicit Placement(const OffloadInstance& inst)
      : acc_cycles(static_cast<std::size_t>(inst.num_venues()), 0.0),
        count(static_cast<std::size_t>(inst.num_venues()), 0) {}

  bool admits(const OffloadInstance& inst, std::size_t i, Venue v,
              std::optional<double> bound) const {
    if (v == kLocalVenue) {
      if (!inst.is_local_allowed(i)) return false;
    } else {
      const auto s = static_cast<std::size_t>(v);
      if (acc_cycles[s] + inst.task_cycles[i] > inst.server_capacity_cycles[s - 1]) return false;
      const int limit = inst.task_limit(v);
      if (limit >= 0 && count[s] + 1 > limit) return false;
    }
    if (bound && task_latency(inst, i, v, acc_cycles[static_cast<std::size_t>(v)]) > *bound) {
      return false;
    }
    return true;
  }

  void place(const OffloadInstance& inst, std::size_t i, Venue v) {
    acc_cycles[static_cast<std::size_t>(v)] += inst.task_cycles[i];
    ++count[static_cast<std::size_t>(v)];
  }
  void unplace(const OffloadInstance& inst, std::size_t i, Venue v) {
    acc_cycles[static_cast<std::size_t>(v)] -= inst.task_cycles[i];
    --count[static_cast<std::size_t>(v)];
  }
};

std::optional<double> effective_bound(const OffloadInstance& inst, std::optional<double> bound) {
  return bound ? bound : inst.latency_bound_s;
}

// Venue admissible for task i in isolation (empty servers).
bool statically_admissible(const OffloadInstance& inst, std::size_t i, Venue v,
                           std::optional<double> bound) {
  return Placement(inst).admits(inst, i, v, bound);
}

double min_static_term(const OffloadInstance& inst, const ObjectiveWeights& w, std::size_t i,
                       std::optional<double> bound) {
  double best = kInf;
  for (Venue v = 0; v < inst.num_venues(); ++v) {
    if (!statically_admissible(inst, i, v, bound)) continue;
    const VenueCost& c = inst.cost(i, v);
    best = std::min(best, term(inst, w, c.latency_s, c.energy_j));
  }
  return best;
}

std::vector<std::int64_t> stranded_tasks(const OffloadInstance& inst,
                                         std::optional<double> bound) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < inst.num_tasks(); ++i) {
    bool any = false;
    for (Venue v = 0; v < inst.num_venues() && !any; ++v) {
      any = statically_admissible(inst, i, v, bound);
    }
    if (!any) out.push_back(inst.task_ids[i]);
  }
  return out;
}

[[noreturn]] void throw_infeasible(const OffloadInstance& inst, std::optional<double> bound) {
  std::vector<std::int64_t> tasks = stranded_tasks(inst, bound);
  if (tasks.empty()) {
    tasks = inst.task_ids;
    throw InfeasibleError("no assignment satisfies the server limits jointly", std::move(tasks));
  }
  std::string what = fmt::format("no admissible venue for task(s) {}", fmt::join(tasks, ", "));
  throw InfeasibleError(what, std::move(tasks));
}

Solution to_solution(const OffloadInstance& inst, const ObjectiveWeights& w,
                     std::vector<Venue> venues, std::optional<double> bound) {
  const Evaluation e = evaluate(inst, w, venues, bound);
  Solution s;
  s.assignment = Assignment(std::move(venues));
  s.objective = e.objective;
  s.total_latency_s = e.total_latency_s;
  s.total_energy_j = e.total_energy_j;
  s.optimal = true;
  return s;
}

class BranchAndBound {
 public:
  BranchAndBound(const OffloadInstance& inst, const ObjectiveWeights& w,
                 std::optional<double> bound)
      : inst_(inst), w_(w), bound_(bound), n_(inst.num_tasks()), place_(inst) {
    precompute_bounds();
  }

  std::optional<std::vector<Venue>> run() {
    if (!std::isfinite(suffix_min_[0])) return std::nullopt;
    greedy_start();
    std::vector<Venue> cur(n_, kLocalVenue);
    dfs(0, 0.0, cur);
    return best_;
  }

 private:
  void precompute_bounds() {
    suffix_min_.assign(n_ + 1, 0.0);
    for (std::size_t i = n_; i-- > 0;) {
      suffix_min_[i] = suffix_min_[i + 1] + min_static_term(inst_, w_, i, bound_);
    }

    // Capacity-aware bound: everything not sent to a server runs locally,
    // and at most K tasks (K = server slots left) can collect their saving.
    local_ok_suffix_.assign(n_ + 1, true);
    suffix_local_.assign(n_ + 1, 0.0);
    std::vector<double> saving(n_, 0.0);
    for (std::size_t i = n_; i-- > 0;) {
      const bool ok = statically_admissible(inst_, i, kLocalVenue, bound_);
      local_ok_suffix_[i] = local_ok_suffix_[i + 1] && ok;
      const VenueCost& lc = inst_.cost(i, kLocalVenue);
      const double local_term = term(inst_, w_, lc.latency_s, lc.energy_j);
      suffix_local_[i] = suffix_local_[i + 1] + local_term;
      double best_server = kInf;
      for (Venue v = 1; v < inst_.num_venues(); ++v) {
        if (!statically_admissible(inst_, i, v, bound_)) continue;
        const VenueCost& c = inst_.cost(i, v);
        best_server = std::min(best_server, term(inst_, w_, c.latency_s, c.energy_j));
      }
      saving[i] = std::max(0.0, local_term - best_server);
    }
    limited_ = !inst_.server_task_limit.empty() && n_ <= kMaxTopKTasks;
    if (!limited_) return;
    top_savings_.resize(n_ + 1);
    for (std::size_t i = 0; i < n_; ++i) {
      std::vector<double> s(saving.begin() + static_cast<std::ptrdiff_t>(i), saving.end());
      std::sort(s.begin(), s.end(), std::greater<>());
      std::vector<double> cum(s.size() + 1, 0.0);
      for (std::size_t k = 0; k < s.size(); ++k) cum[k + 1] = cum[k] + s[k];
      top_savings_[i] = std::move(cum);
    }
    top_savings_[n_] = {0.0};
  }

  double bound_from(std::size_t i) const {
    double b = suffix_min_[i];
    if (limited_ && local_ok_suffix_[i]) {
      std::size_t slots = 0;
      for (Venue v = 1; v < inst_.num_venues(); ++v) {
        slots += static_cast<std::size_t>(
            std::max(0, inst_.task_limit(v) - place_.count[static_cast<std::size_t>(v)]));
      }
      const auto& cum = top_savings_[i];
      const std::size_t k = std::min(slots, cum.size() - 1);
      b = std::max(b, suffix_local_[i] - cum[k]);
    }
    return b;
  }

  void greedy_start() {
    Placement p(inst_);
    std::vector<Venue> venues(n_, kLocalVenue);
    for (std::size_t i = 0; i < n_; ++i) {
      double best = kInf;
      Venue pick = -1;
      for (Venue v = 0; v < inst_.num_venues(); ++v) {
        if (!p.admits(inst_, i, v, bound_)) continue;
        const double lat = task_latency(inst_, i, v, p.acc_cycles[static_cast<std::size_t>(v)]);
        const double t = term(inst_, w_, lat, inst_.cost(i, v).energy_j);
        if (t < best) {
          best = t;
          pick = v;
        }
      }
      if (pick < 0) return;
      venues[i] = pick;
      p.place(inst_, i, pick);
    }
    const Evaluation e = evaluate(inst_, w_, venues, bound_);
    if (e.feasible) {
      best_ = std::move(venues);
      best_obj_ = e.objective;
    }
  }

  bool prune(double lb) const {
    if (!best_) return false;
    return lb > best_obj_ + 1e-9 * std::max(1.0, std::abs(best_obj_));
  }

  void dfs(std::size_t i, double partial, std::vector<Venue>& cur) {
    if (i == n_) {
      if (!best_ || partial < best_obj_ ||
          (partial == best_obj_ && std::lexicographical_compare(cur.begin(), cur.end(),
                                                                best_->begin(), best_->end()))) {
        best_ = cur;
        best_obj_ = partial;
      }
      return;
    }
    if (prune(partial + bound_from(i))) return;
    for (Venue v = 0; v < inst_.num_venues(); ++v) {
      if (!place_.admits(inst_, i, v, bound_)) continue;
      const double lat = task_latency(inst_, i, v, place_.acc_cycles[static_cast<std::size_t>(v)]);
      const double next = partial + term(inst_, w_, lat, inst_.cost(i, v).energy_j);
      if (prune(next + suffix_min_[i + 1])) continue;
      cur[i] = v;
      place_.place(inst_, i, v);
      dfs(i + 1, next, cur);
      place_.unplace(inst_, i, v);
    }
    cur[i] = kLocalVenue;
  }

  static constexpr std::size_t kMaxTopKTasks = 2000;

  const OffloadInstance& inst_;
  ObjectiveWeights w_;
  std::optional<double> bound_;
  std::size_t n_;
  Placement place_;
  std::vector<double> suffix_min_;
  std::vector<double> suffix_local_;
  std::vector<bool> local_ok_suffix_;
  std::vector<std::vector<double>> top_savings_;
  bool limited_ = false;
  std::optional<std::vector<Venue>> best_;
  double best_obj_ = kInf;
};

Solution solve(const OffloadInstance& inst, const ObjectiveWeights& w,
               std::optional<double> bound) {
  inst.validate();
  BranchAndBound bb(inst, w, bound);
  std::optional<std::vector<Venue>> venues = bb.run();
  if (!venues) throw_infeasible(inst, bound);
  return to_solution(inst, w, std::move(*venues), bound);
}

}  // namespace

ObjectiveWeights objective_weights(const Weights& w) {
  return {static_cast<double>(w.w_a()), static_cast<double>(w.w_b())};
}

Evaluation evaluate(const OffloadInstance& inst, const ObjectiveWeights& w,
                    std::span<const Venue> venues, std::optional<double> latency_bound_s) {
  Evaluation e;
  if (venues.size() != inst.num_tasks()) {
    throw std::invalid_argument("evaluate: assignment length differs from task count");
  }
  const std::optional<double> bound = effective_bound(inst, latency_bound_s);
  Placement p(inst);
  e.feasible = true;
  e.task_latency_s.reserve(venues.size());
  for (std::size_t i = 0; i < venues.size(); ++i) {
    const Venue v = venues[i];
    if (v < 0 || v >= inst.num_venues()) {
      throw std::invalid_argument(fmt::format("evaluate: venue {} out of range", v));
    }
    if (!p.admits(inst, i, v, bound)) e.feasible = false;
    const double lat = task_latency(inst, i, v, p.acc_cycles[static_cast<std::size_t>(v)]);
    const double en = inst.cost(i, v).energy_j;
    e.objective += term(inst, w, lat, en);
    e.total_latency_s += lat;
    e.total_energy_j += en;
    e.task_latency_s.push_back(lat);
    p.place(inst, i, v);
  }
  return e;
}

Solution solve_weighted(const OffloadInstance& inst, const Weights& w) {
  return solve(inst, objective_weights(w), inst.latency_bound_s);
}

Solution solve_energy_min(const OffloadInstance& inst, double latency_bound_s) {
  if (!(latency_bound_s > 0.0) || !std::isfinite(latency_bound_s)) {
    throw std::invalid_argument("solve_energy_min: latency bound must be positive");
  }
  return solve(inst, ObjectiveWeights{0.0, 1.0}, latency_bound_s);
}

Solution brute_force_oracle(const OffloadInstance& inst, const Weights& w,
                            std::optional<double> latency_bound_s) {
  inst.validate();
  const std::size_t n = inst.num_tasks();
  const double combos = std::pow(static_cast<double>(inst.num_venues()), static_cast<double>(n));
  if (combos > kOracleLimit) {
    throw InstanceTooLarge(fmt::format("oracle: {} assignments exceed the limit of {}", combos,
                                       kOracleLimit));
  }
  const ObjectiveWeights ow = objective_weights(w);
  const std::optional<double> bound = effective_bound(inst, latency_bound_s);

  std::vector<Venue> cur(n, kLocalVenue);
  std::optional<std::vector<Venue>> best;
  double best_obj = kInf;
  while (true) {
    const Evaluation e = evaluate(inst, ow, cur, bound);
    if (e.feasible && (!best || e.objective < best_obj)) {
      best = cur;
      best_obj = e.objective;
    }
    bool done = true;
    for (std::size_t k = n; k-- > 0;) {
      if (++cur[k] < inst.num_venues()) {
        done = false;
        break;
      }
      cur[k] = kLocalVenue;
    }
    if (done) break;
  }
  if (!best) throw_infeasible(inst, bound);
  return to_solution(inst, ow, std::move(*best), bound);
}

double lower_bound(std::span<const Venue> prefix, const OffloadInstance& inst, const Weights& w) {
  if (prefix.size() > inst.num_tasks()) {
    throw std::invalid_argument("lower_bound: prefix longer than task list");
  }
  const ObjectiveWeights ow = objective_weights(w);
  const std::optional<double> bound = inst.latency_bound_s;
  Placement p(inst);
  double total = 0.0;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const Venue v = prefix[i];
    const double lat = task_latency(inst, i, v, p.acc_cycles[static_cast<std::size_t>(v)]);
    total += term(inst, ow, lat, inst.cost(i, v).energy_j);
    p.place(inst, i, v);
  }
  for (std::size_t i = prefix.size(); i < inst.num_tasks(); ++i) {
    total += min_static_term(inst, ow, i, bound);
  }
  return total;
}

}  // namespace mecoff::opt
