#include "mecoff/bench/scenario.hpp"

#include <fmt/format.h>

#include "mecoff/env/trace.hpp"

namespace mecoff::bench {

std::uint64_t stream_for(StreamPurpose purpose, int num_users, int run, PolicyKind policy) {
  const auto p = static_cast<std::uint64_t>(purpose);
  const auto n = static_cast<std::uint64_t>(num_users);
  const auto r = static_cast<std::uint64_t>(run);
  if (purpose == StreamPurpose::evaluation) return make_stream_id({p, n, r});
  return make_stream_id({p, n, r, static_cast<std::uint64_t>(policy)});
}

rl::TrainingResult train_policy(PolicyKind kind, const ValidatedConfig& cfg, int run) {
  const int n = cfg->num_users;
  rl::MecLearningEnv env(
      cfg, learner_for(kind),
      seeded_rng(cfg->seed, stream_for(StreamPurpose::training, n, run, kind)));
  return rl::train_run(env, cfg->rl, cfg->seed, stream_for(StreamPurpose::agents, n, run, kind));
}

std::unique_ptr<Policy> make_policy(PolicyKind kind, const ValidatedConfig& cfg, int run) {
  switch (kind) {
    case PolicyKind::local_only:
      return std::make_unique<LocalOnlyPolicy>();
    case PolicyKind::optimized:
      return std::make_unique<OptimizedPolicy>(cfg);
    case PolicyKind::rl_offload:
    case PolicyKind::rl_least_load: {
      rl::TrainingResult trained = train_policy(kind, cfg, run);
      return std::make_unique<RlPolicy>(
          cfg, learner_for(kind), std::move(trained.tables),
          seeded_rng(cfg->seed, stream_for(StreamPurpose::greedy, cfg->num_users, run, kind)));
    }
  }
  throw std::invalid_argument("make_policy: unknown policy");
}

RunTotals simulate_run(Policy& policy, const ValidatedConfig& cfg, int run, std::ostream* trace) {
  env::Environment environment(
      cfg, seeded_rng(cfg->seed, stream_for(StreamPurpose::evaluation, cfg->num_users, run,
                                            PolicyKind::local_only)));
  RunTotals totals;
  for (int e = 0; e < cfg->rl.eval_episodes; ++e) {
    environment.reset();
    for (int t = 0; t < cfg->slots_per_episode; ++t) {
      environment.begin_slot();
      const std::vector<std::optional<Venue>> actions = policy.decide(environment.state());
      const env::StepResult res = environment.step(actions);
      totals.completed += res.metrics.completed;
      totals.dropped += res.metrics.dropped;
      totals.latency_s += res.metrics.latency_s;
      totals.energy_j += res.metrics.energy_j;
      if (trace) env::write_trace_rows(*trace, res.outcomes);
    }
  }
  return totals;
}

MetricsRow run_scenario(PolicyKind kind, const ValidatedConfig& cfg, std::ostream* trace) {
  const int runs = cfg->rl.monte_carlo_runs;
  const Weights w = cfg.weights();
  std::vector<double> qos, rel, energy, latency, cost;
  double dropped = 0.0;
  if (trace) env::write_trace_header(*trace);
  for (int run = 0; run < runs; ++run) {
    std::ostream* run_trace = run == 0 ? trace : nullptr;
    RunTotals ref_totals;
    RunTotals totals;
    if (kind == PolicyKind::local_only) {
      LocalOnlyPolicy p;
      totals = simulate_run(p, cfg, run, run_trace);
      ref_totals = totals;
    } else {
      LocalOnlyPolicy ref;
      ref_totals = simulate_run(ref, cfg, run);
      std::unique_ptr<Policy> p = make_policy(kind, cfg, run);
      totals = simulate_run(*p, cfg, run, run_trace);
    }
    const double lat = totals.avg_latency_s();
    const double en = totals.avg_energy_j();
    qos.push_back(qos_score(lat, en, w, ref_totals.avg_latency_s(), ref_totals.avg_energy_j()));
    rel.push_back(reliability(totals.completed, totals.dropped));
    energy.push_back(en);
    latency.push_back(lat);
    cost.push_back(w.w_a() * lat + w.w_b() * en);
    dropped += static_cast<double>(totals.dropped);
  }
  MetricsRow row;
  row.policy = kind;
  row.num_users = cfg->num_users;
  row.qos = summarize(qos);
  row.reliability = summarize(rel);
  row.energy_j = summarize(energy);
  row.latency_s = summarize(latency);
  row.weighted_cost = summarize(cost);
  row.dropped_mean = dropped / runs;
  return row;
}

MetricsReport sweep(std::span<const PolicyKind> policies, std::span<const int> node_counts,
                    const ValidatedConfig& cfg, std::ostream* csv) {
  if (node_counts.empty()) throw std::invalid_argument("sweep: no node counts");
  if (policies.empty()) throw std::invalid_argument("sweep: no policies");
  for (std::size_t i = 1; i < node_counts.size(); ++i) {
    if (node_counts[i] <= node_counts[i - 1]) {
      throw std::invalid_argument("sweep: node counts must be strictly ascending");
    }
  }
  MetricsReport report;
  if (csv) write_report_header(*csv);
  for (int n : node_counts) {
    const ValidatedConfig cell = cfg.with_num_users(n);
    for (PolicyKind kind : policies) {
      report.rows.push_back(run_scenario(kind, cell));
      if (csv) {
        write_report_row(*csv, report.rows.back());
        csv->flush();
      }
    }
  }
  return report;
}

}  // namespace mecoff::bench
