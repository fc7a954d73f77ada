// Acceptance criteria 1-8. One PASS/FAIL line per criterion; exit status 1
// if any criterion fails.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <fmt/format.h>

#include "mecoff/bench/export.hpp"
#include "mecoff/bench/scenario.hpp"
#include "mecoff/core/config.hpp"
#include "mecoff/env/cost.hpp"
#include "mecoff/env/environment.hpp"
#include "mecoff/opt/certify.hpp"
#include "mecoff/rl/learning_env.hpp"
#include "mecoff/rl/trainer.hpp"
#include "mecoff/rl/update.hpp"

using namespace mecoff;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool report(int id, bool pass, const std::string& detail) {
  fmt::print("CRITERION {} {}: {}\n", id, pass ? "PASS" : "FAIL", detail);
  std::fflush(stdout);
  return pass;
}

bool criterion1() {
  const auto t0 = Clock::now();
  const opt::CertificationReport r = opt::certify_solver(20240601, 500);
  const double secs = seconds_since(t0);
  const bool pass = r.instances == 500 && r.weighted_mismatches == 0 && r.energy_mismatches == 0 &&
                    secs < 60.0;
  return report(1, pass,
                fmt::format("{} instances, weighted mismatches {}, energy-min mismatches {} "
                            "({} jointly infeasible), {:.2f} s",
                            r.instances, r.weighted_mismatches, r.energy_mismatches,
                            r.both_infeasible, secs));
}

bool criterion2() {
  Rng rng = seeded_rng(2, 2);
  constexpr std::size_t kStates = 4, kActions = 3;
  int mismatches = 0, fixed_point_moves = 0;
  for (int i = 0; i < 100000; ++i) {
    rl::QTable a(kStates, kActions);
    for (std::size_t s = 0; s < kStates; ++s)
      for (std::size_t k = 0; k < kActions; ++k) a.set(s, k, -500.0 + 600.0 * rng.uniform01());
    rl::QTable b = a;
    const std::size_t s = rng.uniform_index(kStates);
    const std::size_t act = rng.uniform_index(kActions);
    const std::size_t s_next = rng.uniform_index(kStates);
    const double r = -300.0 * rng.uniform01();
    const double delta = 1e-3 + (1.0 - 1e-3) * rng.uniform01();
    const double beta = 0.999 * rng.uniform01();
    const double tau = -300.0 + 600.0 * rng.uniform01();
    rl::q_update_standard(a, s, act, r, s_next, delta, beta);
    rl::q_update_modified(b, s, act, r, s_next, delta, beta, 0.0, tau);
    if (std::bit_cast<std::uint64_t>(a.get(s, act)) != std::bit_cast<std::uint64_t>(b.get(s, act))) {
      ++mismatches;
    }

    // Fixed point: Q(s,a) already equals the target.
    rl::QTable f = a;
    const double target = r + beta * f.max_value(s_next);
    if (s != s_next) {
      f.set(s, act, target);
      const rl::QTable before = f;
      rl::q_update_standard(f, s, act, r, s_next, delta, beta);
      if (!(f == before)) ++fixed_point_moves;
    }
  }
  rl::QTable w(2, 1);
  w.set(1, 0, -2.0);
  rl::q_update_standard(w, 0, 0, -5.0, 1, 0.5, 0.9);
  const double worked = w.get(0, 0);
  const bool pass = mismatches == 0 && fixed_point_moves == 0 && std::abs(worked + 3.4) <= 1e-12;
  return report(2, pass,
                fmt::format("1e5 tuples: {} bitwise mismatches, {} fixed-point changes; worked "
                            "example {}",
                            mismatches, fixed_point_moves, worked));
}

// One user, one state, one slot per episode; venue v always takes times[v].
class BanditEnv final : public rl::LearningEnv {
 public:
  explicit BanditEnv(std::vector<double> times) : times_(std::move(times)) {}
  int num_users() const override { return 1; }
  std::size_t num_states() const override { return 1; }
  int num_actions() const override { return static_cast<int>(times_.size()); }
  int slots_per_episode() const override { return 1; }
  double reward_bound() const override { return 100.0; }
  void reset() override {}
  void begin_slot() override {}
  bool has_task(int) const override { return true; }
  std::size_t observe(int) const override { return 0; }
  std::vector<int> valid_actions(int) const override {
    std::vector<int> all(times_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return all;
  }
  rl::LearnStep step(std::span<const std::optional<int>> actions) override {
    return {{-times_[static_cast<std::size_t>(*actions[0])]}, {true}};
  }

 private:
  std::vector<double> times_;
};

bool criterion3() {
  const auto t0 = Clock::now();
  const std::vector<double> times{7.0, 3.0, 5.0, 9.0, 4.0, 6.0};
  RLParams p;
  p.beta = 0.0;
  p.epsilon = 0.1;
  p.epsilon_decay = true;
  p.epsilon_min = 0.01;
  p.episodes = 2000;
  int hits = 0;
  for (int seed = 0; seed < 100; ++seed) {
    BanditEnv env(times);
    const rl::TrainingResult r = rl::train_run(env, p, static_cast<std::uint64_t>(seed), 3);
    const auto row = r.tables.front().row(0);
    std::size_t best = 0;
    for (std::size_t a = 1; a < row.size(); ++a)
      if (row[a] > row[best]) best = a;
    if (best == 1) ++hits;
  }
  const double secs = seconds_since(t0);
  return report(3, hits >= 95 && secs < 30.0,
                fmt::format("greedy action is the fastest venue in {}/100 runs, {:.2f} s", hits,
                            secs));
}

struct SweepOutput {
  std::string csv;
  std::map<bench::Figure, std::string> figures;
  bench::MetricsReport report;
};

SweepOutput run_default_sweep(const ValidatedConfig& cfg) {
  SweepOutput out;
  std::ostringstream csv;
  out.report = bench::sweep(cfg->policies, cfg->node_counts, cfg, &csv);
  out.csv = csv.str();
  for (bench::Figure f : {bench::Figure::qos, bench::Figure::reliability, bench::Figure::energy,
                          bench::Figure::latency}) {
    std::ostringstream fig;
    bench::write_figure_csv(fig, out.report, f);
    out.figures[f] = fig.str();
  }
  return out;
}

bool criterion4(const bench::MetricsReport& sweep_report, double secs) {
  std::map<int, std::map<PolicyKind, bench::MetricsRow>> by_n;
  for (const auto& row : sweep_report.rows) by_n[row.num_users][row.policy] = row;

  int qos = 0, rel = 0, energy = 0, latency = 0;
  for (auto& [n, m] : by_n) {
    const auto& lo = m.at(PolicyKind::local_only);
    const auto& op = m.at(PolicyKind::optimized);
    const auto& ro = m.at(PolicyKind::rl_offload);
    const auto& ll = m.at(PolicyKind::rl_least_load);
    const bool q = ll.qos.mean >= op.qos.mean && ll.qos.mean >= ro.qos.mean &&
                   ll.qos.mean >= lo.qos.mean;
    const bool r = lo.reliability.mean < op.reliability.mean &&
                   lo.reliability.mean < ro.reliability.mean &&
                   lo.reliability.mean < ll.reliability.mean &&
                   ll.reliability.mean >= op.reliability.mean &&
                   ll.reliability.mean >= ro.reliability.mean;
    const bool e = ll.energy_j.mean <= op.energy_j.mean && ll.energy_j.mean <= ro.energy_j.mean &&
                   ll.energy_j.mean <= lo.energy_j.mean;
    const bool l = lo.latency_s.mean <= op.latency_s.mean &&
                   lo.latency_s.mean <= ro.latency_s.mean &&
                   lo.latency_s.mean <= ll.latency_s.mean &&
                   ll.latency_s.mean > op.latency_s.mean && ll.latency_s.mean > ro.latency_s.mean;
    qos += q;
    rel += r;
    energy += e;
    latency += l;
    fmt::print("  N={:3d} qos[lo {:.4f} op {:.4f} ro {:.4f} ll {:.4f}] rel[lo {:.4f} op {:.4f} "
               "ro {:.4f} ll {:.4f}] energy[lo {:.3f} op {:.3f} ro {:.3f} ll {:.3f}] latency[lo "
               "{:.2f} op {:.2f} ro {:.2f} ll {:.2f}]\n",
               n, lo.qos.mean, op.qos.mean, ro.qos.mean, ll.qos.mean, lo.reliability.mean,
               op.reliability.mean, ro.reliability.mean, ll.reliability.mean, lo.energy_j.mean,
               op.energy_j.mean, ro.energy_j.mean, ll.energy_j.mean, lo.latency_s.mean,
               op.latency_s.mean, ro.latency_s.mean, ll.latency_s.mean);
  }
  const int points = static_cast<int>(by_n.size());
  const bool pass =
      points == 10 && qos >= 8 && rel >= 8 && energy >= 8 && latency >= 8 && secs < 600.0;
  return report(4, pass,
                fmt::format("orderings hold at qos {}/{}, reliability {}/{}, energy {}/{}, "
                            "latency {}/{}; sweep {:.1f} s",
                            qos, points, rel, points, energy, points, latency, points, secs));
}

bool criterion5() {
  SystemConfig raw;
  raw.num_users = 100;
  raw.num_servers = 5;
  raw.arrival_rate_lambda = 1.0;
  raw.local_cpu_rate_hz = 2e9;
  raw.local_queue_capacity = 3;
  raw.server_queue_limit = 8;
  raw.server_capacity_cycles = 5e10;
  raw.slots_per_episode = 500;
  const ValidatedConfig cfg = validate_config(raw);
  env::Environment sim(cfg, seeded_rng(5, 5));
  Rng choice = seeded_rng(5, 6);

  std::int64_t completions = 0, drops = 0;
  std::int64_t conservation = 0, purity = 0, positivity = 0, monotonicity = 0;
  std::vector<std::optional<Venue>> actions(static_cast<std::size_t>(raw.num_users));
  std::vector<double> prev_after(static_cast<std::size_t>(raw.num_servers), 0.0);
  while (completions < 1'000'000) {
    if (sim.state().slot == raw.slots_per_episode) {
      sim.reset();
      std::fill(prev_after.begin(), prev_after.end(), 0.0);
    }
    sim.begin_slot();
    for (int u = 0; u < raw.num_users; ++u) {
      const auto ui = static_cast<std::size_t>(u);
      actions[ui] = sim.state().pending[ui].empty()
                        ? std::nullopt
                        : std::optional<Venue>(static_cast<Venue>(
                              choice.uniform_index(static_cast<std::uint64_t>(raw.num_servers) + 1)));
    }
    const env::StepResult res = sim.step(actions);
    if (!env::conserves_tasks(sim.state())) ++conservation;
    for (const auto& o : res.outcomes) {
      if (o.status == env::TaskStatus::dropped) {
        ++drops;
        continue;
      }
      ++completions;
      const auto& c = o.cost;
      if (o.venue == kLocalVenue && (c.t_comm_s != 0.0 || c.e_tx_j != 0.0)) ++purity;
      const bool ok = std::isfinite(c.latency_s()) && std::isfinite(c.energy_j()) &&
                      c.latency_s() > 0.0 && c.energy_j() > 0.0 && c.t_comm_s >= 0.0 &&
                      c.t_queue_s >= 0.0 && c.t_comp_s > 0.0 && c.e_tx_j >= 0.0 &&
                      c.e_comp_j > 0.0;
      if (!ok) ++positivity;
    }
    for (std::size_t j = 0; j < prev_after.size(); ++j) {
      const double before = res.metrics.backlog_before_drain[j];
      const double after = res.metrics.backlog_after_drain[j];
      if (!(after <= before && after >= 0.0 && before >= prev_after[j])) ++monotonicity;
      prev_after[j] = after;
    }
  }
  const std::int64_t violations = conservation + purity + positivity + monotonicity;
  return report(5, violations == 0,
                fmt::format("{} completions ({} drops): conservation {}, local purity {}, "
                            "positivity {}, backlog monotonicity {} violations",
                            completions, drops, conservation, purity, positivity, monotonicity));
}

bool criterion6() {
  constexpr int kUsers = 100, kSlots = 100;
  bool pass = true;
  std::string detail;
  for (double lambda : {0.5, 1.0, 2.0, 5.0}) {
    Rng rng = seeded_rng(6, static_cast<std::uint64_t>(lambda * 1000));
    std::vector<std::int64_t> counts(kUsers * kSlots, 0);
    std::int64_t next_id = 0;
    for (int t = 0; t < kSlots; ++t) {
      const auto tasks = env::generate_arrivals(lambda, kUsers, t, rng, {1000, 10}, next_id);
      next_id += static_cast<std::int64_t>(tasks.size());
      for (const Task& k : tasks) ++counts[static_cast<std::size_t>(t * kUsers + k.owner())];
    }
    const double n = static_cast<double>(counts.size());
    double mean = 0.0;
    for (auto c : counts) mean += static_cast<double>(c);
    mean /= n;

    // Bins 0..K-1 plus a tail bin, each with expected count >= 5.
    std::vector<double> expected;
    double pmf = std::exp(-lambda), cdf = 0.0;
    int k = 0;
    while (n * pmf >= 5.0 && n * (1.0 - cdf - pmf) >= 5.0) {
      expected.push_back(n * pmf);
      cdf += pmf;
      ++k;
      pmf *= lambda / k;
    }
    const std::size_t tail = expected.size();
    expected.push_back(n * (1.0 - cdf));
    std::vector<double> observed(expected.size(), 0.0);
    for (auto c : counts) observed[std::min(static_cast<std::size_t>(c), tail)] += 1.0;
    double stat = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
    }
    const double dof = static_cast<double>(expected.size() - 1);
    const double p = boost::math::cdf(boost::math::complement(
        boost::math::chi_squared_distribution<double>(dof), stat));
    const double rel = std::abs(mean - lambda) / lambda;
    const bool ok = rel <= 0.05 && p > 0.01;
    pass = pass && ok;
    detail += fmt::format("{}lambda={} mean={:.4f} chi2={:.3f} dof={} p={:.4f}",
                          detail.empty() ? "" : "; ", lambda, mean, stat, dof, p);
  }
  return report(6, pass, detail);
}

bool criterion7(const SweepOutput& a, const SweepOutput& b) {
  bool same = a.csv == b.csv && !a.csv.empty();
  for (const auto& [f, text] : a.figures) same = same && text == b.figures.at(f);
  return report(7, same,
                fmt::format("two sweeps: sweep csv {} bytes {}, figure csvs {}", a.csv.size(),
                            a.csv == b.csv ? "identical" : "differ",
                            same ? "identical" : "differ"));
}

bool criterion8() {
  SystemConfig raw;
  raw.tx_power_w = 0.5;
  const ValidatedConfig cfg = validate_config(raw);
  const Task task(0, 0, cfg->data_size_bits, cfg->cycles_per_bit, 0);
  const env::ServerState idle(cfg.edge_server(1));
  const env::CostBreakdown c = env::offload_cost(task, cfg.user_node(0), cfg.link(0, 1), idle);
  const bool pass = std::abs(c.latency_s() - 101.0) <= 1e-9 && std::abs(c.e_tx_j - 50.0) <= 1e-9;
  return report(8, pass, fmt::format("offload latency {} s (t_comm {}, t_queue {}, t_comp {}), "
                                     "transmit energy {} J",
                                     c.latency_s(), c.t_comm_s, c.t_queue_s, c.t_comp_s, c.e_tx_j));
}

}  // namespace

int main() {
  bool ok = true;
  ok &= criterion1();
  ok &= criterion2();
  ok &= criterion3();

  const ValidatedConfig cfg = validate_config(SystemConfig{});
  auto t0 = Clock::now();
  const SweepOutput first = run_default_sweep(cfg);
  const double sweep_secs = seconds_since(t0);
  ok &= criterion4(first.report, sweep_secs);
  ok &= criterion5();
  ok &= criterion6();
  const SweepOutput second = run_default_sweep(cfg);
  ok &= criterion7(first, second);
  ok &= criterion8();
  fmt::print("{}\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return ok ? 0 : 1;
}
