#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mecoff/bench/export.hpp"
#include "mecoff/bench/scenario.hpp"
#include "mecoff/core/config.hpp"
#include "mecoff/core/errors.hpp"
#include "mecoff/opt/certify.hpp"
#include "mecoff/opt/solver.hpp"
#include "mecoff/rl/surface.hpp"

namespace fs = std::filesystem;
using namespace mecoff;

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kRuntimeError = 2, kInfeasible = 3 };

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> policies;
  std::vector<int> nodes;
  std::string out_dir = ".";
  bool trace = false;
  std::optional<bool> use_modified;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "Scenario file ([system], [costs], [rl], [sweep])");
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--policy", o.policies,
                  "local_only, optimized, rl_offload or rl_least_load (repeatable)");
  cmd->add_option("--nodes", o.nodes, "Node counts, comma separated")->delimiter(',');
  cmd->add_option("--out", o.out_dir, "Output directory");
  cmd->add_flag("--trace", o.trace, "Write a per-task CSV trace");
  cmd->add_option("--use-modified-update", o.use_modified, "Use the modified Q-update");
}

ValidatedConfig resolve(const CommonOptions& o) {
  SystemConfig raw = o.config_path.empty() ? SystemConfig{} : load_config(o.config_path);
  if (o.seed) raw.seed = *o.seed;
  if (o.use_modified) raw.rl.use_modified = *o.use_modified;
  if (!o.nodes.empty()) {
    raw.node_counts = o.nodes;
    raw.num_users = o.nodes.front();
  }
  if (!o.policies.empty()) {
    raw.policies.clear();
    for (const auto& p : o.policies) raw.policies.push_back(parse_policy_kind(p));
  }
  return validate_config(raw);
}

fs::path prepare_out(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(fmt::format("cannot open {} for writing", path.string()));
  return f;
}

int cmd_run(const CommonOptions& o) {
  const ValidatedConfig cfg = resolve(o);
  if (cfg->policies.size() != 1) {
    throw ConfigError({"run: exactly one --policy required"});
  }
  const PolicyKind kind = cfg->policies.front();
  const fs::path out = prepare_out(o.out_dir);
  std::optional<std::ofstream> trace;
  if (o.trace) trace.emplace(open_out(out / "trace.csv"));
  const bench::MetricsRow row = bench::run_scenario(kind, cfg, trace ? &*trace : nullptr);
  std::ofstream csv = open_out(out / "run.csv");
  bench::write_report_header(csv);
  bench::write_report_row(csv, row);
  fmt::print("policy={} num_users={} qos={} reliability={} energy_j={} latency_s={} "
             "weighted_cost={} dropped_per_run={} carrier_freq_hz={}\n",
             to_string(kind), row.num_users, row.qos.mean, row.reliability.mean,
             row.energy_j.mean, row.latency_s.mean, row.weighted_cost.mean, row.dropped_mean,
             cfg->carrier_freq_hz);
  return kOk;
}

int cmd_sweep(const CommonOptions& o) {
  const ValidatedConfig cfg = resolve(o);
  const fs::path out = prepare_out(o.out_dir);
  std::ofstream csv = open_out(out / "sweep.csv");
  const bench::MetricsReport report = bench::sweep(cfg->policies, cfg->node_counts, cfg, &csv);
  for (bench::Figure f : {bench::Figure::qos, bench::Figure::reliability, bench::Figure::energy,
                          bench::Figure::latency}) {
    bench::export_figure_data(report, f, out / fmt::format("fig_{}.csv", bench::to_string(f)));
  }
  fmt::print("wrote {} rows to {}\n", report.rows.size(), (out / "sweep.csv").string());
  return kOk;
}

int cmd_oracle(const CommonOptions& o, int instances) {
  const std::uint64_t seed = o.seed.value_or(SystemConfig{}.seed);
  const opt::CertificationReport r = opt::certify_solver(seed, instances);
  fmt::print("oracle: {} instances, {} weighted mismatches, {} energy-min mismatches, "
             "{} jointly infeasible\n",
             r.instances, r.weighted_mismatches, r.energy_mismatches, r.both_infeasible);
  return r.weighted_mismatches == 0 && r.energy_mismatches == 0 ? kOk : kRuntimeError;
}

int cmd_surface(const CommonOptions& o) {
  const ValidatedConfig cfg = resolve(o);
  PolicyKind kind = PolicyKind::rl_offload;
  if (!o.policies.empty()) kind = cfg->policies.front();
  if (!bench::is_rl(kind)) throw ConfigError({"surface: --policy must be an rl_* policy"});
  const rl::TrainingResult trained = bench::train_policy(kind, cfg, 0);
  const rl::DecisionSurface surface =
      rl::offload_decision_surface(trained.tables, cfg->rl.load_buckets, cfg->num_servers);
  const fs::path out = prepare_out(o.out_dir);
  std::ofstream csv = open_out(out / "surface.csv");
  rl::write_surface_csv(csv, surface);
  fmt::print("wrote {}\n", (out / "surface.csv").string());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MEC task offloading simulator"};
  app.require_subcommand(1);

  CommonOptions run_o, sweep_o, oracle_o, surface_o;
  int instances = 500;
  CLI::App* run = app.add_subcommand("run", "Run one scenario");
  add_common(run, run_o);
  CLI::App* sw = app.add_subcommand("sweep", "Run every policy over every node count");
  add_common(sw, sweep_o);
  CLI::App* oracle = app.add_subcommand("oracle", "Certify the solver on random instances");
  add_common(oracle, oracle_o);
  oracle->add_option("--instances", instances, "Number of random instances");
  CLI::App* surface = app.add_subcommand("surface", "Export the learned decision surface");
  add_common(surface, surface_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return cmd_run(run_o);
    if (*sw) return cmd_sweep(sweep_o);
    if (*oracle) return cmd_oracle(oracle_o, instances);
    if (*surface) return cmd_surface(surface_o);
  } catch (const ConfigError& e) {
    fmt::print(std::cerr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const opt::InfeasibleError& e) {
    fmt::print(std::cerr, "infeasible: {}\n", e.what());
    return kInfeasible;
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kRuntimeError;
  }
  return kOk;
}
