#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "mecoff/core/config.hpp"

namespace mecoff::bench {

/// phi / (phi + w_a * latency / t_ref + w_b * energy / e_ref).
double qos_score(double avg_latency_s, double avg_energy_j, const Weights& w, double t_ref_s,
                 double e_ref_j);

/// completed / (completed + dropped).
double reliability(std::int64_t completed, std::int64_t dropped);

/// Totals of one Monte Carlo run's evaluation episodes.
struct RunTotals {
  std::int64_t completed = 0;
  std::int64_t dropped = 0;
  double latency_s = 0.0;
  double energy_j = 0.0;

  double avg_latency_s() const;  // over completed tasks; throws if none
  double avg_energy_j() const;
};

struct Stat {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single value
};

Stat summarize(std::span<const double> values);

struct MetricsRow {
  PolicyKind policy = PolicyKind::local_only;
  int num_users = 0;
  Stat qos;
  Stat reliability;
  Stat energy_j;
  Stat latency_s;
  Stat weighted_cost;  // w_a * avg latency + w_b * avg energy, unnormalised
  double dropped_mean = 0.0;
};

struct MetricsReport {
  std::vector<MetricsRow> rows;
};

void write_report_header(std::ostream& out);
void write_report_row(std::ostream& out, const MetricsRow& row);
void write_report_csv(std::ostream& out, const MetricsReport& report);

}  // namespace mecoff::bench
