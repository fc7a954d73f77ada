#include "mecoff/bench/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/ostream.h>

namespace mecoff::bench {

double qos_score(double avg_latency_s, double avg_energy_j, const Weights& w, double t_ref_s,
                 double e_ref_j) {
  if (!(t_ref_s > 0.0) || !(e_ref_j > 0.0)) {
    throw std::invalid_argument("qos_score: references must be positive");
  }
  const double phi = w.phi();
  return phi / (phi + w.w_a() * (avg_latency_s / t_ref_s) + w.w_b() * (avg_energy_j / e_ref_j));
}

double reliability(std::int64_t completed, std::int64_t dropped) {
  if (completed < 0 || dropped < 0 || completed + dropped == 0) {
    throw std::invalid_argument("reliability: no finished tasks");
  }
  return static_cast<double>(completed) / static_cast<double>(completed + dropped);
}

double RunTotals::avg_latency_s() const {
  if (completed == 0) throw std::runtime_error("no completed tasks to average");
  return latency_s / static_cast<double>(completed);
}

double RunTotals::avg_energy_j() const {
  if (completed == 0) throw std::runtime_error("no completed tasks to average");
  return energy_j / static_cast<double>(completed);
}

Stat summarize(std::span<const double> values) {
  Stat s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

void write_report_header(std::ostream& out) {
  out << "policy,num_users,qos_mean,qos_std,rel_mean,rel_std,energy_mean,energy_std,"
         "latency_mean,latency_std\n";
}

void write_report_row(std::ostream& out, const MetricsRow& r) {
  fmt::print(out, "{},{},{},{},{},{},{},{},{},{}\n", to_string(r.policy), r.num_users, r.qos.mean,
             r.qos.std, r.reliability.mean, r.reliability.std, r.energy_j.mean, r.energy_j.std,
             r.latency_s.mean, r.latency_s.std);
}

void write_report_csv(std::ostream& out, const MetricsReport& report) {
  write_report_header(out);
  for (const auto& r : report.rows) write_report_row(out, r);
}

}  // namespace mecoff::bench
