#include "mecoff/bench/export.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace mecoff::bench {

namespace {

double pick(const MetricsRow& r, Figure f) {
  switch (f) {
    case Figure::qos:
      return r.qos.mean;
    case Figure::reliability:
      return r.reliability.mean;
    case Figure::energy:
      return r.energy_j.mean;
    case Figure::latency:
      return r.latency_s.mean;
  }
  return 0.0;
}

}  // namespace

std::string_view to_string(Figure f) {
  switch (f) {
    case Figure::qos:
      return "qos";
    case Figure::reliability:
      return "reliability";
    case Figure::energy:
      return "energy";
    case Figure::latency:
      return "latency";
  }
  return "?";
}

Figure parse_figure(std::string_view name) {
  for (Figure f : {Figure::qos, Figure::reliability, Figure::energy, Figure::latency}) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument(fmt::format("unknown figure '{}'", name));
}

void write_figure_csv(std::ostream& out, const MetricsReport& report, Figure figure) {
  if (report.rows.empty()) throw std::invalid_argument("export: empty report");
  std::vector<PolicyKind> present;
  for (PolicyKind k : kAllPolicies) {
    for (const auto& r : report.rows) {
      if (r.policy == k) {
        present.push_back(k);
        break;
      }
    }
  }
  std::map<int, std::map<PolicyKind, double>> grid;
  for (const auto& r : report.rows) grid[r.num_users][r.policy] = pick(r, figure);

  out << "num_users";
  for (PolicyKind k : present) out << ',' << to_string(k);
  out << '\n';
  for (const auto& [n, cells] : grid) {
    out << n;
    for (PolicyKind k : present) {
      const auto it = cells.find(k);
      if (it == cells.end()) {
        out << ',';
      } else {
        fmt::print(out, ",{}", it->second);
      }
    }
    out << '\n';
  }
}

void export_figure_data(const MetricsReport& report, Figure figure,
                        const std::filesystem::path& path) {
  if (report.rows.empty()) throw std::invalid_argument("export: empty report");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot open {} for writing", path.string()));
  write_figure_csv(out, report, figure);
  out.flush();
  if (!out) throw std::runtime_error(fmt::format("write to {} failed", path.string()));
}

}  // namespace mecoff::bench
