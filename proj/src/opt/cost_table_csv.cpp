#include "mecoff/opt/cost_table_csv.hpp"

#include <charconv>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace mecoff::opt {

namespace {

constexpr std::string_view kHeader = "task_id,venue_id,latency_s,energy_j,cycles";

template <typename T>
T parse_field(std::string_view text, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument(
        fmt::format("cost table line {}: cannot parse '{}'", line, text));
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

void write_cost_table(std::ostream& out, const OffloadInstance& inst) {
  out << kHeader << '\n';
  for (std::size_t i = 0; i < inst.num_tasks(); ++i) {
    for (Venue v = 0; v < inst.num_venues(); ++v) {
      const VenueCost& c = inst.cost(i, v);
      fmt::print(out, "{},{},{},{},{}\n", inst.task_ids[i], v, c.latency_s, c.energy_j,
                 inst.task_cycles[i]);
    }
  }
}

OffloadInstance read_cost_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw std::invalid_argument("cost table: missing or wrong header");
  }
  struct Row {
    std::map<Venue, VenueCost> costs;
    double cycles = 0.0;
  };
  std::vector<std::int64_t> order;
  std::map<std::int64_t, Row> rows;
  Venue max_venue = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 5) {
      throw std::invalid_argument(fmt::format("cost table line {}: expected 5 fields", line_no));
    }
    const auto id = parse_field<std::int64_t>(f[0], line_no);
    const auto venue = parse_field<int>(f[1], line_no);
    if (venue < 0) throw std::invalid_argument(fmt::format("cost table line {}: negative venue", line_no));
    auto [it, fresh] = rows.try_emplace(id);
    if (fresh) order.push_back(id);
    if (!it->second.costs.emplace(venue, VenueCost{parse_field<double>(f[2], line_no),
                                                   parse_field<double>(f[3], line_no)})
             .second) {
      throw std::invalid_argument(fmt::format("cost table line {}: duplicate entry", line_no));
    }
    it->second.cycles = parse_field<double>(f[4], line_no);
    max_venue = std::max(max_venue, venue);
  }

  OffloadInstance inst;
  inst.num_servers = max_venue;
  inst.server_capacity_cycles.assign(static_cast<std::size_t>(max_venue),
                                     std::numeric_limits<double>::infinity());
  for (std::int64_t id : order) {
    const Row& r = rows.at(id);
    if (r.costs.size() != static_cast<std::size_t>(max_venue + 1)) {
      throw std::invalid_argument(fmt::format("cost table: task {} lacks some venues", id));
    }
    inst.task_ids.push_back(id);
    inst.task_cycles.push_back(r.cycles);
    for (const auto& [venue, cost] : r.costs) inst.costs.push_back(cost);
  }
  inst.validate();
  return inst;
}

}  // namespace mecoff::opt
