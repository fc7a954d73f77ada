#include "mecoff/core/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "mecoff/core/errors.hpp"

namespace mecoff {

std::string_view to_string(OptimizerQueueModel m) {
  return m == OptimizerQueueModel::independent ? "independent" : "serialized";
}

std::string_view to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::local_only: return "local_only";
    case PolicyKind::optimized: return "optimized";
    case PolicyKind::rl_offload: return "rl_offload";
    case PolicyKind::rl_least_load: return "rl_least_load";
  }
  return "unknown";
}

PolicyKind parse_policy_kind(std::string_view name) {
  for (PolicyKind k : kAllPolicies) {
    if (to_string(k) == name) {
      return k;
    }
  }
  throw ConfigError({fmt::format("unknown policy '{}'", name)});
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(std::string_view text) {
  const std::string s = trim(text);
  T value{};
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || s.empty()) {
    throw std::invalid_argument(fmt::format("cannot parse '{}' as a number", s));
  }
  return value;
}

// Integer fields also accept exact scientific notation such as 1e9.
template <typename T>
T parse_integer(std::string_view text) {
  try {
    return parse_number<T>(text);
  } catch (const std::invalid_argument&) {
    const double d = parse_number<double>(text);
    if (std::trunc(d) != d || d < static_cast<double>(std::numeric_limits<T>::min()) ||
        d > static_cast<double>(std::numeric_limits<T>::max())) {
      throw;
    }
    return static_cast<T>(d);
  }
}

bool parse_bool(std::string_view text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument(fmt::format("cannot parse '{}' as a boolean", s));
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    std::string t = trim(item);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

struct Field {
  std::string_view section;
  std::string_view key;
  std::function<void(SystemConfig&, std::string_view)> parse;
  std::function<std::string(const SystemConfig&)> format;
};

std::string fmt_double(double v) { return fmt::format("{}", v); }

#define MECOFF_INT_FIELD(sec, member)                                                     \
  Field {                                                                                 \
    sec, #member,                                                                         \
        [](SystemConfig& c, std::string_view v) {                                         \
          c.member = parse_integer<decltype(c.member)>(v);                                \
        },                                                                                \
        [](const SystemConfig& c) { return fmt::format("{}", c.member); }                 \
  }
#define MECOFF_DOUBLE_FIELD(sec, member)                                                  \
  Field {                                                                                 \
    sec, #member, [](SystemConfig& c, std::string_view v) { c.member = parse_number<double>(v); }, \
        [](const SystemConfig& c) { return fmt_double(c.member); }                        \
  }
#define MECOFF_RL_INT_FIELD(member)                                                       \
  Field {                                                                                 \
    "rl", #member,                                                                        \
        [](SystemConfig& c, std::string_view v) { c.rl.member = parse_integer<int>(v); }, \
        [](const SystemConfig& c) { return fmt::format("{}", c.rl.member); }              \
  }
#define MECOFF_RL_DOUBLE_FIELD(member)                                                    \
  Field {                                                                                 \
    "rl", #member,                                                                        \
        [](SystemConfig& c, std::string_view v) { c.rl.member = parse_number<double>(v); }, \
        [](const SystemConfig& c) { return fmt_double(c.rl.member); }                     \
  }
#define MECOFF_RL_BOOL_FIELD(member)                                                      \
  Field {                                                                                 \
    "rl", #member, [](SystemConfig& c, std::string_view v) { c.rl.member = parse_bool(v); }, \
        [](const SystemConfig& c) { return std::string(c.rl.member ? "true" : "false"); } \
  }

// Order here is the canonical serialization order.
const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      MECOFF_INT_FIELD("system", num_users),
      MECOFF_INT_FIELD("system", num_servers),
      MECOFF_INT_FIELD("system", tasks_per_user_max),
      MECOFF_DOUBLE_FIELD("system", arrival_rate_lambda),
      MECOFF_INT_FIELD("system", slots_per_episode),
      MECOFF_DOUBLE_FIELD("system", slot_duration_s),
      MECOFF_DOUBLE_FIELD("system", latency_bound_s),
      MECOFF_INT_FIELD("system", seed),
      MECOFF_DOUBLE_FIELD("system", carrier_freq_hz),
      MECOFF_INT_FIELD("system", data_size_bits),
      MECOFF_INT_FIELD("system", cycles_per_bit),
      MECOFF_INT_FIELD("system", local_queue_capacity),
      MECOFF_INT_FIELD("system", server_queue_limit),
      MECOFF_DOUBLE_FIELD("system", server_capacity_cycles),

      MECOFF_DOUBLE_FIELD("costs", link_rate_bps),
      MECOFF_DOUBLE_FIELD("costs", server_cpu_rate_hz),
      MECOFF_DOUBLE_FIELD("costs", local_cpu_rate_hz),
      MECOFF_DOUBLE_FIELD("costs", tx_power_w),
      MECOFF_DOUBLE_FIELD("costs", kappa_local),
      MECOFF_DOUBLE_FIELD("costs", kappa_server),
      MECOFF_INT_FIELD("costs", w_a),
      MECOFF_INT_FIELD("costs", w_b),
      MECOFF_INT_FIELD("costs", phi),
      Field{"costs", "drop_penalty",
            [](SystemConfig& c, std::string_view v) { c.drop_penalty = parse_number<double>(v); },
            [](const SystemConfig& c) {
              return fmt_double(c.drop_penalty.value_or(-2.0 * c.latency_bound_s));
            }},
      Field{"costs", "optimizer_queue_model",
            [](SystemConfig& c, std::string_view v) {
              const std::string s = trim(v);
              if (s == "independent") {
                c.optimizer_queue_model = OptimizerQueueModel::independent;
              } else if (s == "serialized") {
                c.optimizer_queue_model = OptimizerQueueModel::serialized;
              } else {
                throw std::invalid_argument(
                    fmt::format("'{}' is not one of independent, serialized", s));
              }
            },
            [](const SystemConfig& c) { return std::string(to_string(c.optimizer_queue_model)); }},
      Field{"costs", "normalize_costs",
            [](SystemConfig& c, std::string_view v) { c.normalize_costs = parse_bool(v); },
            [](const SystemConfig& c) { return std::string(c.normalize_costs ? "true" : "false"); }},

      MECOFF_RL_DOUBLE_FIELD(delta),
      MECOFF_RL_DOUBLE_FIELD(beta),
      MECOFF_RL_DOUBLE_FIELD(epsilon),
      MECOFF_RL_BOOL_FIELD(epsilon_decay),
      MECOFF_RL_DOUBLE_FIELD(epsilon_min),
      MECOFF_RL_INT_FIELD(episodes),
      MECOFF_RL_INT_FIELD(monte_carlo_runs),
      MECOFF_RL_INT_FIELD(load_buckets),
      MECOFF_RL_BOOL_FIELD(use_modified),
      MECOFF_RL_INT_FIELD(eval_episodes),

      Field{"sweep", "node_counts",
            [](SystemConfig& c, std::string_view v) {
              c.node_counts.clear();
              for (const auto& item : split_list(v)) c.node_counts.push_back(parse_integer<int>(item));
            },
            [](const SystemConfig& c) { return fmt::format("{}", fmt::join(c.node_counts, ",")); }},
      Field{"sweep", "policies",
            [](SystemConfig& c, std::string_view v) {
              c.policies.clear();
              for (const auto& item : split_list(v)) c.policies.push_back(parse_policy_kind(item));
            },
            [](const SystemConfig& c) {
              std::vector<std::string_view> names;
              for (PolicyKind k : c.policies) names.push_back(to_string(k));
              return fmt::format("{}", fmt::join(names, ","));
            }},
  };
  return table;
}

#undef MECOFF_INT_FIELD
#undef MECOFF_DOUBLE_FIELD
#undef MECOFF_RL_INT_FIELD
#undef MECOFF_RL_DOUBLE_FIELD
#undef MECOFF_RL_BOOL_FIELD

const Field* find_field(std::string_view section, std::string_view key) {
  for (const auto& f : fields()) {
    if (f.section == section && f.key == key) return &f;
  }
  return nullptr;
}

bool known_section(std::string_view s) {
  return s == "system" || s == "costs" || s == "rl" || s == "sweep";
}

// Upper bound on load_buckets^(num_servers+1), the per-agent state count.
constexpr double kMaxStates = 1 << 22;

}  // namespace

SystemConfig parse_config(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError({fmt::format("line {}: {}", e.line(), e.message())});
  }

  SystemConfig cfg;
  std::vector<std::string> errors;
  for (const auto& [section, body] : tree) {
    if (!known_section(section)) {
      errors.push_back(body.empty() ? fmt::format("key '{}' outside any section", section)
                                    : fmt::format("unknown section [{}]", section));
      continue;
    }
    for (const auto& [key, value] : body) {
      const Field* f = find_field(section, key);
      if (f == nullptr) {
        errors.push_back(fmt::format("{}.{}: unknown key", section, key));
        continue;
      }
      try {
        f->parse(cfg, value.data());
      } catch (const ConfigError& e) {
        for (const auto& v : e.violations()) errors.push_back(fmt::format("{}.{}: {}", section, key, v));
      } catch (const std::exception& e) {
        errors.push_back(fmt::format("{}.{}: {}", section, key, e.what()));
      }
    }
  }
  if (!errors.empty()) {
    throw ConfigError(std::move(errors));
  }
  return cfg;
}

SystemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError({fmt::format("cannot open config file '{}'", path.string())});
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const SystemConfig& cfg) {
  std::string out;
  std::string_view current;
  for (const auto& f : fields()) {
    if (f.section != current) {
      if (!current.empty()) out += '\n';
      out += fmt::format("[{}]\n", f.section);
      current = f.section;
    }
    out += fmt::format("{} = {}\n", f.key, f.format(cfg));
  }
  return out;
}

ValidatedConfig validate_config(const SystemConfig& raw) {
  std::vector<std::string> errors;
  auto require = [&](bool ok, std::string_view field, std::string_view message) {
    if (!ok) errors.push_back(fmt::format("{}: {}", field, message));
  };
  auto positive = [&](double v, std::string_view field) {
    require(std::isfinite(v) && v > 0.0, field, "must be a positive finite number");
  };

  require(raw.num_users >= 1 && raw.num_users <= 10000, "system.num_users", "out of [1,10000]");
  require(raw.num_servers >= 1, "system.num_servers", "must be at least 1");
  require(raw.tasks_per_user_max >= 1, "system.tasks_per_user_max", "must be at least 1");
  positive(raw.arrival_rate_lambda, "system.arrival_rate_lambda");
  require(raw.slots_per_episode >= 1, "system.slots_per_episode", "must be at least 1");
  positive(raw.slot_duration_s, "system.slot_duration_s");
  positive(raw.latency_bound_s, "system.latency_bound_s");
  positive(raw.carrier_freq_hz, "system.carrier_freq_hz");
  require(raw.data_size_bits > 0, "system.data_size_bits", "must be positive");
  require(raw.cycles_per_bit > 0, "system.cycles_per_bit", "must be positive");
  if (raw.data_size_bits > 0 && raw.cycles_per_bit > 0) {
    require(raw.data_size_bits <= std::numeric_limits<std::int64_t>::max() / raw.cycles_per_bit,
            "system.cycles_per_bit", "data_size_bits * cycles_per_bit overflows 64 bits");
  }
  require(raw.local_queue_capacity >= 1, "system.local_queue_capacity", "must be at least 1");
  require(raw.server_queue_limit >= 1, "system.server_queue_limit", "must be at least 1");
  positive(raw.server_capacity_cycles, "system.server_capacity_cycles");

  positive(raw.link_rate_bps, "costs.link_rate_bps");
  positive(raw.server_cpu_rate_hz, "costs.server_cpu_rate_hz");
  positive(raw.local_cpu_rate_hz, "costs.local_cpu_rate_hz");
  positive(raw.tx_power_w, "costs.tx_power_w");
  positive(raw.kappa_local, "costs.kappa_local");
  require(std::isfinite(raw.kappa_server) && raw.kappa_server >= 0.0, "costs.kappa_server",
          "must be a non-negative finite number");
  require(raw.w_a >= 0, "costs.w_a", "must be non-negative");
  require(raw.w_b >= 0, "costs.w_b", "must be non-negative");
  require(raw.phi > 0, "costs.phi", "must be positive");
  require(raw.w_a + raw.w_b == raw.phi, "costs.phi", "weights must sum to phi");
  if (raw.drop_penalty) {
    require(std::isfinite(*raw.drop_penalty) && *raw.drop_penalty < 0.0, "costs.drop_penalty",
            "must be a negative finite number");
  }

  const RLParams& rl = raw.rl;
  require(rl.delta > 0.0 && rl.delta <= 1.0, "rl.delta", "delta out of (0,1]");
  require(rl.beta >= 0.0 && rl.beta < 1.0, "rl.beta", "beta out of [0,1)");
  require(rl.epsilon >= 0.0 && rl.epsilon <= 1.0, "rl.epsilon", "epsilon out of [0,1]");
  require(rl.epsilon_min >= 0.0 && rl.epsilon_min <= 1.0, "rl.epsilon_min",
          "epsilon_min out of [0,1]");
  require(rl.episodes >= 1, "rl.episodes", "must be at least 1");
  require(rl.monte_carlo_runs >= 1, "rl.monte_carlo_runs", "must be at least 1");
  require(rl.load_buckets >= 2, "rl.load_buckets", "must be at least 2");
  require(rl.eval_episodes >= 1, "rl.eval_episodes", "must be at least 1");
  if (rl.load_buckets >= 2 && raw.num_servers >= 1) {
    require(std::pow(static_cast<double>(rl.load_buckets), raw.num_servers + 1) <= kMaxStates,
            "rl.load_buckets", "state space load_buckets^(num_servers+1) too large");
  }

  require(!raw.node_counts.empty(), "sweep.node_counts", "must not be empty");
  for (std::size_t i = 0; i < raw.node_counts.size(); ++i) {
    const int n = raw.node_counts[i];
    require(n >= 1 && n <= 10000, "sweep.node_counts", fmt::format("{} out of [1,10000]", n));
    if (i > 0) {
      require(raw.node_counts[i - 1] < n, "sweep.node_counts", "must be strictly ascending");
    }
  }
  require(!raw.policies.empty(), "sweep.policies", "must not be empty");
  require(std::set<PolicyKind>(raw.policies.begin(), raw.policies.end()).size() ==
              raw.policies.size(),
          "sweep.policies", "duplicate policy");

  if (!errors.empty()) {
    throw ConfigError(std::move(errors));
  }
  return ValidatedConfig(raw);
}

double ValidatedConfig::drop_penalty() const noexcept {
  return cfg_.drop_penalty.value_or(-2.0 * cfg_.latency_bound_s);
}

UserNode ValidatedConfig::user_node(int user) const {
  if (user < 0 || user >= cfg_.num_users) {
    throw std::out_of_range(fmt::format("user {} out of range", user));
  }
  return UserNode{user, cfg_.local_cpu_rate_hz, cfg_.tx_power_w, cfg_.local_queue_capacity,
                  cfg_.kappa_local};
}

EdgeServer ValidatedConfig::edge_server(Venue server) const {
  if (server < 1 || server > cfg_.num_servers) {
    throw std::out_of_range(fmt::format("server venue {} out of range", server));
  }
  return EdgeServer{server, cfg_.server_cpu_rate_hz, cfg_.server_capacity_cycles,
                    cfg_.server_queue_limit, cfg_.kappa_server};
}

Link ValidatedConfig::link(int user, Venue server) const {
  if (user < 0 || user >= cfg_.num_users || server < 1 || server > cfg_.num_servers) {
    throw std::out_of_range(fmt::format("link ({}, {}) out of range", user, server));
  }
  return Link{user, server, cfg_.link_rate_bps};
}

ValidatedConfig ValidatedConfig::with_num_users(int num_users) const {
  SystemConfig copy = cfg_;
  copy.num_users = num_users;
  return validate_config(copy);
}

}  // namespace mecoff
