#include "mecoff/rl/qtable.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace mecoff::rl {

QTable::QTable(std::size_t num_states, std::size_t num_actions)
    : num_states_(num_states), num_actions_(num_actions), values_(num_states * num_actions, 0.0) {
  if (num_states == 0 || num_actions == 0) {
    throw std::invalid_argument("QTable: dimensions must be positive");
  }
}

std::size_t QTable::index(std::size_t state, std::size_t action) const {
  if (state >= num_states_ || action >= num_actions_) {
    throw std::out_of_range(fmt::format("QTable: ({}, {}) outside {}x{}", state, action,
                                        num_states_, num_actions_));
  }
  return state * num_actions_ + action;
}

double QTable::get(std::size_t state, std::size_t action) const {
  return values_[index(state, action)];
}

void QTable::set(std::size_t state, std::size_t action, double value) {
  if (!std::isfinite(value)) {
    throw std::domain_error(
        fmt::format("QTable: non-finite value at ({}, {})", state, action));
  }
  values_[index(state, action)] = value;
}

std::span<const double> QTable::row(std::size_t state) const {
  const std::size_t start = index(state, 0);
  return std::span<const double>(values_).subspan(start, num_actions_);
}

double QTable::max_value(std::size_t state) const {
  const auto r = row(state);
  return *std::max_element(r.begin(), r.end());
}

void write_qtable_csv(std::ostream& out, const QTable& q) {
  out << "state_index,action_index,value\n";
  for (std::size_t s = 0; s < q.num_states(); ++s) {
    for (std::size_t a = 0; a < q.num_actions(); ++a) {
      fmt::print(out, "{},{},{}\n", s, a, q.get(s, a));
    }
  }
}

QTable read_qtable_csv(std::istream& in, std::size_t num_states, std::size_t num_actions) {
  std::string line;
  if (!std::getline(in, line) || line != "state_index,action_index,value") {
    throw std::invalid_argument("Q-table CSV: missing or wrong header");
  }
  QTable q(num_states, num_actions);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) {
      throw std::invalid_argument(fmt::format("Q-table CSV line {}: expected 3 fields", line_no));
    }
    std::size_t s = 0;
    std::size_t a = 0;
    double v = 0.0;
    const char* b = line.data();
    const char* e = b + line.size();
    const bool ok = std::from_chars(b, b + c1, s).ptr == b + c1 &&
                    std::from_chars(b + c1 + 1, b + c2, a).ptr == b + c2 &&
                    std::from_chars(b + c2 + 1, e, v).ptr == e;
    if (!ok) throw std::invalid_argument(fmt::format("Q-table CSV line {}: malformed", line_no));
    q.set(s, a, v);
  }
  return q;
}

}  // namespace mecoff::rl
