#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

namespace mecoff::rl {

// Dense state x action value table, zero-initialised. Every write is checked
// for finiteness.
class QTable {
 public:
  QTable() = default;
  QTable(std::size_t num_states, std::size_t num_actions);

  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t num_actions() const noexcept { return num_actions_; }

  double get(std::size_t state, std::size_t action) const;
  void set(std::size_t state, std::size_t action, double value);

  /// max_a Q(state, a) over all actions.
  double max_value(std::size_t state) const;
  std::span<const double> row(std::size_t state) const;
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::size_t index(std::size_t state, std::size_t action) const;

  std::size_t num_states_ = 0;
  std::size_t num_actions_ = 0;
  std::vector<double> values_;
};

/// state_index,action_index,value; one row per entry in row-major order.
void write_qtable_csv(std::ostream& out, const QTable& q);
QTable read_qtable_csv(std::istream& in, std::size_t num_states, std::size_t num_actions);

}  // namespace mecoff::rl
