#include "mecoff/core/types.hpp"

#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "mecoff/core/errors.hpp"

namespace mecoff {

Task::Task(std::int64_t id, int owner, std::int64_t data_size_bits,
           std::int64_t cycles_per_bit, std::int64_t arrival_slot)
    : id_(id),
      owner_(owner),
      data_size_bits_(data_size_bits),
      cycles_per_bit_(cycles_per_bit),
      arrival_slot_(arrival_slot),
      total_cycles_(0) {
  if (data_size_bits <= 0) {
    throw std::invalid_argument(fmt::format("task {}: data_size_bits must be positive", id));
  }
  if (cycles_per_bit <= 0) {
    throw std::invalid_argument(fmt::format("task {}: cycles_per_bit must be positive", id));
  }
  if (arrival_slot < 0) {
    throw std::invalid_argument(fmt::format("task {}: arrival_slot must be non-negative", id));
  }
  if (data_size_bits > std::numeric_limits<std::int64_t>::max() / cycles_per_bit) {
    throw std::overflow_error(fmt::format("task {}: total cycles overflow 64 bits", id));
  }
  total_cycles_ = data_size_bits * cycles_per_bit;
}

Weights::Weights(int w_a, int w_b, int phi) : w_a_(w_a), w_b_(w_b), phi_(phi) {
  std::vector<std::string> errors;
  if (w_a < 0) errors.emplace_back("w_a must be non-negative");
  if (w_b < 0) errors.emplace_back("w_b must be non-negative");
  if (phi <= 0) errors.emplace_back("phi must be positive");
  if (w_a + w_b != phi) errors.emplace_back("weights must sum to phi");
  if (!errors.empty()) {
    throw ConfigError(std::move(errors));
  }
}

std::vector<std::vector<int>> Assignment::to_matrix(int num_servers) const {
  std::vector<std::vector<int>> rows(venues_.size(),
                                     std::vector<int>(static_cast<std::size_t>(num_servers) + 1, 0));
  for (std::size_t i = 0; i < venues_.size(); ++i) {
    rows[i].at(static_cast<std::size_t>(venues_[i])) = 1;
  }
  return rows;
}

bool check_assignment(const Assignment& a, int num_servers) {
  for (Venue v : a.venues()) {
    if (v < 0 || v > num_servers) {
      return false;
    }
  }
  return true;
}

std::string venue_name(Venue v) {
  return v == kLocalVenue ? std::string("local") : fmt::format("server{}", v);
}

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& v : violations) {
          msg += "\n  - " + v;
        }
        return msg;
      }()),
      violations_(std::move(violations)) {}

}  // namespace mecoff
