#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mecoff {

/// Raised by config parsing and validation. Carries every violation found,
/// not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace mecoff
