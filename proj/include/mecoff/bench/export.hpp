#pragma once

#include <filesystem>
#include <ostream>
#include <string_view>

#include "mecoff/bench/metrics.hpp"

namespace mecoff::bench {

enum class Figure { qos, reliability, energy, latency };

std::string_view to_string(Figure f);
Figure parse_figure(std::string_view name);

/// num_users followed by one column per policy present, in canonical policy
/// order. Cells a report lacks are left empty.
void write_figure_csv(std::ostream& out, const MetricsReport& report, Figure figure);

/// Writes the figure CSV to `path`; std::runtime_error names the path on
/// failure.
void export_figure_data(const MetricsReport& report, Figure figure,
                        const std::filesystem::path& path);

}  // namespace mecoff::bench
