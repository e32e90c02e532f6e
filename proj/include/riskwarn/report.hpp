#pragma once

#include "riskwarn/harness.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace riskwarn {

/// Fixed 3-decimal formatting; empty for missing or non-finite values.
std::string format_cell(std::optional<double> value);

std::string episodes_csv(std::span<const EpisodeResult> results);
/// Rows = error variants, columns = scenario-variation, cells = warning-time improvement.
std::string time_heatmap_csv(std::span<const ComparisonRecord> records, DriverType driver);
/// Same shape, cells = error-reduction code 0/1/2.
std::string error_heatmap_csv(std::span<const ComparisonRecord> records, DriverType driver);
std::string summary_csv(std::span<const SummaryStatistics> stats);

/// Writes episodes.csv, heatmap_time_<type>.csv, heatmap_error_<type>.csv and
/// summary.csv into `dir` (created if needed). Returns the written paths.
std::vector<std::filesystem::path> emit_reports(std::span<const EpisodeResult> results,
                                                const ModelParameters& params,
                                                const std::filesystem::path& dir);

/// Parses an episodes.csv produced by emit_reports (traces are not stored).
std::vector<EpisodeResult> parse_episodes_csv(std::string_view text);
std::vector<EpisodeResult> read_episodes(const std::filesystem::path& dir);

/// Human-readable summary table.
void print_summary(std::ostream& out, std::span<const SummaryStatistics> stats);

/// One line describing an episode result.
std::string describe(const EpisodeResult& result);

}  // namespace riskwarn
