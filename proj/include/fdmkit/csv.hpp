#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdmkit/mfdm.hpp"

namespace fdmkit {

/// Tolerance on time-column spacing, relative to the mean step.
inline constexpr double kUniformTimeTolerance = 1e-6;

struct IngestedData {
    MultichannelSignal data;
    std::vector<std::string> channel_names;
    bool has_time_column = false;
};

/**
 * Read a header-mandatory CSV. A first column named "t" is a time axis: the
 * sample rate is inferred from it (spacing uniform within 1e-6 relative) and,
 * when `sample_rate_hz` is also given, the two must agree to the same
 * tolerance. Without a time column `sample_rate_hz` is required. Every other
 * column is a channel. Errors name the offending file line (header = line 1).
 */
IngestedData ingest_csv(const std::filesystem::path& path, std::optional<double> sample_rate_hz = std::nullopt);
IngestedData parse_csv(std::istream& in, std::optional<double> sample_rate_hz, const std::string& source = "<stream>");

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

/// Header row plus equally long numeric columns.
std::string to_csv(std::span<const std::string> header, std::span<const std::vector<double>> columns);

/// Write to a sibling temp file, then rename over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace fdmkit
