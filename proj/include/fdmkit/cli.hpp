#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fdmkit/fdm.hpp"
#include "fdmkit/mfdm.hpp"
#include "fdmkit/siggen.hpp"
#include "fdmkit/tfe.hpp"

namespace fdmkit::cli {

enum class Command { Decompose, Mfdm, Tfe, Marginal, Energy, Generate };
enum class OutputFormat { Csv, Json };

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
    Command command = Command::Decompose;
    std::optional<std::filesystem::path> input;
    std::optional<GeneratorSpec> generator;
    std::optional<double> sample_rate_hz;

    FdmConfig fdm;

    double m = 1.5;
    std::optional<std::size_t> levels;
    std::vector<double> cutoffs_hz;
    FilterCascade cascade = FilterCascade::HighPassFirst;

    std::optional<double> freq_bin_hz;
    GridMode mode = GridMode::Amplitude;
    OutputFormat format = OutputFormat::Csv;
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;
    bool timestamp = true;

    /// Throws InputError unless exactly one input source is set.
    void validate() const;
};

/// Files written by a successful run, in write order.
struct RunReport {
    std::vector<std::filesystem::path> files;
};

/// Execute the pipeline; throws fdmkit::Error on failure.
RunReport execute(const RunConfig& config);

/// execute() with errors mapped to exit codes and diagnostics written to `err`.
int run(const RunConfig& config, std::ostream& err);

/// Parse argv-style arguments (first element is the program name). A
/// --config JSON file supplies defaults that explicit flags override.
/// Throws InputError on malformed arguments. `help` receives usage text
/// when -h/--help is requested, in which case nullopt is returned.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& help);

/// Full CLI entry: parse, run, map errors to exit codes.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string to_string(Command c);
std::optional<Command> parse_command(const std::string& s);

}  // namespace fdmkit::cli
