#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace monoseq::cli {

enum class Command { Table, Simulate, Clt, Bounds, Properties, Poisson };
enum class Format { Csv, Json };

struct RunConfig {
    Command command = Command::Table;
    int n = 0;
    std::size_t grid_points = 4097;
    std::int64_t reps = 0;
    std::optional<std::uint64_t> seed;
    std::string output_path;  ///< empty or "-" means standard output
    std::string histogram_path;
    Format format = Format::Csv;
    bool with_variance = false;
    bool strict = false;
    std::vector<int> n_list;
    std::optional<double> nu;
    int traces = 0;
    std::int64_t max_entries = std::int64_t{1} << 31;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitAssertion = 2;

/// Thrown for anything that should end the run with exit status 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses argv; returns the config or an exit status (help or usage error)
/// after printing to out/err.
struct ParseResult {
    std::optional<RunConfig> config;
    int exit_code = kExitOk;
};
ParseResult parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Fills a config from a JSON document using the RunConfig field names.
RunConfig config_from_json(const std::string& text);

/// Throws UsageError when a command is missing what it needs.
void validate(const RunConfig& config);

/// Executes the command; returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace monoseq::cli
