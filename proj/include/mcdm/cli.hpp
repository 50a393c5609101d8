#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mcdm::cli {

/// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/**
 * Runs one command. `args` excludes the program name. Results go to `out`
 * (or the --output file), diagnostics to `err`.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// {"axes": [...], "series": [{"name": ..., "values": [...]}]}. Throws TooFewAxes below 3 labels.
std::string radar_json(const std::vector<std::string>& axes, const std::vector<double>& values,
                       std::string_view series_name);
void emit_radar(const std::vector<std::string>& axes, const std::vector<double>& values, std::string_view series_name,
                const std::filesystem::path& path);

/// Comma-separated reals from MCDM_RI_TABLE, or the Saaty table when unset.
std::vector<double> random_index_from_env();

}  // namespace mcdm::cli
