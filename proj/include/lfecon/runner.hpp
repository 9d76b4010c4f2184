#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lfecon {

struct RunOptions {
    std::filesystem::path config_path;
    std::filesystem::path out_dir;
    std::optional<std::uint64_t> seed;  // overrides the seed recorded in the config
    std::vector<std::pair<std::string, std::string>> series_overrides;  // id -> csv path
};

/// Execute one pipeline command (urtest, coint, calibrate, evaluate, forecast,
/// plotdata, or all) against the catalog and config, writing reports into
/// options.out_dir. Failures surface as ConfigError / DataError / NumericError.
void run_command(const std::string& command, const RunOptions& options);

const std::vector<std::string>& known_commands();

}  // namespace lfecon
