#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lfecon/errors.hpp"
#include "lfecon/runner.hpp"

namespace {

// One machine-readable record on stderr so callers can tell failure classes
// apart without scraping prose.
int report(const char* kind, const std::string& message, int code) {
    nlohmann::json record{{"error", kind}, {"message", message}};
    std::cerr << record.dump() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lfecon: piecewise labour-force models of inflation and unemployment, "
                 "with the unit-root and cointegration battery around them"};
    app.require_subcommand(0);

    std::string command;
    std::string config;
    std::string out = "out";
    std::optional<std::uint64_t> seed;
    std::vector<std::string> series_overrides;

    app.add_option("command", command, "one of: urtest, coint, calibrate, evaluate, forecast, plotdata, all")
        ->required()
        ->check(CLI::IsMember(lfecon::known_commands()));
    app.add_option("--config", config, "run configuration (JSON)")->required();
    app.add_option("--out", out, "output directory (created if absent)");
    app.add_option("--seed", seed, "override the seed recorded in the config");
    app.add_option("--series", series_overrides,
                   "override a catalog series file, format id=path (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report("config", e.what(), 2);
    }

    lfecon::RunOptions options;
    options.config_path = config;
    options.out_dir = out;
    options.seed = seed;
    for (const std::string& item : series_overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
            return report("config", "--series expects id=path, got '" + item + "'", 2);
        options.series_overrides.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }

    try {
        lfecon::run_command(command, options);
        return 0;
    } catch (const lfecon::ConfigError& e) {
        return report("config", e.what(), 2);
    } catch (const lfecon::DataError& e) {
        return report("data", e.what(), 3);
    } catch (const lfecon::NumericError& e) {
        return report("numeric", e.what(), 4);
    } catch (const std::exception& e) {
        return report("numeric", std::string("unexpected failure: ") + e.what(), 4);
    }
}
