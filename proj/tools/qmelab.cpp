// qmelab.cpp — Command-line front end: check | evolve | ft | steady | oracle | fig2.
//
// Exit codes: 0 ok, 1 check failure, 2 config error, 3 numeric failure.

#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qmelab/config.hpp"
#include "qmelab/io.hpp"
#include "qmelab/runner.hpp"

namespace {

using Command = std::function<int(const qmelab::RunConfig&, const qmelab::RunOptions&)>;

struct CliArgs {
    std::string config_path;
    std::string out_dir;
    std::int64_t seed = -1;
    int workers = 1;
};

void add_common_flags(CLI::App* sub, CliArgs& args) {
    sub->add_option("--config", args.config_path, "Path to the run configuration (JSON)")
        ->required();
    sub->add_option("--out", args.out_dir, "Output directory (overrides config)");
    sub->add_option("--seed", args.seed, "Random seed (overrides config)");
    sub->add_option("--workers", args.workers, "Bounded worker pool size")
        ->check(CLI::PositiveNumber);
}

int dispatch(const Command& command, const CliArgs& args) {
    try {
        const auto cfg = qmelab::RunConfig::from_file(args.config_path);
        qmelab::RunOptions opt;
        if (!args.out_dir.empty()) opt.out_dir = args.out_dir;
        if (args.seed >= 0) opt.seed = static_cast<std::uint64_t>(args.seed);
        opt.workers = args.workers;
        return command(cfg, opt);
    } catch (const qmelab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return qmelab::kExitConfigError;
    } catch (const qmelab::InvalidInput& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return qmelab::kExitConfigError;
    } catch (const qmelab::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return qmelab::kExitNumericError;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qmelab — counting-field-tilted quantum master equations and their "
                 "thermodynamic-consistency checks"};
    app.require_subcommand(1);

    const std::map<std::string, std::pair<std::string, Command>> commands = {
        {"check", {"Run the consistency suite for the configured scheme", qmelab::cmd_check}},
        {"evolve", {"Emit thermo-trajectory and MGF-scan CSVs", qmelab::cmd_evolve}},
        {"ft", {"Detailed and integral fluctuation-theorem curves", qmelab::cmd_ft}},
        {"steady", {"Steady state, residual, and Gibbs mismatch", qmelab::cmd_steady}},
        {"oracle", {"Exact random-matrix-bath benchmark runs", qmelab::cmd_oracle}},
        {"fig2", {"Two-panel FT/heat comparison against the exact oracle", qmelab::cmd_fig2}},
    };

    std::map<std::string, CliArgs> args;
    for (const auto& [name, entry] : commands)
        add_common_flags(app.add_subcommand(name, entry.first), args[name]);

    CLI11_PARSE(app, argc, argv);

    for (const auto& [name, entry] : commands)
        if (app.got_subcommand(name)) return dispatch(entry.second, args.at(name));
    return qmelab::kExitConfigError;
}
