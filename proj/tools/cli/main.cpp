#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dupin/export/run.hpp"

using namespace dupin::io;

int main(int argc, char** argv)
{
    CLI::App app{"Dupin cyclide constructions and curvature-line mesh export"};
    app.require_subcommand(1);

    std::string configPath;
    std::string outDir;
    std::string samples;
    std::uint64_t seed = 1;
    int cases = 1000;

    auto addCommon = [&](CLI::App* cmd) {
        cmd->add_option("--out", outDir, "Output directory (overrides output.directory)");
        cmd->add_option("--samples", samples, "Sample counts as UxT, e.g. 32x24");
        cmd->add_option("--seed", seed, "Seed for randomized checks");
    };

    for (const char* verb : {"cyclide", "lame", "blend", "subdivide", "cube", "net"}) {
        CLI::App* cmd = app.add_subcommand(verb, std::string("Build a ") + verb + " construction from a config");
        cmd->add_option("--config", configPath, "Scene config (JSON)")->required();
        addCommon(cmd);
    }
    CLI::App* check = app.add_subcommand("check", "Run residual suites; no meshes are written");
    check->add_option("--config", configPath, "Optional scene config whose residuals are checked too");
    check->add_option("--cases", cases, "Random cases per kernel and bridge property")->check(CLI::Range(1, 1000000));
    addCommon(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    RunOptions options;
    options.seed = seed;
    if (!outDir.empty())
        options.outDir = outDir;
    if (!samples.empty()) {
        options.samples = parse_samples(samples);
        if (!options.samples) {
            std::cerr << "--samples: expected UxT with U >= 3 and T >= 2, got '" << samples << "'\n";
            return kExitConfig;
        }
    }

    const CLI::App* cmd = app.get_subcommands().front();
    RunResult result;
    if (cmd->get_name() == "check") {
        result = run_check(configPath.empty() ? std::nullopt : std::optional<std::string>(configPath), options, cases);
    } else {
        result = run_file(configPath, construction_from_name(cmd->get_name()), options);
    }

    if (!result.message.empty())
        std::cerr << "dupin: " << result.message << '\n';
    if (result.exitCode == kExitOk || result.exitCode == kExitResidual) {
        const auto& r = result.report;
        std::cout << r.value("kind", "") << ": " << (r.value("pass", false) ? "residuals within thresholds" : "residuals above threshold")
                  << '\n';
    }
    return result.exitCode;
}
