#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "dupin/export/scene.hpp"

namespace dupin::io {

enum ExitCode : int {
    kExitOk = 0,
    kExitResidual = 1,
    kExitConfig = 2,
    kExitGeometry = 3,
    kExitIo = 4,
};

struct RunOptions {
    // Overrides the config output directory.
    std::optional<std::string> outDir;
    // Overrides the config sample counts (u, t).
    std::optional<std::pair<int, int>> samples;
    std::uint64_t seed = 1;
    // False for the residual-only check.
    bool writeMeshes = true;
};

struct RunResult {
    int exitCode = kExitOk;
    nlohmann::json report;
    // Error text for stderr; empty on success.
    std::string message;
};

// Builds the construction, writes meshes and report.json into the output directory.
RunResult run(const SceneConfig& config, const RunOptions& options);

// Reads and validates the config first; schema and IO failures map to their exit codes.
RunResult run_file(const std::string& configPath, std::optional<Construction> verb, const RunOptions& options);

// Seeded kernel and bridge suites, plus the construction residuals of an optional config.
// Exits with kExitResidual when any residual exceeds its threshold.
RunResult run_check(const std::optional<std::string>& configPath, const RunOptions& options, int cases = 1000);

// Parses "UxT"; nullopt when malformed.
std::optional<std::pair<int, int>> parse_samples(const std::string& text);

} // namespace dupin::io
