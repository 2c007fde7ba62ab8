#pragma once

// Internal plumbing shared by the subcommand translation units. Each
// register_* function wires its subcommands into the CLI11 app; callbacks
// write the process exit code into the shared slot instead of calling
// exit(), so main() stays in charge of teardown.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "slaglab/version.hpp"

namespace slaglab::cli {

using Json = nlohmann::ordered_json;

// Exit codes are part of the external contract: 0 success (and verdict
// Solvable), 1 catalog mismatch in cone verify, 2 unusable invocation or
// input, 3 Unsolvable, 4 Undecided.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnsolvable = 3;
inline constexpr int kExitUndecided = 4;

// Invocation problems detected after CLI11 parsing (bad ids, missing seed,
// malformed instance files). Caught in main and mapped to kExitUsage.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::optional<long long> seed;
    std::optional<double> tol;
    bool json = false;
};

inline Json make_report(const std::string& command) {
    Json j;
    j["version"] = SLAGLAB_VERSION;
    j["command"] = command;
    return j;
}

inline void emit_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

inline long long require_seed(const RunConfig& cfg) {
    if (!cfg.seed)
        throw UsageError(
            "this command draws random samples; pass --seed or set "
            "SLAGLAB_SEED");
    return *cfg.seed;
}

void register_cone(CLI::App& app, RunConfig& cfg, int& exit_code);
void register_topology(CLI::App& app, RunConfig& cfg, int& exit_code);
void register_pbp(CLI::App& app, RunConfig& cfg, int& exit_code);
void register_geom(CLI::App& app, RunConfig& cfg, int& exit_code);

}  // namespace slaglab::cli
