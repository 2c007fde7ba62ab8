#include <exception>
#include <iostream>

#include "common.hpp"
#include "slaglab/errors.hpp"

namespace {

// Lets `slaglab cone verify su(3) --seed 7` work: flags the leaf command
// does not know climb to the ancestors, where the globals live.
void enable_fallthrough(CLI::App& app) {
    for (CLI::App* sub : app.get_subcommands(nullptr)) {
        sub->fallthrough();
        enable_fallthrough(*sub);
    }
}

}  // namespace

int main(int argc, char** argv) {
    using namespace slaglab::cli;

    CLI::App app{"slaglab: special Lagrangian cone and boundary-problem "
                 "toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    int exit_code = kExitOk;

    app.add_option("--seed", cfg.seed,
                   "RNG seed; required by commands that sample randomly")
        ->envname("SLAGLAB_SEED");
    app.add_option("--tol", cfg.tol, "override the command's tolerance");
    app.add_flag("--json", cfg.json, "emit a JSON report instead of text");

    register_cone(app, cfg, exit_code);
    register_topology(app, cfg, exit_code);
    register_pbp(app, cfg, exit_code);
    register_geom(app, cfg, exit_code);
    enable_fallthrough(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints help or the parse message
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const slaglab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return exit_code;
}
