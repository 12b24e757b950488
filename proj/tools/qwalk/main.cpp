#include <cstdio>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "qwalk/commands.hpp"
#include "qwalk/options.hpp"
#include "qwalk/sweep.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Quantum-walk metrology: spectra, QFI/FI reports, optimisation, estimation and sweeps.\n"
                 "Environment: WALKER_MAX_DIM overrides the node cap (default 4096).\n"
                 "Exit codes: 0 success, 1 runtime error, 2 usage error."};
    app.name("qwalk");
    app.require_subcommand(1);
    std::function<void()> action;
    qwalk::cli::register_commands(app, action);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        action();
    } catch (const qwalk::cli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const qwalk::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
