// Command-line front end: wires JSON run configs to the solvers and emits
// CSV/JSON result tables.

#include "cceq/cli.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
    CLI::App app{"cceq: cutoff-equilibrium solver for career-concerns advice models"};
    app.require_subcommand(1);

    cceq::cli::Options opts;
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "JSON run configuration")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
        cmd->add_option("--format", opts.format, "csv | json | both")
            ->capture_default_str()
            ->check(CLI::IsMember({"csv", "json", "both"}));
    };

    add_common(app.add_subcommand("solve", "equilibrium cutoffs over a reputation grid"));
    add_common(app.add_subcommand("statics", "derivative tables, conservatism scan, drift check"));
    add_common(app.add_subcommand("calibrate", "bonus calibration to target experimentation"));
    add_common(app.add_subcommand("simulate", "seeded Monte Carlo runs and prediction report"));
    add_common(app.add_subcommand("check-rd", "drift diagnostics for the reputational return"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    opts.command = app.get_subcommands().front()->get_name();
    return cceq::cli::run(opts);
}
