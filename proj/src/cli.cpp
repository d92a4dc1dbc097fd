#include "cceq/cli.hpp"

#include "cceq/errors.hpp"
#include "cceq/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

namespace cceq::cli {

namespace {

using nlohmann::json;

struct RunContext {
    Primitives primitives;
    PayoffMode mode = PayoffMode::Baseline;
    json config;
    std::filesystem::path out_dir;
    std::string format;
    bool any_row_failed = false;
};

const json& require_block(const json& config, const std::string& key) {
    if (!config.contains(key)) {
        throw ConfigError("config: missing block \"" + key + "\"");
    }
    return config.at(key);
}

std::vector<double> number_list(const json& block, const std::string& key) {
    if (!block.contains(key)) {
        throw ConfigError("config: missing field \"" + key + "\"");
    }
    const json& arr = block.at(key);
    if (!arr.is_array() || arr.empty()) {
        throw ConfigError("config: \"" + key + "\" must be a nonempty array");
    }
    std::vector<double> values;
    values.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number()) {
            throw ConfigError("config: \"" + key + "\" must contain numbers only");
        }
        values.push_back(v.get<double>());
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] <= values[i - 1]) {
            throw ConfigError("config: \"" + key + "\" must be strictly ascending");
        }
    }
    return values;
}

std::vector<double> rho_grid_of(const json& block, const std::string& key) {
    std::vector<double> grid = number_list(block, key);
    for (double rho : grid) {
        if (!(rho > 0.0 && rho < 1.0)) {
            throw ConfigError("config: \"" + key + "\" values must lie strictly inside (0,1)");
        }
    }
    return grid;
}

void write_table(const RunContext& ctx, const std::string& name, const Table& table) {
    std::filesystem::create_directories(ctx.out_dir);
    if (ctx.format == "csv" || ctx.format == "both") {
        std::ofstream out(ctx.out_dir / (name + ".csv"), std::ios::binary);
        out << table.to_csv();
    }
    if (ctx.format == "json" || ctx.format == "both") {
        std::ofstream out(ctx.out_dir / (name + ".json"), std::ios::binary);
        out << table.to_json().dump(2) << '\n';
    }
}

// One status cell per row: "ok", a domain outcome like "below_floor", or an
// error description. Rows keep computing after a failure.
template <typename Fn>
std::string guarded(RunContext& ctx, Fn&& fn) {
    try {
        fn();
        return "ok";
    } catch (const CalibrationError& err) {
        if (err.reason == CalibrationError::Reason::TargetBelowFloor) return "below_floor";
        if (err.reason == CalibrationError::Reason::TargetAtUnity) return "target_at_unity";
        ctx.any_row_failed = true;
        return std::string("error: ") + err.what();
    } catch (const std::exception& err) {
        ctx.any_row_failed = true;
        return std::string("error: ") + err.what();
    }
}

void cmd_solve(RunContext& ctx) {
    const json& block = require_block(ctx.config, "solve");
    const std::vector<double> grid = rho_grid_of(block, "rho_grid");

    Table table;
    table.header = {"rho",    "cutoff",     "eps",      "r_success", "r_failure",
                    "r_safe", "iterations", "residual", "status"};
    for (double rho : grid) {
        Equilibrium eq{};
        const std::string status =
            guarded(ctx, [&] { eq = solve_equilibrium(Reputation(rho), ctx.primitives, ctx.mode); });
        if (status == "ok") {
            table.add_row({rho, json_double(eq.cutoff), eq.eps, eq.posteriors.r_success,
                           eq.posteriors.r_failure, eq.posteriors.r_safe, eq.iterations,
                           eq.residual, status});
        } else {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            table.add_row({rho, json_double(nan), json_double(nan), json_double(nan),
                           json_double(nan), json_double(nan), 0, json_double(nan), status});
        }
    }
    write_table(ctx, "solve", table);
}

void append_rd_table(RunContext& ctx, const std::string& name,
                     const std::vector<double>& grid) {
    const RdReport report = check_rd(grid, ctx.primitives, ctx.mode);
    Table table;
    table.header = {"rho", "value", "drift", "verified"};
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
        const bool verified = report.rho_bar.has_value() && report.grid[i] >= *report.rho_bar;
        table.add_row({report.grid[i], json_double(report.value[i]), json_double(report.drift[i]),
                       verified ? 1 : 0});
    }
    write_table(ctx, name, table);
}

void cmd_statics(RunContext& ctx) {
    const json& block = require_block(ctx.config, "statics");
    const std::vector<double> grid = rho_grid_of(block, "rho_grid");

    std::vector<Param> params;
    if (block.contains("params")) {
        for (const auto& name : block.at("params")) {
            if (!name.is_string()) throw ConfigError("config: \"params\" must contain strings");
            params.push_back(param_from_name(name.get<std::string>()));
        }
        if (params.empty()) throw ConfigError("config: \"params\" must be nonempty");
    } else {
        params = all_params();
    }

    Table derivatives;
    derivatives.header = {"rho", "param", "analytic", "numeric", "agree", "status"};
    for (double rho : grid) {
        for (Param param : params) {
            StaticsReport report{};
            const std::string status = guarded(
                ctx, [&] { report = statics_report(param, Reputation(rho), ctx.primitives, ctx.mode); });
            if (status == "ok") {
                derivatives.add_row({rho, param_name(param), json_double(report.analytic),
                                     json_double(report.numeric), report.agree ? 1 : 0, status});
            } else {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                derivatives.add_row(
                    {rho, param_name(param), json_double(nan), json_double(nan), 0, status});
            }
        }
    }
    write_table(ctx, "statics_derivatives", derivatives);

    Table scan;
    scan.header = {"rho", "cutoff", "eps", "status"};
    for (double rho : grid) {
        ScanRow row{};
        const std::string status = guarded(ctx, [&] {
            const Equilibrium eq = solve_equilibrium(Reputation(rho), ctx.primitives, ctx.mode);
            row = {rho, eq.cutoff, eq.eps};
        });
        if (status == "ok") {
            scan.add_row({rho, json_double(row.cutoff), row.eps, status});
        } else {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            scan.add_row({rho, json_double(nan), json_double(nan), status});
        }
    }
    write_table(ctx, "statics_scan", scan);

    append_rd_table(ctx, "statics_rd", grid);
}

void cmd_calibrate(RunContext& ctx) {
    const json& block = require_block(ctx.config, "calibrate");
    const std::vector<double> rho_values = rho_grid_of(block, "rho_values");
    const std::vector<double> targets = number_list(block, "targets");
    for (double t : targets) {
        if (!(t > 0.0 && t < 1.0)) {
            throw ConfigError("config: \"targets\" values must lie strictly inside (0,1)");
        }
    }

    Table table;
    table.header = {"rho",   "target_eps",   "cutoff",        "bonus",
                    "achieved_eps", "roundtrip_gap", "status"};
    for (double rho : rho_values) {
        for (double target : targets) {
            CalibrationResult result{};
            const std::string status = guarded(ctx, [&] {
                result = bonus_for_target(target, Reputation(rho), ctx.primitives, ctx.mode);
            });
            if (status == "ok") {
                table.add_row({rho, target, json_double(result.cutoff), result.bonus,
                               result.achieved_eps, result.roundtrip_gap, status});
            } else {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                table.add_row({rho, target, json_double(nan), json_double(nan), json_double(nan),
                               json_double(nan), status});
            }
        }
    }
    write_table(ctx, "calibrate", table);

    // Optional gatekeeping sweep over implementation stringency.
    if (block.contains("t_grid")) {
        const std::vector<double> t_grid = number_list(block, "t_grid");
        Table sweep;
        sweep.header = {"rho", "t", "lambda", "c", "eps", "b", "status"};
        for (double rho : rho_values) {
            std::vector<SweepRow> rows;
            const std::string status = guarded(ctx, [&] {
                rows = gatekeeping_sweep(t_grid, Reputation(rho), ctx.primitives, ctx.mode);
            });
            if (status == "ok") {
                for (const SweepRow& row : rows) {
                    sweep.add_row({rho, row.t, row.lambda, json_double(row.cutoff), row.eps,
                                   ctx.primitives.b, status});
                }
            } else {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                for (double t : t_grid) {
                    sweep.add_row({rho, t, json_double(nan), json_double(nan), json_double(nan),
                                   ctx.primitives.b, status});
                }
            }
        }
        write_table(ctx, "gatekeeping", sweep);
    }
}

void cmd_simulate(RunContext& ctx) {
    const json& block = require_block(ctx.config, "simulate");
    SimConfig cfg;
    cfg.primitives = ctx.primitives;
    cfg.mode = ctx.mode;
    cfg.rho_values = rho_grid_of(block, "rho_grid");
    if (!block.contains("n_experts") || !block.at("n_experts").is_number_integer() ||
        block.at("n_experts").get<std::int64_t>() < 1) {
        throw ConfigError("config: \"n_experts\" must be a positive integer");
    }
    cfg.n_experts = block.at("n_experts").get<std::int64_t>();
    if (!block.contains("seed") || !block.at("seed").is_number_integer() ||
        (block.at("seed").is_number_integer() && !block.at("seed").is_number_unsigned() &&
         block.at("seed").get<std::int64_t>() < 0)) {
        throw ConfigError("config: \"seed\" must be a nonnegative integer");
    }
    cfg.seed = block.at("seed").get<std::uint64_t>();

    SimOutcome outcome;
    PredictionReport prediction;
    const std::string status = guarded(ctx, [&] {
        outcome = run_sim(cfg);
        prediction = prediction_report(outcome, ctx.primitives, ctx.mode);
    });
    if (status != "ok") {
        Table failed;
        failed.header = {"status"};
        failed.add_row({status});
        write_table(ctx, "simulate_cells", failed);
        return;
    }

    Table cells;
    cells.header = {"rho",       "cutoff",    "lambda",  "analytic_eps", "n",
                    "n_risky",   "n_implemented", "n_success", "n_failure", "n_safe",
                    "emp_eps",   "emp_hit_rate",  "mean_posterior", "status"};
    for (const SimCell& cell : outcome.cells) {
        cells.add_row({cell.rho, json_double(cell.cutoff), cell.lambda, cell.analytic_eps, cell.n,
                       cell.n_risky, cell.n_implemented, cell.n_success, cell.n_failure,
                       cell.n_safe, cell.emp_eps, cell.emp_hit_rate, cell.mean_posterior, "ok"});
    }
    write_table(ctx, "simulate_cells", cells);

    const auto flag_name = [](MonotoneFlag flag) {
        switch (flag) {
            case MonotoneFlag::Holds: return "holds";
            case MonotoneFlag::Fails: return "fails";
            case MonotoneFlag::NotApplicable: return "not_applicable";
        }
        return "?";
    };
    Table predictions;
    predictions.header = {"rho",   "emp_eps", "se_eps", "emp_hit_rate", "se_hit",
                          "rd_verified", "eps_nonincreasing", "hit_nondecreasing"};
    for (const PredictionRow& row : prediction.rows) {
        predictions.add_row({row.rho, row.emp_eps, row.se_eps, row.emp_hit_rate, row.se_hit,
                             row.rd_verified ? 1 : 0, flag_name(prediction.eps_nonincreasing),
                             flag_name(prediction.hit_nondecreasing)});
    }
    write_table(ctx, "simulate_predictions", predictions);
}

void cmd_check_rd(RunContext& ctx) {
    const json& block = require_block(ctx.config, "check_rd");
    append_rd_table(ctx, "check_rd", rho_grid_of(block, "rho_grid"));
}

} // namespace

int run(const Options& opts) {
    RunContext ctx;
    ctx.out_dir = opts.out_dir;
    ctx.format = opts.format;
    if (ctx.format != "csv" && ctx.format != "json" && ctx.format != "both") {
        std::cerr << "error: --format must be csv, json, or both\n";
        return 1;
    }

    try {
        std::ifstream in(opts.config_path, std::ios::binary);
        if (!in) {
            throw ConfigError("config: cannot open \"" + opts.config_path + "\"");
        }
        try {
            ctx.config = json::parse(in);
        } catch (const json::parse_error& err) {
            throw ConfigError(std::string("config: ") + err.what());
        }
        ctx.primitives = primitives_from_json(require_block(ctx.config, "primitives"));
        if (ctx.config.contains("mode")) {
            if (!ctx.config.at("mode").is_string()) {
                throw ConfigError("config: \"mode\" must be a string");
            }
            ctx.mode = payoff_mode_from_name(ctx.config.at("mode").get<std::string>());
        }

        if (opts.command == "solve") cmd_solve(ctx);
        else if (opts.command == "statics") cmd_statics(ctx);
        else if (opts.command == "calibrate") cmd_calibrate(ctx);
        else if (opts.command == "simulate") cmd_simulate(ctx);
        else if (opts.command == "check-rd") cmd_check_rd(ctx);
        else throw ConfigError("unknown command \"" + opts.command + "\"");
    } catch (const ConfigError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    } catch (const std::exception& err) {
        // Whole-command computation failure (e.g. check-rd anchor solve).
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }
    return ctx.any_row_failed ? 2 : 0;
}

} // namespace cceq::cli
