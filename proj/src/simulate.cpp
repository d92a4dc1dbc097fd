#include "cceq/simulate.hpp"

#include "cceq/rng.hpp"
#include "cceq/statics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace cceq {

bool operator==(const SimCell& a, const SimCell& b) {
    return a.rho == b.rho && a.cutoff == b.cutoff && a.lambda == b.lambda &&
           a.analytic_eps == b.analytic_eps && a.n == b.n && a.n_risky == b.n_risky &&
           a.n_implemented == b.n_implemented && a.n_success == b.n_success &&
           a.n_failure == b.n_failure && a.n_safe == b.n_safe && a.emp_eps == b.emp_eps &&
           a.emp_hit_rate == b.emp_hit_rate && a.mean_posterior == b.mean_posterior;
}

bool operator==(const SimOutcome& a, const SimOutcome& b) {
    return a.seed == b.seed && a.cells == b.cells;
}

SimOutcome run_sim(const SimConfig& cfg) {
    if (cfg.n_experts < 1) {
        throw std::invalid_argument("run_sim: n_experts must be at least 1");
    }
    if (cfg.rho_values.empty()) {
        throw std::invalid_argument("run_sim: rho_values must be nonempty");
    }
    const Primitives p = validate(cfg.primitives);

    SimOutcome outcome;
    outcome.seed = cfg.seed;
    outcome.cells.reserve(cfg.rho_values.size());

    for (std::size_t cell_idx = 0; cell_idx < cfg.rho_values.size(); ++cell_idx) {
        const Reputation rho(cfg.rho_values[cell_idx]);
        const Equilibrium eq = solve_equilibrium(rho, p, cfg.mode);
        const double lam = lambda_of(rho.value(), p);
        const double mu1 = mean_good(p);
        const double mu0 = mean_bad(p);

        SimCell cell;
        cell.rho = rho.value();
        cell.cutoff = eq.cutoff;
        cell.lambda = lam;
        cell.analytic_eps = eq.eps;
        cell.n = cfg.n_experts;

        for (std::int64_t e = 0; e < cfg.n_experts; ++e) {
            SubstreamRng rng(cfg.seed, cell_idx, static_cast<std::uint64_t>(e));
            const bool high = rng.next_uniform() < rho.value();
            const bool good = rng.next_uniform() < p.pi;
            const double sigma = high ? p.sigma_h : p.sigma_l;
            const double x = (good ? mu1 : mu0) + sigma * normal_quantile(rng.next_uniform());
            const double u_impl = rng.next_uniform();

            if (x >= eq.cutoff) {
                ++cell.n_risky;
                if (u_impl < lam) {
                    ++cell.n_implemented;
                    if (good) ++cell.n_success;
                    else ++cell.n_failure;
                }
            } else {
                ++cell.n_safe;
            }
        }

        const double n = static_cast<double>(cell.n);
        cell.emp_eps = static_cast<double>(cell.n_risky) / n;
        cell.emp_hit_rate = static_cast<double>(cell.n_success) /
                            static_cast<double>(std::max<std::int64_t>(cell.n_implemented, 1));
        // Every expert with the same realized event lands on the same posterior,
        // so the average collapses to a tally-weighted sum.
        const std::int64_t n_unimpl = cell.n_risky - cell.n_implemented;
        cell.mean_posterior =
            (static_cast<double>(cell.n_success) *
                 posterior_after(PublicEvent::RiskySuccess, eq.cutoff, rho, p) +
             static_cast<double>(cell.n_failure) *
                 posterior_after(PublicEvent::RiskyFailure, eq.cutoff, rho, p) +
             static_cast<double>(n_unimpl) *
                 posterior_after(PublicEvent::RiskyUnimplemented, eq.cutoff, rho, p) +
             static_cast<double>(cell.n_safe) *
                 posterior_after(PublicEvent::Safe, eq.cutoff, rho, p)) /
            n;

        outcome.cells.push_back(cell);
    }
    return outcome;
}

namespace {

double binomial_se(double rate, double n) {
    if (n <= 0.0) return 0.0;
    return std::sqrt(std::max(rate * (1.0 - rate), 0.0) / n);
}

MonotoneFlag direction_flag(const std::vector<const PredictionRow*>& rows, bool nonincreasing,
                            bool use_hit) {
    if (rows.size() < 2) return MonotoneFlag::NotApplicable;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const double a = use_hit ? rows[i]->emp_hit_rate : rows[i]->emp_eps;
        const double b = use_hit ? rows[i + 1]->emp_hit_rate : rows[i + 1]->emp_eps;
        const double se_a = use_hit ? rows[i]->se_hit : rows[i]->se_eps;
        const double se_b = use_hit ? rows[i + 1]->se_hit : rows[i + 1]->se_eps;
        const double slack = 4.0 * std::hypot(se_a, se_b);
        const double move = b - a;
        if (nonincreasing ? move > slack : move < -slack) return MonotoneFlag::Fails;
    }
    return MonotoneFlag::Holds;
}

} // namespace

PredictionReport prediction_report(const SimOutcome& outcome, const Primitives& p,
                                   PayoffMode mode) {
    PredictionReport report;
    report.rows.reserve(outcome.cells.size());

    std::optional<double> rho_bar;
    if (outcome.cells.size() >= 2) {
        std::vector<double> grid;
        grid.reserve(outcome.cells.size());
        for (const SimCell& cell : outcome.cells) grid.push_back(cell.rho);
        rho_bar = check_rd(grid, p, mode).rho_bar;
    }

    for (const SimCell& cell : outcome.cells) {
        PredictionRow row;
        row.rho = cell.rho;
        row.emp_eps = cell.emp_eps;
        row.se_eps = binomial_se(cell.emp_eps, static_cast<double>(cell.n));
        row.emp_hit_rate = cell.emp_hit_rate;
        row.se_hit = binomial_se(cell.emp_hit_rate, static_cast<double>(cell.n_implemented));
        row.rd_verified = rho_bar.has_value() && cell.rho >= *rho_bar;
        report.rows.push_back(row);
    }

    std::vector<const PredictionRow*> verified;
    for (const PredictionRow& row : report.rows) {
        if (row.rd_verified) verified.push_back(&row);
    }
    report.eps_nonincreasing = direction_flag(verified, /*nonincreasing=*/true, /*use_hit=*/false);
    report.hit_nondecreasing = direction_flag(verified, /*nonincreasing=*/false, /*use_hit=*/true);
    return report;
}

} // namespace cceq
