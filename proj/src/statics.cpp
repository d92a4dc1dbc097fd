#include "cceq/statics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cceq {

namespace {

constexpr double kDegenerateFloor = 1e-14;

} // namespace

std::string param_name(Param param) {
    switch (param) {
        case Param::Rho: return "rho";
        case Param::Theta: return "theta";
        case Param::Pi: return "pi";
        case Param::Kappa: return "kappa";
        case Param::B: return "b";
        case Param::Lambda: return "lambda";
        case Param::TGate: return "t_gate";
    }
    return "?";
}

Param param_from_name(const std::string& name) {
    for (Param param : all_params()) {
        if (param_name(param) == name) return param;
    }
    throw std::invalid_argument("unknown parameter name: " + name);
}

const std::vector<Param>& all_params() {
    static const std::vector<Param> params = {Param::Rho, Param::Theta, Param::Pi, Param::Kappa,
                                              Param::B, Param::Lambda, Param::TGate};
    return params;
}

namespace {

// Partial of delta with respect to one parameter at (x, rho), posteriors held
// fixed at the supplied values.
double delta_partial(Param param, double x, Reputation rho, const Posteriors& post,
                     const Primitives& p, PayoffMode mode) {
    const double lam = lambda_of(rho.value(), p);
    const double px = success_prob(x, rho, p);
    const double w1 = w_of(post.r_success, p);
    const double w0 = w_of(post.r_failure, p);
    // Partial of delta in the lambda *value*; the unimplemented branch enters
    // with weight (1 - lambda) in Extended mode.
    const double dd_dlam = px * w1 + (1.0 - px) * w0 + p.b * px -
                           (mode == PayoffMode::Extended ? w_of(post.r_unimplemented, p) : 0.0);

    switch (param) {
        case Param::B:
            return lam * px;
        case Param::Kappa: {
            // W = kappa * r, so d delta / d kappa is delta's reputational part over kappa.
            double v = lam * (px * post.r_success + (1.0 - px) * post.r_failure) - post.r_safe;
            if (mode == PayoffMode::Extended) v += (1.0 - lam) * post.r_unimplemented;
            return v;
        }
        case Param::Pi:
            return lam * (w1 - w0 + p.b) * success_prob_dpi(x, rho, p);
        case Param::Theta:
            return lam * (w1 - w0 + p.b) * success_prob_dtheta(x, rho, p);
        case Param::Lambda:
            return dd_dlam;
        case Param::TGate:
            // lambda(T) = lambda(0) exp(-T), so d lambda / d T = -lambda.
            return -lam * dd_dlam;
        case Param::Rho:
            // Direct channels only: the lambda(rho) slope and the ability
            // mixture inside p(x). Posterior movements are deliberately frozen.
            return lambda_slope(p) * dd_dlam +
                   lam * (w1 - w0 + p.b) * success_prob_drho(x, rho, p);
    }
    return 0.0;
}

Primitives perturbed(Param param, const Primitives& p, double amount) {
    Primitives q = p;
    switch (param) {
        case Param::Theta: q.theta += amount; break;
        case Param::Pi: q.pi += amount; break;
        case Param::Kappa: q.kappa += amount; break;
        case Param::B: q.b += amount; break;
        case Param::TGate: q.t_gate += amount; break;
        case Param::Lambda:
            // Scale both endpoints: shifts lambda(rho) multiplicatively at
            // every rho without bending its shape.
            q.lambda_min *= 1.0 + amount;
            q.lambda_max *= 1.0 + amount;
            break;
        case Param::Rho:
            throw std::logic_error("rho is not a primitive field");
    }
    return q;
}

double base_value(Param param, Reputation rho, const Primitives& p) {
    switch (param) {
        case Param::Rho: return rho.value();
        case Param::Theta: return p.theta;
        case Param::Pi: return p.pi;
        case Param::Kappa: return p.kappa;
        case Param::B: return p.b;
        case Param::Lambda: return 1.0;  // multiplicative factor on lambda
        case Param::TGate: return p.t_gate;
    }
    return 0.0;
}

} // namespace

double analytic_derivative(Param param, Reputation rho, const Equilibrium& eq,
                           const Primitives& p, PayoffMode mode) {
    if (std::isinf(eq.cutoff)) {
        throw std::invalid_argument("analytic_derivative: cutoff must be interior");
    }
    const double dx = delta_slope(eq.cutoff, rho, eq.posteriors, p, mode);
    if (dx <= kDegenerateFloor) {
        throw DegenerateError("analytic_derivative: d_x delta vanishes at the cutoff");
    }
    const double dxi = delta_partial(param, eq.cutoff, rho, eq.posteriors, p, mode);
    return -dxi / dx;
}

double numeric_derivative(Param param, Reputation rho, const Primitives& p, PayoffMode mode,
                          double rel_step) {
    const double base = base_value(param, rho, p);
    const double h = rel_step * std::max(std::abs(base), 0.1);

    auto solve_at = [&](double sign) {
        if (param == Param::Rho) {
            return solve_equilibrium(Reputation(rho.value() + sign * h), p, mode);
        }
        return solve_equilibrium(rho, validate(perturbed(param, p, sign * h)), mode);
    };

    const Equilibrium up = solve_at(+1.0);
    const Equilibrium down = solve_at(-1.0);
    if (std::isinf(up.cutoff) || std::isinf(down.cutoff)) {
        throw BoundaryHitError("numeric_derivative(" + param_name(param) +
                               "): perturbed solve returned a sentinel cutoff");
    }
    double denom = 2.0 * h;
    if (param == Param::Lambda) {
        // The perturbation scaled lambda by (1 +- h): translate to a
        // derivative in the lambda value itself.
        denom = 2.0 * h * lambda_of(rho.value(), p);
    }
    return (up.cutoff - down.cutoff) / denom;
}

StaticsReport statics_report(Param param, Reputation rho, const Primitives& p, PayoffMode mode) {
    const Equilibrium eq = solve_equilibrium(rho, p, mode);
    StaticsReport report;
    report.param = param;
    report.analytic = analytic_derivative(param, rho, eq, p, mode);
    report.numeric = numeric_derivative(param, rho, p, mode);
    report.agree =
        std::abs(report.analytic - report.numeric) <= std::max(1e-3, 0.05 * std::abs(report.numeric));
    return report;
}

double risky_return_at(double anchor_cutoff, Reputation rho, const Primitives& p,
                       PayoffMode mode) {
    const Posteriors post = posteriors_of_cutoff(anchor_cutoff, rho, p);
    return delta(anchor_cutoff, rho, post, p, mode);
}

RdReport check_rd(const std::vector<double>& rho_grid, const Primitives& p, PayoffMode mode) {
    if (rho_grid.size() < 2) {
        throw std::invalid_argument("check_rd: need at least two grid points");
    }
    for (std::size_t i = 0; i < rho_grid.size(); ++i) {
        if (!(rho_grid[i] > 0.0 && rho_grid[i] < 1.0)) {
            throw std::invalid_argument("check_rd: grid values must lie strictly inside (0,1)");
        }
        if (i > 0 && rho_grid[i] <= rho_grid[i - 1]) {
            throw std::invalid_argument("check_rd: grid must be strictly ascending");
        }
    }

    RdReport report;
    report.grid = rho_grid;
    report.anchor_rho = rho_grid[(rho_grid.size() - 1) / 2];
    report.anchor_cutoff = solve_equilibrium(Reputation(report.anchor_rho), p, mode).cutoff;

    const std::size_t n = rho_grid.size();
    report.value.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        report.value[i] = risky_return_at(report.anchor_cutoff, Reputation(rho_grid[i]), p, mode);
    }

    report.drift.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == n ? i : i + 1;
        report.drift[i] = (report.value[hi] - report.value[lo]) / (rho_grid[hi] - rho_grid[lo]);
    }

    constexpr double kSlack = 1e-8;
    std::size_t onset = n;
    for (std::size_t i = n; i-- > 0;) {
        if (report.drift[i] <= kSlack) onset = i;
        else break;
    }
    if (onset < n) report.rho_bar = rho_grid[onset];
    return report;
}

std::vector<ScanRow> conservatism_scan(const std::vector<double>& rho_grid, const Primitives& p,
                                       PayoffMode mode) {
    std::vector<ScanRow> rows;
    rows.reserve(rho_grid.size());
    for (double rho : rho_grid) {
        const Equilibrium eq = solve_equilibrium(Reputation(rho), p, mode);
        rows.push_back({rho, eq.cutoff, eq.eps});
    }
    return rows;
}

} // namespace cceq
