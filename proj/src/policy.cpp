#include "cceq/policy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cceq {

double quantile_fx(double q, Reputation rho, const Primitives& p) {
    if (!(q > 0.0 && q < 1.0)) {
        throw std::domain_error("quantile_fx: q must lie strictly inside (0,1)");
    }
    const double span = 10.0 * p.sigma_l;
    double lo = mean_bad(p) - span;
    double hi = mean_good(p) + span;
    while (mixture_cdf(lo, rho, p) > q) lo -= span;
    while (mixture_cdf(hi, rho, p) < q) hi += span;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (mixture_cdf(mid, rho, p) < q) lo = mid;
        else hi = mid;
        if (hi - lo <= 1e-12) break;
    }
    return 0.5 * (lo + hi);
}

double floor_eps(Reputation rho, const Primitives& p, PayoffMode mode) {
    Primitives q = p;
    q.b = 0.0;
    return solve_equilibrium(rho, q, mode).eps;
}

CalibrationResult bonus_for_target(double target_eps, Reputation rho, const Primitives& p,
                                   PayoffMode mode) {
    if (target_eps >= 1.0) {
        throw CalibrationError(CalibrationError::Reason::TargetAtUnity,
                               "bonus_for_target: target experimentation rate must be below 1");
    }
    if (lambda_of(rho.value(), p) <= 0.0) {
        throw CalibrationError(CalibrationError::Reason::TargetBelowFloor,
                               "bonus_for_target: implementation intensity is zero, no bonus can "
                               "induce experimentation");
    }
    const double floor = floor_eps(rho, p, mode);
    if (target_eps <= floor) {
        throw CalibrationError(CalibrationError::Reason::TargetBelowFloor,
                               "bonus_for_target: target " + std::to_string(target_eps) +
                                   " does not exceed the bonus-free rate " +
                                   std::to_string(floor));
    }

    const double cutoff = quantile_fx(1.0 - target_eps, rho, p);
    const Posteriors post = posteriors_of_cutoff(cutoff, rho, p);
    const double lam = lambda_of(rho.value(), p);
    const double pc = success_prob(cutoff, rho, p);

    // The indifference condition is linear in the bonus:
    // delta(c) = base(c) + b lambda p(c), so b = -base / (lambda p(c)).
    Primitives no_bonus = p;
    no_bonus.b = 0.0;
    const double base = delta(cutoff, rho, post, no_bonus, mode);
    const double bonus = -base / (lam * pc);
    if (bonus < 0.0) {
        throw CalibrationError(CalibrationError::Reason::TargetBelowFloor,
                               "bonus_for_target: implied bonus is negative; target lies below "
                               "the bonus-free rate");
    }

    Primitives calibrated = p;
    calibrated.b = bonus;
    const Equilibrium eq = solve_equilibrium(rho, calibrated, mode);

    CalibrationResult result;
    result.target_eps = target_eps;
    result.cutoff = cutoff;
    result.bonus = bonus;
    result.achieved_eps = eq.eps;
    result.roundtrip_gap = std::abs(eq.eps - target_eps);
    if (result.roundtrip_gap > 1e-6) {
        throw CalibrationError(CalibrationError::Reason::RoundtripFailure,
                               "bonus_for_target: re-solve at b=" + std::to_string(bonus) +
                                   " reached eps=" + std::to_string(eq.eps) +
                                   " instead of the target " + std::to_string(target_eps) +
                                   " (gap " + std::to_string(result.roundtrip_gap) + ")");
    }
    return result;
}

std::vector<SweepRow> gatekeeping_sweep(const std::vector<double>& t_grid, Reputation rho,
                                        const Primitives& p, PayoffMode mode) {
    if (!(p.b > 0.0)) {
        throw std::invalid_argument("gatekeeping_sweep: requires a positive bonus b");
    }
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (t_grid[i] < 0.0) {
            throw std::invalid_argument("gatekeeping_sweep: t values must be nonnegative");
        }
        if (i > 0 && t_grid[i] <= t_grid[i - 1]) {
            throw std::invalid_argument("gatekeeping_sweep: t_grid must be strictly ascending");
        }
    }
    std::vector<SweepRow> rows;
    rows.reserve(t_grid.size());
    for (double t : t_grid) {
        Primitives q = p;
        q.t_gate = t;
        const Equilibrium eq = solve_equilibrium(rho, q, mode);
        rows.push_back({t, lambda_of(rho.value(), q), eq.cutoff, eq.eps});
    }
    return rows;
}

} // namespace cceq
