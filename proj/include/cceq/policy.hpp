#pragma once

#include "cceq/equilibrium.hpp"
#include "cceq/primitives.hpp"

#include <vector>

namespace cceq {

/// Outcome of calibrating the success-only bonus to a target experimentation
/// rate. The bonus is verified by re-solving the equilibrium at the returned
/// value; roundtrip_gap is |achieved_eps - target_eps|.
struct CalibrationResult {
    double target_eps = 0.0;
    double cutoff = 0.0;        // F_X^{-1}(1 - target_eps)
    double bonus = 0.0;
    double achieved_eps = 0.0;
    double roundtrip_gap = 0.0;
};

/// Inverse of the signal mixture CDF, by monotone bisection to 1e-12.
/// Throws std::domain_error for q outside (0,1).
double quantile_fx(double q, Reputation rho, const Primitives& p);

/// Experimentation rate of the b = 0 equilibrium. This is the exact floor of
/// implementable targets; it equals 0 when the bonus-free equilibrium is the
/// always-safe corner.
double floor_eps(Reputation rho, const Primitives& p, PayoffMode mode);

/// Calibrates the bonus that implements target_eps: inverts the mixture CDF
/// for the cutoff, prices the bonus off the cutoff-consistent indifference
/// condition, then verifies by re-solving. Throws CalibrationError with
/// reason TargetBelowFloor / TargetAtUnity / RoundtripFailure.
CalibrationResult bonus_for_target(double target_eps, Reputation rho, const Primitives& p,
                                   PayoffMode mode);

struct SweepRow {
    double t;
    double lambda;
    double cutoff;
    double eps;
};

/// Re-solves the equilibrium across gatekeeping stringencies. Requires b > 0
/// (the sufficient condition for the gatekeeping comparative static) and an
/// ascending nonnegative t_grid.
std::vector<SweepRow> gatekeeping_sweep(const std::vector<double>& t_grid, Reputation rho,
                                        const Primitives& p, PayoffMode mode);

} // namespace cceq
