#pragma once

#include "cceq/equilibrium.hpp"
#include "cceq/primitives.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cceq {

/// Parameters the cutoff can be differentiated against.
enum class Param { Rho, Theta, Pi, Kappa, B, Lambda, TGate };

std::string param_name(Param param);
Param param_from_name(const std::string& name);
const std::vector<Param>& all_params();

/// Analytic and finite-difference derivatives of the equilibrium cutoff with
/// respect to one parameter. The analytic column freezes the posteriors at
/// their equilibrium values (the implicit-function calculus of the cutoff
/// identity); the numeric column re-solves the whole equilibrium, so the two
/// differ by the posterior-feedback wedge. agree uses a loose band to absorb
/// that wedge: |analytic - numeric| <= max(1e-3, 5% |numeric|).
struct StaticsReport {
    Param param = Param::B;
    double analytic = 0.0;
    double numeric = 0.0;
    bool agree = false;
};

/// Implicit-function derivative -d_param(delta) / d_x(delta) at the solved
/// cutoff with posteriors frozen. Requires an interior cutoff; throws
/// DegenerateError when d_x(delta) <= 1e-14.
double analytic_derivative(Param param, Reputation rho, const Equilibrium& eq,
                           const Primitives& p, PayoffMode mode);

/// Central finite difference of the fully re-solved equilibrium cutoff.
/// Throws BoundaryHitError if either perturbed solve returns a sentinel.
double numeric_derivative(Param param, Reputation rho, const Primitives& p, PayoffMode mode,
                          double rel_step = 1e-4);

StaticsReport statics_report(Param param, Reputation rho, const Primitives& p, PayoffMode mode);

/// Drift diagnostics for the reputational return to recommending risky,
/// evaluated at the cutoff solved once at the anchor reputation (the grid
/// midpoint) so that only the rho-dependence of returns moves. rho_bar is the
/// smallest grid value from which the drift stays weakly negative to the end
/// of the grid; absent when no such suffix exists.
struct RdReport {
    std::vector<double> grid;
    std::vector<double> value;  // return to risky at the anchored cutoff
    std::vector<double> drift;  // grid finite differences of value
    std::optional<double> rho_bar;
    double anchor_rho = 0.0;
    double anchor_cutoff = 0.0;
};

RdReport check_rd(const std::vector<double>& rho_grid, const Primitives& p, PayoffMode mode);

/// Return-to-risky value underlying check_rd: delta at x = anchor_cutoff with
/// the cutoff-consistent posteriors of the evaluation reputation.
double risky_return_at(double anchor_cutoff, Reputation rho, const Primitives& p,
                       PayoffMode mode);

struct ScanRow {
    double rho;
    double cutoff;
    double eps;
};

/// Solved cutoffs and experimentation rates along a reputation grid.
/// Monotonicity in rho is meaningful only on the drift-verified sub-grid of
/// check_rd; this function reports data and leaves the assertion to callers.
std::vector<ScanRow> conservatism_scan(const std::vector<double>& rho_grid, const Primitives& p,
                                       PayoffMode mode);

} // namespace cceq
