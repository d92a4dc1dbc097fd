#pragma once

#include "cceq/gaussian.hpp"
#include "cceq/primitives.hpp"

namespace cceq {

/// Payoff accounting for a risky recommendation that is not implemented.
/// Baseline drops the branch entirely (the expert collects nothing unless the
/// recommendation is carried out or was safe); Extended credits the
/// reputational payoff of the unimplemented event with weight (1 - lambda).
/// Baseline is the contractual default.
enum class PayoffMode { Baseline, Extended };

/// A solved (cutoff, posteriors, experimentation-rate) triple at a given
/// reputation, plus fixed-point diagnostics. The cutoff is +infinity at the
/// always-safe corner and -infinity at the always-risky corner.
struct Equilibrium {
    double cutoff;
    Posteriors posteriors;
    double eps;       // experimentation rate, 1 - F_X(cutoff)
    int iterations;
    double residual;  // |best response at the solved posteriors - cutoff|
};

/// Expected payoff gap between recommending risky and safe at signal x, for
/// fixed posteriors:
///   Baseline: lambda * [p(x) W(r_success) + (1-p(x)) W(r_failure)]
///             + b lambda p(x) - W(r_safe)
///   Extended adds (1-lambda) * W(r_unimplemented).
double delta(double x, Reputation rho, const Posteriors& post, const Primitives& p,
             PayoffMode mode);

/// Analytic d delta / dx = lambda p'(x) (W(r_success) - W(r_failure) + b).
double delta_slope(double x, Reputation rho, const Posteriors& post, const Primitives& p,
                   PayoffMode mode);

/// Unique root of delta in x for the given posteriors, found by a sign scan
/// over [-60, 60] followed by bisection (|delta| <= 1e-12, interval <= 1e-12).
/// Returns +infinity when delta < 0 on the whole window (always safe) and
/// -infinity when delta > 0 everywhere (always risky). Requires the
/// single-crossing slope premise W(r_success) - W(r_failure) + b > 0; throws
/// NonMonotoneError when the scan sees a sign pattern inconsistent with a
/// single upward crossing.
double best_response_cutoff(Reputation rho, const Posteriors& post, const Primitives& p,
                            PayoffMode mode);

/// Posteriors in the limit where the trial cutoff escapes to a corner. Rare
/// events keep a nondegenerate tail ratio: with sigma_h < sigma_l the
/// high-ability tails vanish relative to the low-ability ones, driving the
/// posterior after a vanishing event to 0; with equal noise every event is
/// uninformative and carries the prior. Sure events always carry the prior.
/// These are the beliefs against which a corner is a genuine equilibrium (the
/// continuity selection); posteriors_of_cutoff at a sentinel instead applies
/// the off-path prior convention.
Posteriors limit_posteriors(bool always_safe, Reputation rho, const Primitives& p);

/// Whether the corner strategy is a best response against its own limit
/// posteriors: always-safe needs sup_x delta <= 0, always-risky needs
/// inf_x delta >= 0.
bool corner_consistent(bool always_safe, Reputation rho, const Primitives& p, PayoffMode mode);

/// Damped fixed-point iteration c <- (1-alpha) c + alpha BR(posteriors(c))
/// with alpha = 0.5, started from the midpoint of the state means. Converges
/// when successive iterates are within 1e-10 or both hit the same sentinel;
/// capped at 10,000 iterations. Throws NoConvergenceError / CycleDetectedError.
Equilibrium solve_equilibrium(Reputation rho, const Primitives& p, PayoffMode mode);

/// Unconditional CDF of the private signal: the (rho, pi)-weighted mixture of
/// the four ability/state normal components.
double mixture_cdf(double x, Reputation rho, const Primitives& p);

/// Density of the signal mixture.
double mixture_pdf(double x, Reputation rho, const Primitives& p);

/// Experimentation rate 1 - F_X(cutoff); sentinels map to 1 and 0.
double experimentation_rate(double cutoff, Reputation rho, const Primitives& p);

} // namespace cceq
