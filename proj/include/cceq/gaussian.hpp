#pragma once

#include "cceq/primitives.hpp"

namespace cceq {

/// The public observation at the end of an episode: the recommendation plus,
/// for implemented risky calls, the realized outcome. An unimplemented risky
/// recommendation is publicly distinguishable from a safe one; whether it
/// carries a reputational payoff term is decided by the PayoffMode.
enum class PublicEvent { RiskySuccess, RiskyFailure, RiskyUnimplemented, Safe };

enum class Ability { High, Low };

/// Bayes-consistent posterior reputations after each public event, given a
/// cutoff strategy. Their event-probability-weighted average equals the prior.
struct Posteriors {
    double r_success;
    double r_failure;
    double r_safe;
    double r_unimplemented;
};

/// Standard normal CDF, absolute error below 1e-12 everywhere.
double norm_cdf(double z);

/// Upper tail 1 - norm_cdf(z), computed stably for large z.
double norm_tail(double z);

/// Standard normal density.
double norm_pdf(double z);

/// Ability-mixture signal density m_s(x) for state s in {0,1}:
/// rho * phi(x; mu_s, sigma_h) + (1-rho) * phi(x; mu_s, sigma_l),
/// with the theta-scaled state means.
double mixture_density(double x, int state, Reputation rho, const Primitives& p);

/// Pr[s = 1 | x, rho]: success probability of the risky action given the
/// signal. Strictly increasing in x with range (0,1); computed in log space
/// so extreme signals stay finite. +-infinity map to the limits 1 and 0.
double success_prob(double x, Reputation rho, const Primitives& p);

/// Partial derivatives of success_prob at interior x, used by the
/// comparative-statics formulas.
double success_prob_dx(double x, Reputation rho, const Primitives& p);
double success_prob_dpi(double x, Reputation rho, const Primitives& p);
double success_prob_drho(double x, Reputation rho, const Primitives& p);
double success_prob_dtheta(double x, Reputation rho, const Primitives& p);

/// Pr[event | ability] under the cutoff strategy. The cutoff may be +-infinity
/// (always-safe / always-risky corners). For each ability the four event
/// probabilities sum to 1.
double event_likelihood(PublicEvent event, double cutoff, Reputation rho, Ability ability,
                        const Primitives& p);

/// Posterior probability of high ability after a public event. If the event
/// has zero probability under both abilities the prior is returned (off-path
/// convention).
double posterior_after(PublicEvent event, double cutoff, Reputation rho, const Primitives& p);

/// All four event posteriors for a cutoff strategy.
Posteriors posteriors_of_cutoff(double cutoff, Reputation rho, const Primitives& p);

} // namespace cceq
