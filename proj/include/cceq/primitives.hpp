#pragma once

#include "cceq/errors.hpp"

namespace cceq {

/// All structural parameters of one model instance. Plain aggregate; call
/// validate() before handing a hand-built set to the solvers.
struct Primitives {
    double pi;         // prior success probability of the good state, in (0,1)
    double mu0;        // signal mean in the bad state
    double mu1;        // signal mean in the good state, mu1 > mu0
    double sigma_h;    // signal noise of a high-ability expert, > 0
    double sigma_l;    // signal noise of a low-ability expert, >= sigma_h
    double theta;      // informativeness: scales the mean separation about its midpoint, > 0
    double kappa;      // career-concern strength: reputational payoff is kappa * posterior, >= 0
    double b;          // success-only bonus, >= 0
    double t_gate;     // gatekeeping stringency: implementation intensity scaled by exp(-t_gate), >= 0
    double lambda_min; // implementation intensity at rho = 0 (before gatekeeping)
    double lambda_max; // implementation intensity at rho = 1, 0 <= lambda_min <= lambda_max <= 1
};

/// Reference parameter set used throughout the tests and docs.
Primitives default_primitives();

/// Returns p unchanged if every structural bound holds; throws ValidationError
/// naming the offending field otherwise. Idempotent.
Primitives validate(const Primitives& p);

/// Public belief that the expert is high ability, strictly inside (0,1).
class Reputation {
public:
    explicit Reputation(double rho);
    double value() const noexcept { return rho_; }

private:
    double rho_;
};

/// Implementation intensity lambda(rho; t_gate) =
/// [lambda_min + (lambda_max - lambda_min) * rho] * exp(-t_gate).
/// Weakly increasing in rho, weakly decreasing in t_gate, always in [0,1].
/// Domain is the closed interval rho in [0,1].
double lambda_of(double rho, const Primitives& p);

/// Slope of lambda_of in rho, (lambda_max - lambda_min) * exp(-t_gate).
double lambda_slope(const Primitives& p);

/// Reputational payoff W(rho_post) = kappa * rho_post for rho_post in [0,1].
double w_of(double rho_post, const Primitives& p);

/// Theta-scaled state means: the separation mu1 - mu0 is stretched by theta
/// about the midpoint (mu0 + mu1) / 2.
double mean_good(const Primitives& p);
double mean_bad(const Primitives& p);

} // namespace cceq
