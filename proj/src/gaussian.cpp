#include "cceq/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cceq {

namespace {

constexpr double kSqrt1_2 = 0.70710678118654752440;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr double kInf = std::numeric_limits<double>::infinity();

double log_phi(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return -0.5 * z * z - std::log(sigma) - kLogSqrt2Pi;
}

double log_add_exp(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

// log of the ability-mixture density for state s.
double log_mixture(double x, double mu_s, double rho, const Primitives& p) {
    return log_add_exp(std::log(rho) + log_phi(x, mu_s, p.sigma_h),
                       std::log1p(-rho) + log_phi(x, mu_s, p.sigma_l));
}

// Pr[x >= c | state s, ability a].
double upper_tail(double cutoff, double mu_s, double sigma_a) {
    if (cutoff == -kInf) return 1.0;
    if (cutoff == kInf) return 0.0;
    return norm_tail((cutoff - mu_s) / sigma_a);
}

// Pr[x < c | state s, ability a], evaluated directly so deep left tails keep
// their magnitude instead of cancelling against 1.
double lower_tail(double cutoff, double mu_s, double sigma_a) {
    if (cutoff == -kInf) return 0.0;
    if (cutoff == kInf) return 1.0;
    return norm_cdf((cutoff - mu_s) / sigma_a);
}

} // namespace

double norm_cdf(double z) {
    return 0.5 * std::erfc(-z * kSqrt1_2);
}

double norm_tail(double z) {
    return 0.5 * std::erfc(z * kSqrt1_2);
}

double norm_pdf(double z) {
    return std::exp(-0.5 * z * z - kLogSqrt2Pi);
}

double mixture_density(double x, int state, Reputation rho, const Primitives& p) {
    const double mu_s = state == 1 ? mean_good(p) : mean_bad(p);
    return std::exp(log_mixture(x, mu_s, rho.value(), p));
}

double success_prob(double x, Reputation rho, const Primitives& p) {
    if (x == kInf) return 1.0;
    if (x == -kInf) return 0.0;
    const double log_m1 = log_mixture(x, mean_good(p), rho.value(), p);
    const double log_m0 = log_mixture(x, mean_bad(p), rho.value(), p);
    // p = pi m1 / (pi m1 + (1-pi) m0) = 1 / (1 + exp(t))
    const double t = std::log1p(-p.pi) - std::log(p.pi) + log_m0 - log_m1;
    if (t > 700.0) return std::exp(-t);  // avoid overflow; p ~ exp(-t)
    return 1.0 / (1.0 + std::exp(t));
}

namespace {

// m_s(x) and its partials with respect to x, rho, and the state mean.
struct MixturePieces {
    double m;        // density value
    double dm_dx;
    double dm_drho;  // phi_h - phi_l
    double dm_dmu;   // derivative in the state mean
};

MixturePieces mixture_pieces(double x, double mu_s, double rho, const Primitives& p) {
    const double zh = (x - mu_s) / p.sigma_h;
    const double zl = (x - mu_s) / p.sigma_l;
    const double ph = std::exp(log_phi(x, mu_s, p.sigma_h));
    const double pl = std::exp(log_phi(x, mu_s, p.sigma_l));
    MixturePieces out;
    out.m = rho * ph + (1.0 - rho) * pl;
    out.dm_dx = -(rho * ph * zh / p.sigma_h + (1.0 - rho) * pl * zl / p.sigma_l);
    out.dm_drho = ph - pl;
    out.dm_dmu = -out.dm_dx;
    return out;
}

// p' via the quotient rule: p = pi m1 / (pi m1 + (1-pi) m0), so for any scalar
// parameter u moving only the densities, dp/du = pi(1-pi)(m1_u m0 - m0_u m1)/D^2.
double quotient_derivative(double m1, double m0, double dm1, double dm0, double pi) {
    const double denom = pi * m1 + (1.0 - pi) * m0;
    return pi * (1.0 - pi) * (dm1 * m0 - dm0 * m1) / (denom * denom);
}

} // namespace

double success_prob_dx(double x, Reputation rho, const Primitives& p) {
    const auto g = mixture_pieces(x, mean_good(p), rho.value(), p);
    const auto b = mixture_pieces(x, mean_bad(p), rho.value(), p);
    return quotient_derivative(g.m, b.m, g.dm_dx, b.dm_dx, p.pi);
}

double success_prob_dpi(double x, Reputation rho, const Primitives& p) {
    const auto g = mixture_pieces(x, mean_good(p), rho.value(), p);
    const auto b = mixture_pieces(x, mean_bad(p), rho.value(), p);
    const double denom = p.pi * g.m + (1.0 - p.pi) * b.m;
    return g.m * b.m / (denom * denom);
}

double success_prob_drho(double x, Reputation rho, const Primitives& p) {
    const auto g = mixture_pieces(x, mean_good(p), rho.value(), p);
    const auto b = mixture_pieces(x, mean_bad(p), rho.value(), p);
    return quotient_derivative(g.m, b.m, g.dm_drho, b.dm_drho, p.pi);
}

double success_prob_dtheta(double x, Reputation rho, const Primitives& p) {
    const auto g = mixture_pieces(x, mean_good(p), rho.value(), p);
    const auto b = mixture_pieces(x, mean_bad(p), rho.value(), p);
    // Means move symmetrically about the midpoint: d mu1/d theta = +dmu,
    // d mu0/d theta = -dmu.
    const double dmu = 0.5 * (p.mu1 - p.mu0);
    return quotient_derivative(g.m, b.m, g.dm_dmu * dmu, b.dm_dmu * -dmu, p.pi);
}

double event_likelihood(PublicEvent event, double cutoff, Reputation rho, Ability ability,
                        const Primitives& p) {
    const double sigma_a = ability == Ability::High ? p.sigma_h : p.sigma_l;
    const double lam = lambda_of(rho.value(), p);
    const double t1 = upper_tail(cutoff, mean_good(p), sigma_a);
    const double t0 = upper_tail(cutoff, mean_bad(p), sigma_a);
    switch (event) {
        case PublicEvent::RiskySuccess: return lam * p.pi * t1;
        case PublicEvent::RiskyFailure: return lam * (1.0 - p.pi) * t0;
        case PublicEvent::RiskyUnimplemented:
            return (1.0 - lam) * (p.pi * t1 + (1.0 - p.pi) * t0);
        case PublicEvent::Safe:
            return p.pi * lower_tail(cutoff, mean_good(p), sigma_a) +
                   (1.0 - p.pi) * lower_tail(cutoff, mean_bad(p), sigma_a);
    }
    return 0.0;
}

double posterior_after(PublicEvent event, double cutoff, Reputation rho, const Primitives& p) {
    const double lh = event_likelihood(event, cutoff, rho, Ability::High, p);
    const double ll = event_likelihood(event, cutoff, rho, Ability::Low, p);
    const double num = rho.value() * lh;
    const double denom = num + (1.0 - rho.value()) * ll;
    if (denom <= 0.0) return rho.value();  // off-path event: keep the prior
    return num / denom;
}

Posteriors posteriors_of_cutoff(double cutoff, Reputation rho, const Primitives& p) {
    Posteriors out;
    out.r_success = posterior_after(PublicEvent::RiskySuccess, cutoff, rho, p);
    out.r_failure = posterior_after(PublicEvent::RiskyFailure, cutoff, rho, p);
    out.r_safe = posterior_after(PublicEvent::Safe, cutoff, rho, p);
    out.r_unimplemented = posterior_after(PublicEvent::RiskyUnimplemented, cutoff, rho, p);
    return out;
}

} // namespace cceq
