#include "cceq/primitives.hpp"

#include <cmath>
#include <string>

namespace cceq {

Primitives default_primitives() {
    Primitives p{};
    p.pi = 0.5;
    p.mu0 = 0.0;
    p.mu1 = 1.0;
    p.sigma_h = 0.5;
    p.sigma_l = 1.0;
    p.theta = 1.0;
    p.kappa = 1.0;
    p.b = 0.0;
    p.t_gate = 0.0;
    p.lambda_min = 0.2;
    p.lambda_max = 0.8;
    return p;
}

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw ValidationError(msg);
}

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) throw ValidationError(std::string(field) + " must be finite");
}

} // namespace

Primitives validate(const Primitives& p) {
    require_finite(p.pi, "pi");
    require_finite(p.mu0, "mu0");
    require_finite(p.mu1, "mu1");
    require_finite(p.sigma_h, "sigma_h");
    require_finite(p.sigma_l, "sigma_l");
    require_finite(p.theta, "theta");
    require_finite(p.kappa, "kappa");
    require_finite(p.b, "b");
    require_finite(p.t_gate, "t_gate");
    require_finite(p.lambda_min, "lambda_min");
    require_finite(p.lambda_max, "lambda_max");

    require(p.pi > 0.0 && p.pi < 1.0, "pi must lie strictly inside (0,1)");
    require(p.mu1 > p.mu0, "mu1 must exceed mu0");
    require(p.sigma_h > 0.0, "sigma_h must be positive");
    require(p.sigma_l >= p.sigma_h, "sigma_l must be at least sigma_h");
    require(p.theta > 0.0, "theta must be positive");
    require(p.kappa >= 0.0, "kappa must be nonnegative");
    require(p.b >= 0.0, "b must be nonnegative");
    require(p.t_gate >= 0.0, "t_gate must be nonnegative");
    require(p.lambda_min >= 0.0, "lambda_min must be nonnegative");
    require(p.lambda_max >= p.lambda_min, "lambda_max must be at least lambda_min");
    require(p.lambda_max <= 1.0, "lambda_max must not exceed 1");
    return p;
}

Reputation::Reputation(double rho) : rho_(rho) {
    if (!(rho > 0.0 && rho < 1.0)) {
        throw ValidationError("rho must lie strictly inside (0,1)");
    }
}

double lambda_of(double rho, const Primitives& p) {
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw std::domain_error("lambda_of: rho must lie in [0,1]");
    }
    return (p.lambda_min + (p.lambda_max - p.lambda_min) * rho) * std::exp(-p.t_gate);
}

double lambda_slope(const Primitives& p) {
    return (p.lambda_max - p.lambda_min) * std::exp(-p.t_gate);
}

double w_of(double rho_post, const Primitives& p) {
    if (!(rho_post >= 0.0 && rho_post <= 1.0)) {
        throw std::domain_error("w_of: posterior must lie in [0,1]");
    }
    return p.kappa * rho_post;
}

double mean_good(const Primitives& p) {
    const double mid = 0.5 * (p.mu0 + p.mu1);
    return mid + 0.5 * p.theta * (p.mu1 - p.mu0);
}

double mean_bad(const Primitives& p) {
    const double mid = 0.5 * (p.mu0 + p.mu1);
    return mid - 0.5 * p.theta * (p.mu1 - p.mu0);
}

} // namespace cceq
