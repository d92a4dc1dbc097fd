#include "cceq/equilibrium.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace cceq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBracket = 60.0;       // scan window in signal units
constexpr int kScanPoints = 481;        // step 0.25 over [-60, 60]
constexpr double kRootTol = 1e-12;      // |delta| and interval width at the root
constexpr double kStepTol = 1e-10;      // fixed-point step tolerance
constexpr int kMaxIterations = 10000;
constexpr double kDamping = 0.5;

double scan_noise_floor(const Primitives& p) {
    // delta scales with kappa and b; sign decisions ignore jitter below this.
    return 1e-12 * std::max(1.0, p.kappa * (1.0 + p.b));
}

} // namespace

double delta(double x, Reputation rho, const Posteriors& post, const Primitives& p,
             PayoffMode mode) {
    const double lam = lambda_of(rho.value(), p);
    const double px = success_prob(x, rho, p);
    const double w1 = w_of(post.r_success, p);
    const double w0 = w_of(post.r_failure, p);
    const double ws = w_of(post.r_safe, p);
    double value = lam * (px * w1 + (1.0 - px) * w0) + p.b * lam * px - ws;
    if (mode == PayoffMode::Extended) {
        value += (1.0 - lam) * w_of(post.r_unimplemented, p);
    }
    return value;
}

double delta_slope(double x, Reputation rho, const Posteriors& post, const Primitives& p,
                   PayoffMode mode) {
    (void)mode;  // the mode-specific term does not depend on x
    const double lam = lambda_of(rho.value(), p);
    const double w1 = w_of(post.r_success, p);
    const double w0 = w_of(post.r_failure, p);
    return lam * success_prob_dx(x, rho, p) * (w1 - w0 + p.b);
}

double best_response_cutoff(Reputation rho, const Posteriors& post, const Primitives& p,
                            PayoffMode mode) {
    // Slope of delta in x is lambda p'(x) (W1 - W0 + b); the bonus can keep
    // the crossing upward even where the failure posterior overtakes the
    // success posterior (which happens at low cutoffs). Equal-noise posteriors
    // agree only to rounding, hence the small tolerance.
    if (w_of(post.r_success, p) - w_of(post.r_failure, p) + p.b <
        -1e-12 * std::max(1.0, p.kappa)) {
        throw std::invalid_argument(
            "best_response_cutoff: W(r_success) - W(r_failure) + b < 0 breaks single crossing");
    }

    const double noise = scan_noise_floor(p);
    const double step = 2.0 * kBracket / (kScanPoints - 1);

    std::vector<double> values(kScanPoints);
    for (int i = 0; i < kScanPoints; ++i) {
        values[i] = delta(-kBracket + i * step, rho, post, p, mode);
    }

    // A single upward crossing never puts a clearly positive value before a
    // clearly negative one.
    bool seen_positive = false;
    for (int i = 0; i < kScanPoints; ++i) {
        if (values[i] > noise) seen_positive = true;
        else if (seen_positive && values[i] < -noise) {
            throw NonMonotoneError(
                "best_response_cutoff: sign pattern inconsistent with single crossing");
        }
    }

    if (values[kScanPoints - 1] < 0.0) return kInf;   // risky never worthwhile
    if (values[0] > 0.0) return -kInf;                // risky always worthwhile

    // First grid point with delta >= 0 closes the bracket.
    int first_nonneg = 0;
    while (values[first_nonneg] < 0.0) ++first_nonneg;
    if (first_nonneg == 0) return -kBracket;

    double lo = -kBracket + (first_nonneg - 1) * step;
    double hi = lo + step;
    double root = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        root = 0.5 * (lo + hi);
        if (root <= lo || root >= hi) break;  // interval at floating-point resolution
        const double v = delta(root, rho, post, p, mode);
        if (v < 0.0) lo = root;
        else hi = root;
        if (hi - lo <= kRootTol && std::abs(v) <= kRootTol) break;
    }
    return root;
}

double mixture_cdf(double x, Reputation rho, const Primitives& p) {
    if (x == -kInf) return 0.0;
    if (x == kInf) return 1.0;
    const double mu1 = mean_good(p);
    const double mu0 = mean_bad(p);
    const double wh = rho.value();
    const double wl = 1.0 - wh;
    return wh * (p.pi * norm_cdf((x - mu1) / p.sigma_h) +
                 (1.0 - p.pi) * norm_cdf((x - mu0) / p.sigma_h)) +
           wl * (p.pi * norm_cdf((x - mu1) / p.sigma_l) +
                 (1.0 - p.pi) * norm_cdf((x - mu0) / p.sigma_l));
}

double mixture_pdf(double x, Reputation rho, const Primitives& p) {
    return p.pi * mixture_density(x, 1, rho, p) + (1.0 - p.pi) * mixture_density(x, 0, rho, p);
}

double experimentation_rate(double cutoff, Reputation rho, const Primitives& p) {
    if (cutoff == -kInf) return 1.0;
    if (cutoff == kInf) return 0.0;
    const double mu1 = mean_good(p);
    const double mu0 = mean_bad(p);
    const double wh = rho.value();
    const double wl = 1.0 - wh;
    return wh * (p.pi * norm_tail((cutoff - mu1) / p.sigma_h) +
                 (1.0 - p.pi) * norm_tail((cutoff - mu0) / p.sigma_h)) +
           wl * (p.pi * norm_tail((cutoff - mu1) / p.sigma_l) +
                 (1.0 - p.pi) * norm_tail((cutoff - mu0) / p.sigma_l));
}

Posteriors limit_posteriors(bool always_safe, Reputation rho, const Primitives& p) {
    const double rare = p.sigma_h < p.sigma_l ? 0.0 : rho.value();
    Posteriors post;
    if (always_safe) {  // c -> +inf: risky events vanish, safe is sure
        post.r_success = post.r_failure = post.r_unimplemented = rare;
        post.r_safe = rho.value();
    } else {  // c -> -inf: safe vanishes, risky is sure
        post.r_success = post.r_failure = post.r_unimplemented = rho.value();
        post.r_safe = rare;
    }
    return post;
}

bool corner_consistent(bool always_safe, Reputation rho, const Primitives& p, PayoffMode mode) {
    const double corner = always_safe ? kInf : -kInf;
    // delta at x = +-inf is the sup/inf over signals (delta increases in x).
    const double extreme = delta(corner, rho, limit_posteriors(always_safe, rho, p), p, mode);
    return always_safe ? extreme <= 0.0 : extreme >= 0.0;
}

Equilibrium solve_equilibrium(Reputation rho, const Primitives& p, PayoffMode mode) {
    double c = 0.5 * (mean_bad(p) + mean_good(p));
    double prev = std::numeric_limits<double>::quiet_NaN();
    int iterations = 0;

    auto finish = [&](double cutoff) {
        Equilibrium eq;
        eq.cutoff = cutoff;
        eq.posteriors = posteriors_of_cutoff(cutoff, rho, p);
        eq.eps = experimentation_rate(cutoff, rho, p);
        eq.iterations = iterations;
        if (std::isinf(cutoff)) {
            eq.residual = 0.0;  // corner acceptance already verified
        } else {
            const double br = best_response_cutoff(rho, eq.posteriors, p, mode);
            eq.residual = std::isinf(br) ? kInf : std::abs(br - cutoff);
        }
        return eq;
    };

    for (iterations = 1; iterations <= kMaxIterations; ++iterations) {
        const Posteriors post = posteriors_of_cutoff(c, rho, p);
        const double br = best_response_cutoff(rho, post, p, mode);

        if (std::isinf(br) && corner_consistent(br > 0.0, rho, p, mode)) {
            return finish(br);
        }
        if (!std::isinf(br) && !std::isinf(c) && std::abs(br - c) <= kStepTol) {
            return finish(br);
        }

        // First step is undamped (instances without posterior feedback then
        // land in one step); damped averaging is meaningless against a
        // sentinel, so those also take the full step.
        const double next = (iterations == 1 || std::isinf(br) || std::isinf(c))
                                ? br
                                : (1.0 - kDamping) * c + kDamping * br;

        const bool next_matches_prev =
            !std::isnan(prev) &&
            ((std::isinf(next) && std::isinf(prev) && std::signbit(next) == std::signbit(prev)) ||
             (!std::isinf(next) && !std::isinf(prev) && std::abs(next - prev) <= kStepTol));
        const bool next_differs_from_c =
            std::isinf(next) != std::isinf(c) ||
            (!std::isinf(next) && !std::isinf(c) && std::abs(next - c) > 1e-8);
        if (iterations >= 2 && next_matches_prev && next_differs_from_c) {
            throw CycleDetectedError("solve_equilibrium: iterates alternate between " +
                                         std::to_string(next) + " and " + std::to_string(c),
                                     next, c);
        }
        prev = c;
        c = next;
    }

    const double residual = std::isinf(c) ? kInf : std::abs(c - prev);
    throw NoConvergenceError("solve_equilibrium: no fixed point within " +
                                 std::to_string(kMaxIterations) + " iterations",
                             residual, c, prev);
}

} // namespace cceq
