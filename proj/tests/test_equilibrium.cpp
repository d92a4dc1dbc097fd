#include "cceq/equilibrium.hpp"

#include "instances.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace cceq;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense-grid sign-change scan followed by local bisection; the reference root
// finder for best_response_cutoff.
double scan_root(Reputation rho, const Posteriors& post, const Primitives& p, PayoffMode mode,
                 double lo, double hi) {
    const double step = 1e-4;
    double prev_x = lo;
    double prev_v = delta(lo, rho, post, p, mode);
    for (double x = lo + step; x <= hi; x += step) {
        const double v = delta(x, rho, post, p, mode);
        if (prev_v < 0.0 && v >= 0.0) {
            double a = prev_x, b = x;
            for (int i = 0; i < 100; ++i) {
                const double mid = 0.5 * (a + b);
                if (delta(mid, rho, post, p, mode) < 0.0) a = mid;
                else b = mid;
            }
            return 0.5 * (a + b);
        }
        prev_x = x;
        prev_v = v;
    }
    return std::nan("");
}

} // namespace

TEST_CASE("delta limits match the boundary formulas") {
    Primitives p = default_primitives();
    p.b = 0.5;
    const Reputation rho(0.6);
    // posteriors from a high trial cutoff: the failure posterior has collapsed,
    // so the textbook limit -W(r_safe) coincides with the exact arithmetic
    // lambda W(r_failure) - W(r_safe) to well below 1e-8
    const Posteriors post = posteriors_of_cutoff(4.0, rho, p);
    const double lam = lambda_of(0.6, p);

    const double low = delta(-60.0, rho, post, p, PayoffMode::Baseline);
    CHECK(low == doctest::Approx(-w_of(post.r_safe, p)).epsilon(1e-8));
    CHECK(low ==
          doctest::Approx(lam * w_of(post.r_failure, p) - w_of(post.r_safe, p)).epsilon(1e-12));
    CHECK(low < 0.0);

    const double high = delta(60.0, rho, post, p, PayoffMode::Baseline);
    CHECK(high == doctest::Approx(lam * w_of(post.r_success, p) - w_of(post.r_safe, p) +
                                  p.b * lam)
                      .epsilon(1e-8));
}

TEST_CASE("extended mode credits the unimplemented branch") {
    Primitives p = default_primitives();
    p.b = 0.5;
    const Reputation rho(0.6);
    const Posteriors post = posteriors_of_cutoff(0.5, rho, p);
    const double lam = lambda_of(0.6, p);
    const double gap = delta(0.7, rho, post, p, PayoffMode::Extended) -
                       delta(0.7, rho, post, p, PayoffMode::Baseline);
    CHECK(gap == doctest::Approx((1.0 - lam) * w_of(post.r_unimplemented, p)).epsilon(1e-12));
}

TEST_CASE("delta slope matches central differences") {
    Primitives p = default_primitives();
    p.b = 0.5;
    const Reputation rho(0.6);
    const Posteriors post = posteriors_of_cutoff(0.5, rho, p);
    for (double x : {-0.5, 0.0, 0.5, 1.0}) {
        const double h = 1e-5;
        const double fd = (delta(x + h, rho, post, p, PayoffMode::Baseline) -
                           delta(x - h, rho, post, p, PayoffMode::Baseline)) /
                          (2 * h);
        const double analytic = delta_slope(x, rho, post, p, PayoffMode::Baseline);
        CHECK(analytic == doctest::Approx(fd).epsilon(1e-6));
        // the closed form itself
        const double direct = lambda_of(0.6, p) * success_prob_dx(x, rho, p) *
                              (w_of(post.r_success, p) - w_of(post.r_failure, p) + p.b);
        CHECK(analytic == doctest::Approx(direct).epsilon(1e-14));
    }
}

TEST_CASE("best response with equal posteriors and no bonus is always safe") {
    Primitives p = default_primitives();  // b = 0
    const Reputation rho(0.6);
    const Posteriors post{0.6, 0.6, 0.6, 0.6};
    CHECK(best_response_cutoff(rho, post, p, PayoffMode::Baseline) == kInf);
}

TEST_CASE("best response root agrees with the dense-grid scan oracle") {
    Primitives p = default_primitives();
    p.b = 0.5;
    const Reputation rho(0.6);
    const Posteriors post = posteriors_of_cutoff(0.5, rho, p);
    const double root = best_response_cutoff(rho, post, p, PayoffMode::Baseline);
    REQUIRE(std::isfinite(root));
    const double reference = scan_root(rho, post, p, PayoffMode::Baseline, -10.0, 10.0);
    REQUIRE(std::isfinite(reference));
    CHECK(root == doctest::Approx(reference).epsilon(1e-6));
    CHECK(std::abs(delta(root, rho, post, p, PayoffMode::Baseline)) <= 1e-12);
}

TEST_CASE("best response rejects a downward-sloping payoff gap") {
    const Primitives p = default_primitives();  // b = 0
    const Posteriors post{0.2, 0.9, 0.5, 0.5};  // failure posterior above success
    CHECK_THROWS_AS(best_response_cutoff(Reputation(0.5), post, p, PayoffMode::Baseline),
                    std::invalid_argument);
}

TEST_CASE("scan flags a non-single-crossing payoff gap") {
    // noise ratio far outside the monotone-evidence region
    Primitives p = default_primitives();
    p.sigma_h = 0.35;
    p.sigma_l = 1.2;
    p.b = 0.5;
    const Reputation rho(0.6);
    const Posteriors post = posteriors_of_cutoff(0.5, rho, p);
    CHECK_THROWS_AS(best_response_cutoff(rho, post, p, PayoffMode::Baseline), NonMonotoneError);
}

TEST_CASE("delta is strictly increasing for fixed posteriors") {
    oracle::TestRng rng(31);
    int checked = 0;
    while (checked < 15) {
        const Primitives p = validate(oracle::random_primitives(rng));
        const Reputation rho(rng.uniform(0.1, 0.9));
        const Posteriors post =
            posteriors_of_cutoff(0.5 * (mean_bad(p) + mean_good(p)), rho, p);
        if (w_of(post.r_success, p) - w_of(post.r_failure, p) + p.b <= 0.0) continue;
        ++checked;
        const double lo = mean_bad(p) - 4.0 * p.sigma_l;
        const double hi = mean_good(p) + 4.0 * p.sigma_l;
        double prev = -kInf;
        int sign_changes = 0;
        bool was_negative = true;
        for (int i = 0; i <= 500; ++i) {
            const double x = lo + (hi - lo) * i / 500.0;
            const double v = delta(x, rho, post, p, PayoffMode::Baseline);
            CHECK(v > prev);
            prev = v;
            if (was_negative && v > 0.0) {
                ++sign_changes;
                was_negative = false;
            } else if (!was_negative && v < 0.0) {
                ++sign_changes;
                was_negative = true;
            }
        }
        CHECK(sign_changes <= 1);
    }
}

TEST_CASE("solve with no posterior feedback lands in two iterations") {
    Primitives p = default_primitives();
    p.sigma_l = p.sigma_h;  // posteriors pinned at the prior
    p.b = 1.2;              // enough bonus for an interior cutoff
    const Reputation rho(0.6);
    const Equilibrium eq = solve_equilibrium(rho, p, PayoffMode::Baseline);
    REQUIRE(std::isfinite(eq.cutoff));
    CHECK(eq.iterations <= 2);
    const Posteriors pinned{0.6, 0.6, 0.6, 0.6};
    CHECK(eq.cutoff ==
          doctest::Approx(best_response_cutoff(rho, pinned, p, PayoffMode::Baseline))
              .epsilon(1e-12));
    CHECK(eq.residual <= 1e-9);
}

TEST_CASE("solve self-consistency at an interior equilibrium") {
    const Primitives p = instances::conservatism_instance();
    const Reputation rho(0.5);
    const Equilibrium eq = solve_equilibrium(rho, p, PayoffMode::Baseline);
    REQUIRE(std::isfinite(eq.cutoff));
    const double br = best_response_cutoff(rho, eq.posteriors, p, PayoffMode::Baseline);
    CHECK(std::abs(br - eq.cutoff) <= 1e-8);
    CHECK(eq.residual <= 1e-9);
    CHECK(std::abs(delta(eq.cutoff, rho, eq.posteriors, p, PayoffMode::Baseline)) <= 1e-10);
}

TEST_CASE("reference instance with b = 0.5 selects the always-safe corner") {
    // The feedback loop has no interior fixed point here: raising the trial
    // cutoff makes the safe posterior better and the success posterior worse,
    // so the best response escalates until risky is never worthwhile. The
    // corner is an equilibrium against the limiting beliefs.
    Primitives p = default_primitives();
    p.b = 0.5;
    const Reputation rho(0.6);
    const Equilibrium eq = solve_equilibrium(rho, p, PayoffMode::Baseline);
    CHECK(eq.cutoff == kInf);
    CHECK(eq.eps == 0.0);
    CHECK(eq.residual == 0.0);
    CHECK(corner_consistent(true, rho, p, PayoffMode::Baseline));
    // reported posteriors keep the off-path prior convention
    CHECK(eq.posteriors.r_success == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(eq.posteriors.r_safe == doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("huge bonus drives the solve to the always-risky corner") {
    Primitives p = default_primitives();
    p.b = 1e6;
    const Reputation rho(0.6);
    const Equilibrium eq = solve_equilibrium(rho, p, PayoffMode::Baseline);
    CHECK(eq.cutoff == -kInf);
    CHECK(eq.eps == 1.0);
    CHECK(corner_consistent(false, rho, p, PayoffMode::Baseline));
}

TEST_CASE("limit posteriors degrade rare events only under a noise spread") {
    const Primitives spread = default_primitives();
    const Reputation rho(0.6);
    const Posteriors safe_corner = limit_posteriors(true, rho, spread);
    CHECK(safe_corner.r_success == 0.0);
    CHECK(safe_corner.r_failure == 0.0);
    CHECK(safe_corner.r_safe == 0.6);
    const Posteriors risky_corner = limit_posteriors(false, rho, spread);
    CHECK(risky_corner.r_success == 0.6);
    CHECK(risky_corner.r_safe == 0.0);

    Primitives equal = spread;
    equal.sigma_l = equal.sigma_h;
    const Posteriors uninformative = limit_posteriors(true, rho, equal);
    CHECK(uninformative.r_success == 0.6);
    CHECK(uninformative.r_safe == 0.6);
}

TEST_CASE("experimentation rate endpoints and midpoint symmetry") {
    const Primitives p = default_primitives();
    const Reputation rho(0.6);
    CHECK(experimentation_rate(-kInf, rho, p) == 1.0);
    CHECK(experimentation_rate(kInf, rho, p) == 0.0);
    // pi = 1/2 makes the mixture symmetric about the mean midpoint
    CHECK(experimentation_rate(0.5, rho, p) == doctest::Approx(0.5).epsilon(1e-14));
    Primitives narrow = p;
    narrow.sigma_h = 0.3;
    narrow.sigma_l = 0.45;
    CHECK(experimentation_rate(0.5, Reputation(0.23), narrow) ==
          doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("experimentation rate is weakly decreasing in the cutoff") {
    oracle::TestRng rng(61);
    for (int k = 0; k < 10; ++k) {
        const Primitives p = validate(oracle::random_primitives(rng));
        const Reputation rho(rng.uniform(0.1, 0.9));
        double prev = 2.0;
        for (double c = -8.0; c <= 8.01; c += 0.25) {
            const double eps = experimentation_rate(c, rho, p);
            CHECK(eps <= prev + 1e-15);
            CHECK(eps >= 0.0);
            CHECK(eps <= 1.0);
            prev = eps;
        }
    }
}

TEST_CASE("experimentation rate equals one minus the quadrature mixture CDF") {
    const Primitives p = instances::conservatism_instance();
    const Reputation rho(0.5);
    const Equilibrium eq = solve_equilibrium(rho, p, PayoffMode::Baseline);
    REQUIRE(std::isfinite(eq.cutoff));
    CHECK(eq.eps == doctest::Approx(1.0 - oracle::mixture_cdf(eq.cutoff, 0.5, p)).epsilon(1e-8));
    CHECK(mixture_cdf(eq.cutoff, rho, p) ==
          doctest::Approx(oracle::mixture_cdf(eq.cutoff, 0.5, p)).epsilon(1e-10));
}

TEST_CASE("solved eps always matches the mixture tail") {
    oracle::TestRng rng(90);
    for (int k = 0; k < 25; ++k) {
        double rho_value = 0.0;
        const Primitives p = validate(oracle::random_interior_primitives(rng, rho_value));
        const Reputation rho(rho_value);
        Equilibrium eq;
        try {
            eq = solve_equilibrium(rho, p, PayoffMode::Baseline);
        } catch (const std::exception&) {
            continue;
        }
        CHECK(eq.eps ==
              doctest::Approx(experimentation_rate(eq.cutoff, rho, p)).epsilon(1e-14));
        if (std::isfinite(eq.cutoff)) CHECK(eq.residual <= 1e-9);
    }
}
