#include "cceq/primitives.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace cceq;

TEST_CASE("validate accepts the reference default set") {
    const Primitives p = default_primitives();
    CHECK_NOTHROW(validate(p));
    CHECK(p.pi == 0.5);
    CHECK(p.sigma_l == 1.0);
    CHECK(p.lambda_max == 0.8);
}

TEST_CASE("validate names the offending field") {
    Primitives p = default_primitives();

    SUBCASE("mu1 must exceed mu0") {
        p.mu1 = p.mu0 = 0.0;
        CHECK_THROWS_WITH_AS(validate(p), "mu1 must exceed mu0", ValidationError);
    }
    SUBCASE("pi on the boundary") {
        p.pi = 1.0;
        CHECK_THROWS_WITH_AS(validate(p), "pi must lie strictly inside (0,1)", ValidationError);
    }
    SUBCASE("nonpositive sigma_h") {
        p.sigma_h = 0.0;
        CHECK_THROWS_AS(validate(p), ValidationError);
    }
    SUBCASE("sigma_l below sigma_h") {
        p.sigma_l = 0.2;
        CHECK_THROWS_AS(validate(p), ValidationError);
    }
    SUBCASE("negative bonus") {
        p.b = -0.1;
        CHECK_THROWS_AS(validate(p), ValidationError);
    }
    SUBCASE("negative gatekeeping") {
        p.t_gate = -1e-9;
        CHECK_THROWS_AS(validate(p), ValidationError);
    }
    SUBCASE("lambda_max above one") {
        p.lambda_max = 1.01;
        CHECK_THROWS_AS(validate(p), ValidationError);
    }
    SUBCASE("lambda endpoints out of order") {
        p.lambda_min = 0.9;
        CHECK_THROWS_AS(validate(p), ValidationError);
    }
    SUBCASE("non-finite field") {
        p.theta = std::nan("");
        CHECK_THROWS_AS(validate(p), ValidationError);
    }
}

TEST_CASE("validate is idempotent") {
    const Primitives p = default_primitives();
    const Primitives once = validate(p);
    const Primitives twice = validate(once);
    CHECK(once.pi == twice.pi);
    CHECK(once.mu0 == twice.mu0);
    CHECK(once.mu1 == twice.mu1);
    CHECK(once.sigma_h == twice.sigma_h);
    CHECK(once.sigma_l == twice.sigma_l);
    CHECK(once.theta == twice.theta);
    CHECK(once.kappa == twice.kappa);
    CHECK(once.b == twice.b);
    CHECK(once.t_gate == twice.t_gate);
    CHECK(once.lambda_min == twice.lambda_min);
    CHECK(once.lambda_max == twice.lambda_max);
}

TEST_CASE("Reputation rejects the boundary") {
    CHECK_NOTHROW(Reputation(0.5));
    CHECK_NOTHROW(Reputation(1e-12));
    CHECK_THROWS_AS(Reputation(0.0), ValidationError);
    CHECK_THROWS_AS(Reputation(1.0), ValidationError);
    CHECK_THROWS_AS(Reputation(-0.2), ValidationError);
    CHECK_THROWS_AS(Reputation(std::nan("")), ValidationError);
}

TEST_CASE("lambda_of endpoints and gatekeeping") {
    const Primitives p = default_primitives();
    CHECK(lambda_of(0.0, p) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(lambda_of(1.0, p) == doctest::Approx(0.8).epsilon(1e-15));

    Primitives gated = p;
    gated.t_gate = std::log(2.0);
    CHECK(lambda_of(0.5, gated) == doctest::Approx(0.25).epsilon(1e-14));

    CHECK_THROWS_AS(lambda_of(-0.1, p), std::domain_error);
    CHECK_THROWS_AS(lambda_of(1.1, p), std::domain_error);
}

TEST_CASE("lambda_of is monotone in rho and t_gate and stays in [0,1]") {
    oracle::TestRng rng(101);
    for (int k = 0; k < 20; ++k) {
        const Primitives p = validate(oracle::random_primitives(rng));
        double prev = -1.0;
        for (int i = 0; i <= 50; ++i) {
            const double rho = i / 50.0;
            const double lam = lambda_of(rho, p);
            CHECK(lam >= 0.0);
            CHECK(lam <= 1.0);
            CHECK(lam >= prev - 1e-15);
            prev = lam;

            Primitives stricter = p;
            stricter.t_gate += 0.5;
            CHECK(lambda_of(rho, stricter) <= lam + 1e-15);
        }
    }
}

TEST_CASE("w_of is the linear reputational payoff") {
    Primitives p = default_primitives();
    CHECK(w_of(0.7, p) == doctest::Approx(0.7).epsilon(1e-15));
    p.kappa = 2.0;
    CHECK(w_of(0.7, p) == doctest::Approx(1.4).epsilon(1e-15));
    CHECK(w_of(0.0, p) == 0.0);
    CHECK_THROWS_AS(w_of(-0.01, p), std::domain_error);
    CHECK_THROWS_AS(w_of(1.01, p), std::domain_error);
}

TEST_CASE("w_of is strictly increasing when kappa > 0") {
    const Primitives p = default_primitives();
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
        const double w = w_of(i / 100.0, p);
        CHECK(w > prev);
        prev = w;
    }
}

TEST_CASE("theta scales the mean separation about the midpoint") {
    Primitives p = default_primitives();
    CHECK(mean_bad(p) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(mean_good(p) == doctest::Approx(1.0).epsilon(1e-15));
    p.theta = 2.0;
    CHECK(mean_bad(p) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(mean_good(p) == doctest::Approx(1.5).epsilon(1e-15));
    // midpoint is theta-invariant
    CHECK(0.5 * (mean_bad(p) + mean_good(p)) == doctest::Approx(0.5).epsilon(1e-15));
}
