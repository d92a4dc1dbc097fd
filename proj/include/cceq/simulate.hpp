#pragma once

#include "cceq/equilibrium.hpp"
#include "cceq/primitives.hpp"

#include <cstdint>
#include <vector>

namespace cceq {

/// One Monte Carlo run: n_experts independent one-episode experts at each
/// reputation value. Identical configs produce bit-identical outcomes.
struct SimConfig {
    std::int64_t n_experts = 1;
    std::vector<double> rho_values;
    std::uint64_t seed = 0;
    Primitives primitives;
    PayoffMode mode = PayoffMode::Baseline;
};

/// Tallies for one reputation cell, plus the solved equilibrium quantities
/// the draws were generated from.
struct SimCell {
    double rho = 0.0;
    double cutoff = 0.0;
    double lambda = 0.0;
    double analytic_eps = 0.0;
    std::int64_t n = 0;
    std::int64_t n_risky = 0;
    std::int64_t n_implemented = 0;
    std::int64_t n_success = 0;
    std::int64_t n_failure = 0;
    std::int64_t n_safe = 0;
    double emp_eps = 0.0;       // n_risky / n
    double emp_hit_rate = 0.0;  // n_success / max(n_implemented, 1)
    double mean_posterior = 0.0;
};

struct SimOutcome {
    std::uint64_t seed = 0;
    std::vector<SimCell> cells;
};

bool operator==(const SimCell& a, const SimCell& b);
bool operator==(const SimOutcome& a, const SimOutcome& b);

/// Simulates every cell: per expert, draw ability (high w.p. rho), state
/// (good w.p. pi), a signal from the matching normal, recommend risky iff the
/// signal clears the solved cutoff, implement w.p. lambda(rho), outcome =
/// state. Each expert consumes a fixed block of its own substream.
SimOutcome run_sim(const SimConfig& cfg);

enum class MonotoneFlag { Holds, Fails, NotApplicable };

struct PredictionRow {
    double rho = 0.0;
    double emp_eps = 0.0;
    double se_eps = 0.0;
    double emp_hit_rate = 0.0;
    double se_hit = 0.0;
    bool rd_verified = false;  // reputation lies in the drift-verified sub-grid
};

/// Selection-on-risk report: empirical experimentation and conditional hit
/// rates across reputations with binomial standard errors. Monotonicity flags
/// are evaluated only across rd-verified rows (the conditional region of the
/// conservatism result); with fewer than two verified rows they are
/// NotApplicable. A pairwise move within 4 combined standard errors of zero
/// does not break a flag.
struct PredictionReport {
    std::vector<PredictionRow> rows;
    MonotoneFlag eps_nonincreasing = MonotoneFlag::NotApplicable;
    MonotoneFlag hit_nondecreasing = MonotoneFlag::NotApplicable;
};

PredictionReport prediction_report(const SimOutcome& outcome, const Primitives& p,
                                   PayoffMode mode);

} // namespace cceq
