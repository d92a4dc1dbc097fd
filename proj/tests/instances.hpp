// Named model instances shared between the unit and acceptance suites.
//
// The reference default set exercises the Bayesian machinery, but several
// results need instances inside the regimes where their premises hold:
//
//  - calibration_instance: equal ability noise. Posterior feedback on the
//    trial cutoff vanishes, so the bonus -> experimentation map has a unique
//    selected equilibrium per bonus and every target round-trips.
//  - conservatism_instance: constant implementation intensity with a mild
//    noise spread. The drift of the return to risky is negative across the
//    whole reputation grid, cutoffs rise with reputation, and interior
//    equilibria exist from rho ~ 0.25 on.
//  - gatekeeping_instance: high constant intensity plus a bonus, so the
//    stringency sweep starts interior and corners out monotonically.

#pragma once

#include "cceq/primitives.hpp"

namespace instances {

inline cceq::Primitives calibration_instance() {
    cceq::Primitives p = cceq::default_primitives();
    p.sigma_l = p.sigma_h;
    return p;
}

inline cceq::Primitives conservatism_instance() {
    cceq::Primitives p = cceq::default_primitives();
    p.lambda_min = 0.75;
    p.lambda_max = 0.75;
    p.sigma_l = 0.6;
    p.b = 0.4;
    return p;
}

inline cceq::Primitives gatekeeping_instance() {
    cceq::Primitives p = cceq::default_primitives();
    p.lambda_min = 0.9;
    p.lambda_max = 0.9;
    p.sigma_l = 0.65;
    p.b = 0.5;
    return p;
}

} // namespace instances
