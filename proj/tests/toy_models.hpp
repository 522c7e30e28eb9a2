// Shared fixtures: small models with closed-form or well-understood behaviour.
#pragma once

#include "friedrichs/model.hpp"

#include <cmath>
#include <complex>

namespace toy {

using friedrichs::cplx;
using friedrichs::FormFactor;
using friedrichs::LevelSpec;
using friedrichs::ModelSpec;

// One level at w1 with v(w)^2 = w/(1+w)^4 (p = 1/2, r = 3/2, q = cutoff = 1).
inline ModelSpec single_level(double lambda, double omega1 = 1.0) {
    ModelSpec m;
    m.lambda = lambda;
    m.levels.push_back({omega1, FormFactor::power_law_cutoff(1.0, 0.5, 1.5, 1.0)});
    return m;
}

// Closed-form s(z) = int_0^inf w/((1+w)^4 (z-w)) dw by partial fractions.
inline cplx single_level_s(cplx z) {
    if (std::abs(z + 1.0) < 1e-6) return -1.0 / 12.0;
    const cplx num = z * z * z / 6.0 + z * z + z * std::log(-z) + z / 2.0 - 1.0 / 3.0;
    return num / std::pow(1.0 + z, 4);
}

// Principal value I(w) of the same integral for real w > 0.
inline double single_level_I(double w) {
    return (w * w * w / 6.0 + w * w + w * std::log(w) + w / 2.0 - 1.0 / 3.0) / std::pow(1.0 + w, 4);
}

// Two levels with broad resonances (gamma ~ 0.4-0.8) at lambda = 1e-2: the power-law era is
// reached at moderate times and the discretised oracle resolves it.
inline ModelSpec two_level_broad(double lambda = 1e-2) {
    ModelSpec m;
    m.lambda = lambda;
    m.levels.push_back({1.0, FormFactor::power_law_cutoff(60.0, 0.5, 1.5, 3.0)});
    m.levels.push_back({1.6, FormFactor::power_law_cutoff(cplx{40.0, 10.0}, 0.5, 1.5, 4.0)});
    return m;
}

// Two levels with narrow resonances: Fermi-golden-rule exponential era over many lifetimes.
inline ModelSpec two_level_weak(double lambda = 1e-2) {
    ModelSpec m;
    m.lambda = lambda;
    m.levels.push_back({1.0, FormFactor::power_law_cutoff(4.0, 0.5, 1.5, 3.0)});
    m.levels.push_back({1.6, FormFactor::power_law_cutoff(3.0, 0.5, 1.5, 4.0)});
    return m;
}

}  // namespace toy
