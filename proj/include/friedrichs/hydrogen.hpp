// hydrogen.hpp - the np series of hydrogen: level energies, Bethe decay rates, threshold
// amplitudes, the level-number table and a calibrated cutoff model for full simulations.

#pragma once

#include "friedrichs/model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace friedrichs::hydrogen {

inline constexpr double kOmega = 1.55e16;   // s^-1
inline constexpr double kLambda = 6.43e-9;
inline constexpr double kRatePrefactor = 8.0e9;  // s^-1

struct CutoffPolicy {
    double r{2.5};
    // fraction of the Bethe rate reproduced by 2 pi lambda^2 |v_n(w_n)|^2; the rate only
    // reaches the full value as the cutoff goes to infinity
    double target_fraction{0.995};
};

struct SeriesSpec {
    std::size_t levels{1};
    double omega{kOmega};
    double lambda{kLambda};
    CutoffPolicy cutoff{};
};

struct SeriesParams {
    double omega{0.0};               // (4/3) Omega (1 - (n+1)^-2)
    double gamma{0.0};               // Bethe rate of the (n+1)p state
    double lam_q_over_omega_sq{0.0}; // lambda^2 |q_n / w_n|^2, s^2
};

// n >= 1 labels the (n+1)p state. Evaluated in log space.
SeriesParams series_params(std::size_t n, double omega = kOmega);

struct TableRow {
    std::size_t levels{0};
    double ratio{0.0};       // sum_{n<=N} |q_n/w_n|^2 / |q_1/w_1|^2
    double t_N{0.0};         // 1 / gamma_N
    double t_ep{0.0};        // approximate crossover with the leading-order maximizer
    double t_ep_full{0.0};   // full exponential-era crossover, same state
    double survival_at_crossover{0.0};  // |c_N|^4 exp(-gamma_N t_ep)
};

// Closed forms only; the cutoff model is not involved.
std::vector<TableRow> reproduce_table(std::span<const std::size_t> level_counts, double omega = kOmega,
                                      double lambda = kLambda);

// Cutoff family with p = 1/2, real positive q_n and Lambda_n solved so that the golden-rule rate
// equals target_fraction times the Bethe rate. Throws CalibrationFailure when no cutoff in
// [w_n, 1e6 w_n] works.
ModelSpec build_model(const SeriesSpec& spec);
ModelSpec build_model(std::size_t levels);

// Bethe rates gamma_1..gamma_N.
std::vector<double> bethe_rates(std::size_t levels);

}  // namespace friedrichs::hydrogen
