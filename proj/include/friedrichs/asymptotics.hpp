// asymptotics.hpp - the long-time power law A(t) ~ lambda^2 Gamma(2p+1) |<chi|psi>|^2 / (it)^{2p+1},
// the state that maximizes it, its orthogonal complement and the crossover time t_ep.

#pragma once

#include "friedrichs/model.hpp"
#include "friedrichs/resolvent.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace friedrichs {

enum class CoefficientMode { Exact, Perturbative };

std::string_view to_string(CoefficientMode mode) noexcept;

// (it)^{2p+1} is taken as t^{2p+1} exp(i pi (2p+1) / 2).
inline constexpr std::string_view kPhaseConvention = "(it)^(2p+1) = t^(2p+1) exp(i pi (2p+1)/2)";

struct AsymptoteReport {
    double p{0.5};
    double lambda{0.0};
    Eigen::VectorXcd f;  // chi_n = f_n
    double chi_norm_sq{0.0};
    CoefficientMode mode{CoefficientMode::Exact};

    // <chi|psi> = sum_n conj(f_n) c_n
    cplx overlap(const InitialState& state) const;
    // lambda^2 Gamma(2p+1) |<chi|psi>|^2
    double coefficient(const InitialState& state) const;
};

// Builds a report from a given coefficient vector (chi_norm_sq is filled in).
AsymptoteReport make_report(double p, double lambda, Eigen::VectorXcd f, CoefficientMode mode);

// Exact: f = g_exact q~. Perturbative: f_n = q~_n/w_n - lambda^2 sum I_nn'(0) q~_n' / (w_n w_n').
AsymptoteReport asymptote_coeffs(const Resolvent& resolvent, CoefficientMode mode = CoefficientMode::Exact);
AsymptoteReport asymptote_coeffs(const ModelSpec& spec, CoefficientMode mode = CoefficientMode::Exact);

cplx asymptote_eval(const AsymptoteReport& report, const InitialState& state, double t);

// c = f / |f|. Throws DegenerateChi when chi vanishes.
InitialState maximizing_state(const AsymptoteReport& report);

// Orthonormal basis of the states orthogonal to chi: Gram-Schmidt on chi, e_1, ..., e_N in that
// order, dropping chi itself.
std::vector<InitialState> orthogonal_complement(const AsymptoteReport& report);

struct SlaComparison {
    double single_level{0.0};  // lambda^2 Gamma(2p+1) |q_1|^2 / w_1^2
    double exact{0.0};         // lambda^2 Gamma(2p+1) |f_1|^2 with the N-level exact f
    double deviation{0.0};     // |exact / single_level - 1|
};

// Asymptote coefficient of c = (1, 0, ..., 0) with and without the higher levels.
SlaComparison sla_comparison(const Resolvent& resolvent);
SlaComparison sla_comparison(const ModelSpec& spec);

enum class CrossoverMode { Full, Approximate };

std::string_view to_string(CrossoverMode mode) noexcept;

struct CrossoverResult {
    double t_ep{0.0};
    CrossoverMode mode{CrossoverMode::Full};
    std::vector<double> roots;  // every crossing found in the scan, ascending
    double window_lo{0.0}, window_hi{0.0};
};

// Largest t where the exponential era meets the asymptote, scanning log t over
// [1e-2, 1e4] / gamma_N and bisecting to 1e-6 relative.
//   Full:        |sum_n |c_n|^2 exp(-i w_n t - gamma_n t/2)|^2 = |A_asym(t)|^2
//   Approximate: |c_N|^4 exp(-gamma_N t) = |A_asym(t)|^2
// Throws NoRoot when the curves do not cross in the window.
CrossoverResult crossover_time(std::span<const double> omegas, const InitialState& state,
                               std::span<const double> gammas, const AsymptoteReport& report,
                               CrossoverMode mode);
CrossoverResult crossover_time(const ModelSpec& spec, const InitialState& state, std::span<const double> gammas,
                               const AsymptoteReport& report, CrossoverMode mode);

struct SchwarzSample {
    double coefficient{0.0};
    double deficit{0.0};  // 1 - |<chi^|psi>|^2
};

struct SchwarzSweep {
    double maximum{0.0};  // coefficient of the maximizing state
    std::vector<SchwarzSample> samples;
    std::uint64_t seed{0};
};

// Coefficients of `count` random unit states (complex Gaussian components). Sample k uses its
// own generator seeded from (seed, k), so results do not depend on the thread count.
SchwarzSweep schwarz_sweep(const AsymptoteReport& report, std::size_t count, std::uint64_t seed);

}  // namespace friedrichs
