// spectral.hpp - scattering amplitudes F_n(w), the spectral density |<psi_w|psi>|^2 and the
// decaying survival amplitude A(t) = int_0^inf e^{-i t w} density(w) dw

#pragma once

#include "friedrichs/model.hpp"
#include "friedrichs/resolvent.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

namespace friedrichs {

// Solves G^{-1}(w +- i0) F = -lambda v(w) by LU with partial pivoting.
// Throws SingularSystem when the reciprocal condition estimate drops below 1e-12.
Eigen::VectorXcd solve_F(const Resolvent& resolvent, double omega, Branch branch);
Eigen::VectorXcd solve_F(const ModelSpec& spec, double omega, Branch branch);

// <psi_w^(branch)|psi> = sum_n conj(F_n) c_n
cplx scattering_overlap(const Resolvent& resolvent, const InitialState& state, double omega,
                        Branch branch = Branch::Plus);

struct SpectralDensitySamples {
    std::vector<double> grid;
    std::vector<double> density;
    std::vector<cplx> overlap;  // branch +
};

SpectralDensitySamples spectral_density(const Resolvent& resolvent, const InitialState& state,
                                        std::span<const double> grid);
SpectralDensitySamples spectral_density(const ModelSpec& spec, const InitialState& state,
                                        std::span<const double> grid);

struct DensityOptions {
    std::size_t order{24};          // Gauss-Legendre points per panel
    double rel_tol{1e-13};          // Legendre tail relative to the panel maximum
    double abs_tol{1e-17};          // or: panel width times tail below this
    std::size_t max_panels{20000};
    double omega_min{0.0};          // first panel [0, omega_min]; 0 selects 1e-8 w_1
    double t_max{0.0};              // largest time to be evaluated; shrinks omega_min if needed
};

// The density of one state on [0, cut_energy] as piecewise Legendre series on adaptively
// refined panels: graded geometrically towards w = 0, bisected until the series tails are
// negligible. Fourier moments of each panel are exact (spherical Bessel functions), so A(t) is
// a Filon-type quadrature whose cost does not grow with t.
class DensityTable {
public:
    DensityTable(const Resolvent& resolvent, const InitialState& state, const DensityOptions& options = {});

    // int_0^cut e^{-i t w} density(w) dw
    cplx fourier(double t) const;
    // int_0^cut density(w) dw
    double total() const;
    // bound on int_cut^inf density(w) dw from the large-energy decay
    double tail_error() const noexcept { return tail_error_; }
    // false when refinement stopped at the panel budget
    bool complete() const noexcept { return complete_; }

    // Panel nodes and density values, ascending.
    SpectralDensitySamples samples() const;
    std::size_t panel_count() const noexcept { return panels_.size(); }
    double omega_min() const noexcept { return first_width_; }

private:
    struct Panel {
        double a, b;
        std::vector<double> nodes;
        std::vector<double> values;
        std::vector<cplx> overlap;
        std::vector<double> legendre;  // coefficients of the density
    };

    void evaluate(const Resolvent& resolvent, Panel& panel) const;
    bool accepted(const Panel& panel) const;

    InitialState state_;
    DensityOptions options_;
    double exponent_{0.0};       // leading small-energy exponent 2p of the density
    double first_width_{0.0};
    double first_value_{0.0};    // density at first_width_
    std::vector<Panel> panels_;
    double tail_error_{0.0};
    bool complete_{true};
};

struct SurvivalSeries {
    std::vector<double> times;
    std::vector<cplx> amplitude;
    std::vector<double> probability;
    double tail_error{0.0};  // absolute bound on the neglected high-energy part
    bool complete{true};
};

SurvivalSeries survival_amplitude(const Resolvent& resolvent, const InitialState& state,
                                  std::span<const double> times, DensityOptions options = {});
SurvivalSeries survival_amplitude(const ModelSpec& spec, const InitialState& state,
                                  std::span<const double> times);

// Fermi golden rule gamma_n = 2 pi lambda^2 |v_n(w_n)|^2 (n is 0-based).
double decay_rate(const ModelSpec& spec, std::size_t n);
std::vector<double> decay_rates(const ModelSpec& spec);

// A(t) ~ sum_n |c_n|^2 exp(-i t w_n - t gamma_n / 2)
SurvivalSeries exponential_era(std::span<const double> omegas, const InitialState& state,
                               std::span<const double> gammas, std::span<const double> times);
SurvivalSeries exponential_era(const ModelSpec& spec, const InitialState& state,
                               std::span<const double> times,
                               std::optional<std::vector<double>> gammas = std::nullopt);

}  // namespace friedrichs
