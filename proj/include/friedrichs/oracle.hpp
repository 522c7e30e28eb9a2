// oracle.hpp - brute-force check: the continuum replaced by M Gauss-Legendre modes, the finite
// Hamiltonian diagonalized and propagated exactly.

#pragma once

#include "friedrichs/model.hpp"
#include "friedrichs/spectral.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace friedrichs::oracle {

struct DiscretizedHamiltonian {
    std::size_t levels{0};
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
    double omega_max{0.0};
    // diag(w_n) (+) diag(w_j), coupled by lambda v_n(w_j) sqrt(weight_j)
    Eigen::MatrixXcd matrix;

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
    std::size_t modes() const noexcept { return static_cast<std::size_t>(nodes.size()); }
    // 2 pi M / omega_max: beyond this the discrete spectrum revives
    double heisenberg_time() const noexcept;
};

DiscretizedHamiltonian discretize(const ModelSpec& spec, std::size_t modes, double omega_max);

class Propagator {
public:
    explicit Propagator(const DiscretizedHamiltonian& hamiltonian);

    // A(t) = sum_k |<e_k|psi>|^2 exp(-i t E_k) for a state on the discrete levels
    SurvivalSeries propagate(const InitialState& state, std::span<const double> times) const;
    // sum_k |<e_k|psi>|^2
    double unitarity(const InitialState& state) const;
    const Eigen::VectorXd& energies() const noexcept { return energies_; }

private:
    Eigen::VectorXd weights_for(const InitialState& state) const;

    std::size_t levels_;
    Eigen::VectorXd energies_;
    Eigen::MatrixXcd discrete_rows_;  // first `levels` rows of the eigenvector matrix
};

SurvivalSeries propagate(const DiscretizedHamiltonian& hamiltonian, const InitialState& state,
                         std::span<const double> times);

struct Comparison {
    std::vector<double> times;
    std::vector<cplx> spectral;
    std::vector<cplx> oracle;
    double max_abs_difference{0.0};
    double heisenberg_time{0.0};
    std::size_t modes{0};
    double omega_max{0.0};
};

// Spectral A(t) against the discretized model. Throws Validation if any time reaches the
// Heisenberg time of the discretization.
Comparison compare(const ModelSpec& spec, const InitialState& state, std::span<const double> times,
                   std::size_t modes, double omega_max);

struct BoundStateReport {
    std::vector<double> grid;
    std::vector<double> determinant;       // det G^{-1}(x), real for x < 0
    std::vector<double> sign_changes;      // grid midpoints where the determinant changes sign
    double min_eigenvalue_at_threshold{0.0};  // of diag(w_n) + lambda^2 I(0)
    std::vector<double> completeness;      // int density for each canonical basis state
    double completeness_tolerance{1e-3};

    bool bound_state_suspected() const;
};

// G^{-1}(x) is decreasing in x below threshold, so a bound state shows up as a sign change of the
// determinant on [-10 w_N, -1e-6 w_1] or a negative eigenvalue at x = 0^-.
BoundStateReport no_bound_state_check(const ModelSpec& spec, double rel_tol = 1e-10);

}  // namespace friedrichs::oracle
