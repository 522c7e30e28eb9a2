// resolvent.hpp - self-energy s_{nn'}(z), its boundary values on the cut, G^{-1} and the
// zero-energy limit g of the reduced resolvent with its lambda^2 expansion

#pragma once

#include "friedrichs/model.hpp"

#include <Eigen/Dense>

#include <vector>

namespace friedrichs {

enum class Branch { Plus, Minus };  // w + i0 and w - i0

struct SelfEnergyMatrix {
    cplx z;
    Eigen::MatrixXcd values;
};

struct BoundaryValues {
    double omega{0.0};
    Eigen::MatrixXcd I;        // principal-value part, Hermitian
    Eigen::MatrixXcd s_plus;   // I - i pi v v^dagger
    Eigen::MatrixXcd s_minus;  // I + i pi v v^dagger
};

struct GZeroExpansion {
    Eigen::MatrixXcd g_exact;             // [diag(w_n) + lambda^2 I(0)]^{-1}
    std::vector<Eigen::MatrixXcd> terms;  // g^(0) .. g^(J)
    double lambda{0.0};

    // sum_{j <= order} lambda^{2j} g^(j)
    Eigen::MatrixXcd partial_sum(std::size_t order) const;
};

// Continuum integrals of one model. Boundary values use a fixed composite Gauss-Legendre rule
// on [0, 4 cut_energy] with the singular point subtracted, a mapped rule for the tail and a
// two-term analytic remainder; as a result I(w) is a smooth function of w. Off the cut the
// integrals are computed adaptively.
class Resolvent {
public:
    explicit Resolvent(ModelSpec spec);

    const ModelSpec& model() const noexcept { return spec_; }
    std::size_t size() const noexcept { return spec_.size(); }

    // max(100 max scale_n, 100 max w_n): upper end of the density integration range.
    double cut_energy() const noexcept { return cut_energy_; }
    // Largest energy accepted by boundary_values.
    double max_boundary_energy() const noexcept { return 0.5 * pv_limit_; }

    SelfEnergyMatrix self_energy(cplx z, double rel_tol = 1e-10) const;
    BoundaryValues boundary_values(double omega) const;
    Eigen::MatrixXcd principal_value(double omega) const;
    const Eigen::MatrixXcd& principal_value_at_zero() const noexcept { return pv_zero_; }
    Eigen::MatrixXcd g_inverse(double omega, Branch branch) const;
    GZeroExpansion g_zero_limit(std::size_t order) const;

private:
    Eigen::MatrixXcd far_tail(cplx z) const;
    Eigen::MatrixXcd mapped_tail(double omega) const;

    ModelSpec spec_;
    double cut_energy_{0.0};
    double pv_limit_{0.0};
    double far_limit_{0.0};
    std::vector<double> breaks_;  // panel boundaries of the main rule
    Eigen::VectorXd nodes_, weights_;
    Eigen::MatrixXcd values_;     // v_n(x_j), N x J
    Eigen::VectorXd tail_nodes_, tail_weights_;
    Eigen::MatrixXcd tail_values_;
    Eigen::MatrixXcd far_amplitude_;  // s_n conj(s_m)
    Eigen::MatrixXd far_exponent_;    // r_n + r_m
    Eigen::MatrixXcd pv_zero_;
};

SelfEnergyMatrix s_matrix(const ModelSpec& spec, cplx z);
BoundaryValues boundary_values(const ModelSpec& spec, double omega);
Eigen::MatrixXcd g_inverse_matrix(const ModelSpec& spec, double omega, Branch branch);
GZeroExpansion g_zero_limit(const ModelSpec& spec, std::size_t order);

}  // namespace friedrichs
