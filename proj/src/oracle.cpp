#include "friedrichs/oracle.hpp"

#include "friedrichs/error.hpp"
#include "friedrichs/parallel.hpp"
#include "friedrichs/quadrature.hpp"
#include "friedrichs/resolvent.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>

namespace friedrichs::oracle {

double DiscretizedHamiltonian::heisenberg_time() const noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(modes()) / omega_max;
}

DiscretizedHamiltonian discretize(const ModelSpec& spec, std::size_t modes, double omega_max) {
    require_valid(spec);
    if (modes < 10) throw Error(ErrorKind::Validation, "oracle needs at least 10 continuum modes");
    if (!(omega_max > spec.levels.back().omega) || !std::isfinite(omega_max))
        throw Error(ErrorKind::Validation, "omega_max must exceed the highest level");
    const auto& rule = quad::gauss_legendre(modes);
    const std::size_t N = spec.size();
    DiscretizedHamiltonian h;
    h.levels = N;
    h.omega_max = omega_max;
    h.nodes.resize(modes);
    h.weights.resize(modes);
    h.matrix = Eigen::MatrixXcd::Zero(N + modes, N + modes);
    for (std::size_t n = 0; n < N; ++n) h.matrix(n, n) = spec.levels[n].omega;
    for (std::size_t j = 0; j < modes; ++j) {
        const double w = 0.5 * omega_max * (rule.nodes[j] + 1.0);
        const double weight = 0.5 * omega_max * rule.weights[j];
        h.nodes(j) = w;
        h.weights(j) = weight;
        h.matrix(N + j, N + j) = w;
        for (std::size_t n = 0; n < N; ++n) {
            const cplx b = spec.lambda * spec.levels[n].form_factor(w) * std::sqrt(weight);
            h.matrix(n, N + j) = b;
            h.matrix(N + j, n) = std::conj(b);
        }
    }
    return h;
}

Propagator::Propagator(const DiscretizedHamiltonian& hamiltonian) : levels_(hamiltonian.levels) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian.matrix);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorKind::QuadratureFailure, "eigendecomposition of the discretized Hamiltonian failed");
    energies_ = solver.eigenvalues();
    discrete_rows_ = solver.eigenvectors().topRows(levels_);
}

Eigen::VectorXd Propagator::weights_for(const InitialState& state) const {
    if (state.size() != levels_) throw Error(ErrorKind::Validation, "state size does not match the model");
    // <e_k|psi> = sum_n conj(U_nk) c_n
    return (discrete_rows_.adjoint() * state.coefficients()).cwiseAbs2();
}

double Propagator::unitarity(const InitialState& state) const { return weights_for(state).sum(); }

SurvivalSeries Propagator::propagate(const InitialState& state, std::span<const double> times) const {
    const Eigen::VectorXd p = weights_for(state);
    SurvivalSeries out;
    out.times.assign(times.begin(), times.end());
    out.amplitude.resize(times.size());
    out.probability.resize(times.size());
    parallel_for(times.size(), [&](std::size_t k) {
        cplx sum{0.0, 0.0};
        for (Eigen::Index i = 0; i < p.size(); ++i) sum += p(i) * std::polar(1.0, -energies_(i) * times[k]);
        out.amplitude[k] = sum;
        out.probability[k] = std::norm(sum);
    });
    return out;
}

SurvivalSeries propagate(const DiscretizedHamiltonian& hamiltonian, const InitialState& state,
                         std::span<const double> times) {
    return Propagator(hamiltonian).propagate(state, times);
}

Comparison compare(const ModelSpec& spec, const InitialState& state, std::span<const double> times,
                   std::size_t modes, double omega_max) {
    const auto h = discretize(spec, modes, omega_max);
    for (double t : times) {
        if (!(t < h.heisenberg_time())) {
            std::ostringstream msg;
            msg << "t = " << t << " is beyond the Heisenberg time " << h.heisenberg_time()
                << " of the discretization; increase the number of modes";
            throw Error(ErrorKind::Validation, msg.str());
        }
    }
    const auto oracle = Propagator(h).propagate(state, times);
    const auto spectral = survival_amplitude(Resolvent(spec), state, times);
    Comparison out;
    out.times.assign(times.begin(), times.end());
    out.spectral = spectral.amplitude;
    out.oracle = oracle.amplitude;
    out.heisenberg_time = h.heisenberg_time();
    out.modes = modes;
    out.omega_max = omega_max;
    for (std::size_t k = 0; k < times.size(); ++k)
        out.max_abs_difference = std::max(out.max_abs_difference, std::abs(out.spectral[k] - out.oracle[k]));
    return out;
}

bool BoundStateReport::bound_state_suspected() const {
    if (!sign_changes.empty() || min_eigenvalue_at_threshold <= 0.0) return true;
    for (double c : completeness)
        if (std::abs(c - 1.0) > completeness_tolerance) return true;
    return false;
}

BoundStateReport no_bound_state_check(const ModelSpec& spec, double rel_tol) {
    const Resolvent res(spec);
    const double lo = -10.0 * spec.levels.back().omega;
    const double hi = -1e-6 * spec.levels.front().omega;
    const int count = 200;
    BoundStateReport out;
    out.grid.resize(count);
    out.determinant.resize(count);
    parallel_for(count, [&](std::size_t k) {
        // geometric in |x|
        const double x = -std::abs(lo) * std::pow(std::abs(hi) / std::abs(lo), k / (count - 1.0));
        Eigen::MatrixXcd g = res.self_energy(cplx{x, 0.0}, rel_tol).values * (spec.lambda * spec.lambda);
        for (std::size_t n = 0; n < spec.size(); ++n) g(n, n) += spec.levels[n].omega - x;
        out.grid[k] = x;
        out.determinant[k] = g.determinant().real();
    });
    for (int k = 1; k < count; ++k)
        if ((out.determinant[k] > 0.0) != (out.determinant[k - 1] > 0.0))
            out.sign_changes.push_back(0.5 * (out.grid[k] + out.grid[k - 1]));

    Eigen::MatrixXcd g0 = res.principal_value_at_zero() * (spec.lambda * spec.lambda);
    for (std::size_t n = 0; n < spec.size(); ++n) g0(n, n) += spec.levels[n].omega;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g0, Eigen::EigenvaluesOnly);
    out.min_eigenvalue_at_threshold = solver.eigenvalues().minCoeff();

    // uncoupled levels do not decay at all; completeness only makes sense with a continuum to decay into
    for (std::size_t n = 0; n < spec.size() && spec.lambda != 0.0; ++n) {
        const DensityTable table(res, localized_state(spec.size(), n));
        out.completeness.push_back(table.total());
    }
    return out;
}

}  // namespace friedrichs::oracle
