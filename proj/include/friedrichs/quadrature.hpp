// quadrature.hpp - Gauss-Legendre rules, adaptive Gauss-Kronrod and spherical Bessel moments

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <vector>

namespace friedrichs::quad {

struct Rule {
    std::vector<double> nodes;    // ascending, in (-1, 1)
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1]; cached, thread-safe.
const Rule& gauss_legendre(std::size_t n);

// P_0..P_{kmax-1} at x.
void legendre_values(double x, std::size_t kmax, double* out);

// Spherical Bessel j_0..j_{kmax-1} at x >= 0.
void spherical_bessel_j(double x, std::size_t kmax, double* out);

struct AdaptiveOptions {
    double rel_tol{1e-10};
    std::size_t max_evaluations{200000};
    // Per-component absolute floor as a function of the running estimate;
    // the default floor is zero.
    std::function<Eigen::ArrayXd(const Eigen::ArrayXcd&)> abs_floor;
};

struct AdaptiveResult {
    Eigen::ArrayXcd value;
    Eigen::ArrayXd error;
    std::size_t evaluations{0};
    bool converged{false};
};

using VectorIntegrand = std::function<Eigen::ArrayXcd(double)>;

// Globally adaptive 15-point Gauss-Kronrod integration of a vector-valued integrand over
// consecutive [breaks[i], breaks[i+1]]. Every component must satisfy
// error <= max(rel_tol * |value|, floor) for convergence.
AdaptiveResult integrate_adaptive(const VectorIntegrand& f, const std::vector<double>& breaks,
                                  const AdaptiveOptions& options);

}  // namespace friedrichs::quad
