#include "friedrichs/resolvent.hpp"

#include "friedrichs/error.hpp"
#include "friedrichs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace friedrichs {

namespace {

constexpr std::size_t kRuleOrder = 20;
constexpr int kTailPanels = 20;

Eigen::MatrixXcd hermitize(const Eigen::MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

Eigen::MatrixXcd unflatten(const Eigen::ArrayXcd& a, Eigen::Index n) {
    return Eigen::Map<const Eigen::MatrixXcd>(a.data(), n, n);
}

}  // namespace

Eigen::MatrixXcd GZeroExpansion::partial_sum(std::size_t order) const {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(g_exact.rows(), g_exact.cols());
    double factor = 1.0;
    const double lam2 = lambda * lambda;
    for (std::size_t j = 0; j <= order && j < terms.size(); ++j) {
        sum += factor * terms[j];
        factor *= lam2;
    }
    return sum;
}

Resolvent::Resolvent(ModelSpec spec) : spec_(std::move(spec)) {
    require_valid(spec_);
    const auto n = static_cast<Eigen::Index>(spec_.size());

    double max_scale = 0.0, min_scale = spec_.levels.front().omega;
    std::vector<double> knots;
    for (const auto& level : spec_.levels) {
        const auto& ff = level.form_factor;
        max_scale = std::max({max_scale, ff.scale(), level.omega});
        min_scale = std::min({min_scale, ff.scale(), level.omega});
        for (double k : ff.knots()) {
            knots.push_back(k);
            min_scale = std::min(min_scale, k);
        }
    }
    cut_energy_ = 100.0 * max_scale;
    pv_limit_ = 4.0 * cut_energy_;

    // Geometric panels from 1e-14 min_scale up to the subtraction limit, plus spline knots.
    breaks_.push_back(0.0);
    for (double b = 1e-14 * min_scale; b < pv_limit_; b *= 2.0) breaks_.push_back(b);
    breaks_.push_back(pv_limit_);
    for (double k : knots)
        if (k < pv_limit_) breaks_.push_back(k);
    std::sort(breaks_.begin(), breaks_.end());
    breaks_.erase(std::unique(breaks_.begin(), breaks_.end()), breaks_.end());

    const auto& gl = quad::gauss_legendre(kRuleOrder);
    const std::size_t count = (breaks_.size() - 1) * kRuleOrder;
    nodes_.resize(static_cast<Eigen::Index>(count));
    weights_.resize(static_cast<Eigen::Index>(count));
    Eigen::Index j = 0;
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
        const double c = 0.5 * (breaks_[i] + breaks_[i + 1]);
        const double h = 0.5 * (breaks_[i + 1] - breaks_[i]);
        for (std::size_t k = 0; k < kRuleOrder; ++k, ++j) {
            nodes_(j) = c + h * gl.nodes[k];
            weights_(j) = h * gl.weights[k];
        }
    }
    values_.resize(n, nodes_.size());
    for (Eigen::Index col = 0; col < nodes_.size(); ++col) values_.col(col) = spec_.form_factors(nodes_(col));

    // Tail x = pv_limit/u, u in [2^-kTailPanels, 1], geometric panels in u.
    const std::size_t tail_count = static_cast<std::size_t>(kTailPanels) * kRuleOrder;
    tail_nodes_.resize(static_cast<Eigen::Index>(tail_count));
    tail_weights_.resize(static_cast<Eigen::Index>(tail_count));
    j = 0;
    for (int panel = 0; panel < kTailPanels; ++panel) {
        const double hi = std::ldexp(1.0, -panel);
        const double lo = 0.5 * hi;
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        for (std::size_t k = 0; k < kRuleOrder; ++k, ++j) {
            const double u = c + h * gl.nodes[k];
            tail_nodes_(j) = pv_limit_ / u;
            tail_weights_(j) = h * gl.weights[k] * pv_limit_ / (u * u);
        }
    }
    far_limit_ = std::ldexp(pv_limit_, kTailPanels);
    tail_values_.resize(n, tail_nodes_.size());
    for (Eigen::Index col = 0; col < tail_nodes_.size(); ++col)
        tail_values_.col(col) = spec_.form_factors(tail_nodes_(col));

    far_amplitude_.resize(n, n);
    far_exponent_.resize(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        const auto& fa = spec_.levels[static_cast<std::size_t>(a)].form_factor;
        for (Eigen::Index b = 0; b < n; ++b) {
            const auto& fb = spec_.levels[static_cast<std::size_t>(b)].form_factor;
            far_amplitude_(a, b) = fa.large_energy_amplitude() * std::conj(fb.large_energy_amplitude());
            far_exponent_(a, b) = fa.r() + fb.r();
        }
    }

    const Eigen::VectorXd w_over_x = weights_.cwiseQuotient(nodes_);
    pv_zero_ = -values_ * w_over_x.asDiagonal() * values_.adjoint() + mapped_tail(0.0) +
               far_tail(cplx{0.0, 0.0});
    pv_zero_ = hermitize(pv_zero_);
}

Eigen::MatrixXcd Resolvent::far_tail(cplx z) const {
    const auto n = far_amplitude_.rows();
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            const double rho = far_exponent_(a, b);
            const double y = far_limit_;
            out(a, b) = -far_amplitude_(a, b) *
                        (std::pow(y, -rho) / rho + z * std::pow(y, -rho - 1.0) / (rho + 1.0));
        }
    }
    return out;
}

Eigen::MatrixXcd Resolvent::mapped_tail(double omega) const {
    const Eigen::VectorXd w = tail_weights_.array() / (omega - tail_nodes_.array());
    return tail_values_ * w.asDiagonal() * tail_values_.adjoint();
}

Eigen::MatrixXcd Resolvent::principal_value(double omega) const {
    if (omega == 0.0) return pv_zero_;
    if (!(omega > 0.0) || !(omega < max_boundary_energy()))
        throw Error(ErrorKind::Validation, "boundary values need 0 < omega < " +
                                               std::to_string(max_boundary_energy()));
    const auto n = static_cast<Eigen::Index>(size());
    const Eigen::VectorXcd v0 = spec_.form_factors(omega);
    // Divided differences (v(x_j) - v(omega)) / (omega - x_j), computed without cancellation.
    Eigen::MatrixXcd divided(n, nodes_.size());
    for (Eigen::Index a = 0; a < n; ++a) {
        const auto& ff = spec_.levels[static_cast<std::size_t>(a)].form_factor;
        for (Eigen::Index col = 0; col < nodes_.size(); ++col) {
            double x = nodes_(col);
            if (x == omega) x = std::nextafter(x, 2.0 * x);
            divided(a, col) = -ff.difference(x, omega, v0(a)) / (x - omega);
        }
    }
    const Eigen::VectorXcd b = divided * weights_;
    Eigen::MatrixXcd pv = divided * weights_.asDiagonal() * values_.adjoint() + v0 * b.adjoint();
    pv += v0 * v0.adjoint() * std::log(omega / (pv_limit_ - omega));
    pv += mapped_tail(omega) + far_tail(cplx{omega, 0.0});
    return hermitize(pv);
}

BoundaryValues Resolvent::boundary_values(double omega) const {
    BoundaryValues out;
    out.omega = omega;
    out.I = principal_value(omega);
    const Eigen::VectorXcd v0 = spec_.form_factors(omega);
    const Eigen::MatrixXcd jump = std::numbers::pi * (v0 * v0.adjoint());
    const cplx i{0.0, 1.0};
    out.s_plus = out.I - i * jump;
    out.s_minus = out.I + i * jump;
    return out;
}

Eigen::MatrixXcd Resolvent::g_inverse(double omega, Branch branch) const {
    const auto bv = boundary_values(omega);
    const double lam2 = spec_.lambda * spec_.lambda;
    Eigen::MatrixXcd g = lam2 * (branch == Branch::Plus ? bv.s_plus : bv.s_minus);
    g.diagonal() += (spec_.omegas().array() - omega).matrix().cast<cplx>();
    return g;
}

GZeroExpansion Resolvent::g_zero_limit(std::size_t order) const {
    const auto n = static_cast<Eigen::Index>(size());
    const Eigen::VectorXd w = spec_.omegas();
    const double lam2 = spec_.lambda * spec_.lambda;
    Eigen::MatrixXcd limit = lam2 * pv_zero_;
    limit.diagonal() += w.cast<cplx>();

    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(limit);
    const auto& sv = svd.singularValues();
    const double cond = std::max(sv(0), w.maxCoeff()) / sv(sv.size() - 1);
    if (!(cond < 1e12))
        throw Error(ErrorKind::SingularLimit,
                    "diag(omega) + lambda^2 I(0) is singular (condition " + std::to_string(cond) + ")");

    GZeroExpansion out;
    out.lambda = spec_.lambda;
    out.g_exact = limit.partialPivLu().inverse();
    const Eigen::VectorXcd inv_w = w.cwiseInverse().cast<cplx>();
    Eigen::MatrixXcd term = inv_w.asDiagonal() * Eigen::MatrixXcd::Identity(n, n);
    out.terms.push_back(term);
    for (std::size_t j = 1; j <= order; ++j) {
        // g^(j)_{nn'} = -(1/w_n') sum_m g^(j-1)_{nm} I_{mn'}(0)
        term = -(term * pv_zero_) * inv_w.asDiagonal();
        out.terms.push_back(term);
    }
    return out;
}

SelfEnergyMatrix Resolvent::self_energy(cplx z, double rel_tol) const {
    const double dist = (z.real() >= 0.0) ? std::abs(z.imag()) : std::abs(z);
    if (!(dist > 1e-14 * std::abs(z)) || !(std::abs(z) > 0.0))
        throw Error(ErrorKind::OnCut, "z lies on the cut [0, inf)");
    const auto n = static_cast<Eigen::Index>(size());

    auto floor_for = [n, rel_tol](const Eigen::ArrayXcd& v) {
        Eigen::ArrayXd fl(v.size());
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = 0; b < n; ++b)
                fl(a + n * b) = 1e-2 * rel_tol * std::sqrt(std::abs(v(a + n * a)) * std::abs(v(b + n * b)));
        return fl;
    };
    quad::AdaptiveOptions opts;
    opts.rel_tol = rel_tol;
    opts.abs_floor = floor_for;

    auto main_integrand = [this, z, n](double x) -> Eigen::ArrayXcd {
        const Eigen::VectorXcd v = spec_.form_factors(x);
        Eigen::MatrixXcd m = (v * v.adjoint()) / (z - x);
        return Eigen::Map<Eigen::ArrayXcd>(m.data(), n * n);
    };
    std::vector<double> breaks = breaks_;
    const double re = z.real(), im = std::abs(z.imag());
    for (double k : {0.0, 1.0, -1.0, 10.0, -10.0, 100.0, -100.0}) {
        const double b = re + k * im;
        if (b > 0.0 && b < pv_limit_) breaks.push_back(b);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    const auto main = quad::integrate_adaptive(main_integrand, breaks, opts);

    auto tail_integrand = [this, z, n](double u) -> Eigen::ArrayXcd {
        const double x = pv_limit_ / u;
        const Eigen::VectorXcd v = spec_.form_factors(x);
        Eigen::MatrixXcd m = (v * v.adjoint()) * (pv_limit_ / (u * u)) / (z - x);
        return Eigen::Map<Eigen::ArrayXcd>(m.data(), n * n);
    };
    std::vector<double> tail_breaks;
    for (int panel = kTailPanels; panel >= 0; --panel) tail_breaks.push_back(std::ldexp(1.0, -panel));
    quad::AdaptiveOptions tail_opts = opts;
    tail_opts.abs_floor = [&main, floor_for](const Eigen::ArrayXcd&) { return floor_for(main.value); };
    const auto tail = quad::integrate_adaptive(tail_integrand, tail_breaks, tail_opts);

    if (!main.converged || !tail.converged)
        throw Error(ErrorKind::QuadratureFailure,
                    "self-energy did not reach relative tolerance within the evaluation budget");
    SelfEnergyMatrix out;
    out.z = z;
    out.values = unflatten(main.value, n) + unflatten(tail.value, n) + far_tail(z);
    return out;
}

SelfEnergyMatrix s_matrix(const ModelSpec& spec, cplx z) { return Resolvent(spec).self_energy(z); }

BoundaryValues boundary_values(const ModelSpec& spec, double omega) {
    return Resolvent(spec).boundary_values(omega);
}

Eigen::MatrixXcd g_inverse_matrix(const ModelSpec& spec, double omega, Branch branch) {
    return Resolvent(spec).g_inverse(omega, branch);
}

GZeroExpansion g_zero_limit(const ModelSpec& spec, std::size_t order) {
    return Resolvent(spec).g_zero_limit(order);
}

}  // namespace friedrichs
