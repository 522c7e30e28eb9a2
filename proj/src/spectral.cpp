#include "friedrichs/spectral.hpp"

#include "friedrichs/error.hpp"
#include "friedrichs/parallel.hpp"
#include "friedrichs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace friedrichs {

namespace {

// int_0^1 x^e exp(-i k x) dx
cplx power_moment(double e, double k) {
    const cplx i{0.0, 1.0};
    if (k <= 30.0) {
        cplx sum{0.0, 0.0};
        cplx term{1.0, 0.0};  // (-i k)^m / m!
        for (int m = 0; m < 200; ++m) {
            const cplx add = term / (e + 1.0 + m);
            sum += add;
            if (m > k && std::abs(add) < 1e-18 * std::abs(sum)) break;
            term *= -i * k / static_cast<double>(m + 1);
        }
        return sum;
    }
    // complete integral minus the part beyond 1 (integration by parts, asymptotic in k)
    const cplx ik = i * k;
    const cplx full = std::tgamma(e + 1.0) * std::exp(-(e + 1.0) * std::log(ik));
    cplx upper{0.0, 0.0};
    cplx term = 1.0 / ik;
    double prev = std::abs(term);
    for (int m = 0; m < 60; ++m) {
        upper += term;
        term *= (e - m) / ik;
        const double mag = std::abs(term);
        if (mag == 0.0 || mag > prev || mag < 1e-18 * std::abs(upper)) break;
        prev = mag;
    }
    return full - std::exp(-ik) * upper;
}

void check_time_grid(std::span<const double> times) {
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(times[k] >= 0.0) || !std::isfinite(times[k]))
            throw Error(ErrorKind::Validation, "times must be non-negative and finite");
        if (k > 0 && times[k] < times[k - 1]) throw Error(ErrorKind::Validation, "times must be sorted");
    }
}

}  // namespace

Eigen::VectorXcd solve_F(const Resolvent& resolvent, double omega, Branch branch) {
    if (!(omega > 0.0)) throw Error(ErrorKind::Validation, "solve_F needs omega > 0");
    const auto& spec = resolvent.model();
    const Eigen::VectorXcd rhs = -spec.lambda * spec.form_factors(omega);
    if (spec.lambda == 0.0) return Eigen::VectorXcd::Zero(rhs.size());
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(resolvent.g_inverse(omega, branch));
    const double rcond = lu.rcond();
    if (!(rcond > 1e-12))
        throw Error(ErrorKind::SingularSystem,
                    "G^{-1}(w +- i0) is singular at w = " + std::to_string(omega) +
                        " (embedded eigenvalue?)");
    return lu.solve(rhs);
}

Eigen::VectorXcd solve_F(const ModelSpec& spec, double omega, Branch branch) {
    return solve_F(Resolvent(spec), omega, branch);
}

cplx scattering_overlap(const Resolvent& resolvent, const InitialState& state, double omega, Branch branch) {
    if (state.size() != resolvent.size())
        throw Error(ErrorKind::Validation, "state size does not match the model");
    const Eigen::VectorXcd F = solve_F(resolvent, omega, branch);
    return F.dot(state.coefficients());  // conjugates F
}

SpectralDensitySamples spectral_density(const Resolvent& resolvent, const InitialState& state,
                                        std::span<const double> grid) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!(grid[k] > 0.0)) throw Error(ErrorKind::Validation, "density grid must be positive");
        if (k > 0 && !(grid[k] > grid[k - 1]))
            throw Error(ErrorKind::Validation, "density grid must be strictly increasing");
    }
    SpectralDensitySamples out;
    out.grid.assign(grid.begin(), grid.end());
    out.density.resize(grid.size());
    out.overlap.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t k) {
        out.overlap[k] = scattering_overlap(resolvent, state, grid[k]);
        out.density[k] = std::norm(out.overlap[k]);
    });
    return out;
}

SpectralDensitySamples spectral_density(const ModelSpec& spec, const InitialState& state,
                                        std::span<const double> grid) {
    return spectral_density(Resolvent(spec), state, grid);
}

double decay_rate(const ModelSpec& spec, std::size_t n) {
    if (n >= spec.size()) throw Error(ErrorKind::Validation, "level index out of range");
    const auto& level = spec.levels[n];
    return 2.0 * std::numbers::pi * spec.lambda * spec.lambda * std::norm(level.form_factor(level.omega));
}

std::vector<double> decay_rates(const ModelSpec& spec) {
    std::vector<double> out(spec.size());
    for (std::size_t n = 0; n < spec.size(); ++n) out[n] = decay_rate(spec, n);
    return out;
}

DensityTable::DensityTable(const Resolvent& resolvent, const InitialState& state, const DensityOptions& options)
    : state_(state), options_(options) {
    const auto& spec = resolvent.model();
    if (state.size() != spec.size()) throw Error(ErrorKind::Validation, "state size does not match the model");

    double p = spec.levels.front().form_factor.p();
    double r_min = spec.levels.front().form_factor.r();
    double scale_min = spec.levels.front().form_factor.scale();
    for (const auto& level : spec.levels) {
        p = std::min(p, level.form_factor.p());
        r_min = std::min(r_min, level.form_factor.r());
        scale_min = std::min(scale_min, level.form_factor.scale());
    }
    exponent_ = 2.0 * p;
    const double w1 = spec.levels.front().omega;
    first_width_ = options_.omega_min > 0.0 ? options_.omega_min : 1e-8 * w1;
    if (options_.t_max > 0.0) first_width_ = std::min(first_width_, 1.0 / options_.t_max);
    first_value_ = std::norm(scattering_overlap(resolvent, state_, first_width_));

    const double cut = resolvent.cut_energy();
    std::vector<double> breaks;
    const double graded_end = 0.25 * std::min(w1, scale_min);
    for (double b = first_width_; b < graded_end; b *= 2.0) breaks.push_back(b);
    breaks.push_back(graded_end);
    for (double b = graded_end; b < cut; b *= 2.0) breaks.push_back(b);
    breaks.push_back(cut);
    const auto gammas = decay_rates(spec);
    for (std::size_t n = 0; n < spec.size(); ++n) {
        const double w = spec.levels[n].omega;
        breaks.push_back(w);
        breaks.push_back(spec.levels[n].form_factor.scale());
        for (double k : {1.0, 10.0}) {
            breaks.push_back(w - k * gammas[n]);
            breaks.push_back(w + k * gammas[n]);
        }
    }
    std::erase_if(breaks, [&](double b) { return !(b >= first_width_) || b > cut; });
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    std::vector<Panel> pending;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        if (breaks[k + 1] - breaks[k] <= 1e-14 * breaks[k + 1]) continue;
        pending.push_back(Panel{breaks[k], breaks[k + 1], {}, {}, {}, {}});
    }
    while (!pending.empty()) {
        parallel_for(pending.size(), [&](std::size_t k) { evaluate(resolvent, pending[k]); });
        std::vector<Panel> next;
        for (auto& panel : pending) {
            const bool splittable = panel.b - panel.a > 1e-12 * panel.b;
            if (accepted(panel) || !splittable ||
                panels_.size() + next.size() + 2 > options_.max_panels) {
                if (!accepted(panel)) complete_ = false;
                panels_.push_back(std::move(panel));
            } else {
                const double mid = 0.5 * (panel.a + panel.b);
                next.push_back(Panel{panel.a, mid, {}, {}, {}, {}});
                next.push_back(Panel{mid, panel.b, {}, {}, {}, {}});
            }
        }
        pending = std::move(next);
    }
    std::sort(panels_.begin(), panels_.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });

    const double rho_cut = std::norm(scattering_overlap(resolvent, state_, cut));
    const double decay = 2.0 * r_min;
    tail_error_ = decay > 1.0 ? rho_cut * cut / (decay - 1.0) : std::numeric_limits<double>::infinity();
}

void DensityTable::evaluate(const Resolvent& resolvent, Panel& panel) const {
    const auto& rule = quad::gauss_legendre(options_.order);
    const std::size_t n = options_.order;
    const double c = 0.5 * (panel.a + panel.b), h = 0.5 * (panel.b - panel.a);
    panel.nodes.resize(n);
    panel.values.resize(n);
    panel.overlap.resize(n);
    panel.legendre.assign(n, 0.0);
    std::vector<double> P(n);
    for (std::size_t i = 0; i < n; ++i) {
        panel.nodes[i] = c + h * rule.nodes[i];
        panel.overlap[i] = scattering_overlap(resolvent, state_, panel.nodes[i]);
        panel.values[i] = std::norm(panel.overlap[i]);
        quad::legendre_values(rule.nodes[i], n, P.data());
        for (std::size_t k = 0; k < n; ++k) panel.legendre[k] += rule.weights[i] * panel.values[i] * P[k];
    }
    for (std::size_t k = 0; k < n; ++k) panel.legendre[k] *= (2.0 * k + 1.0) / 2.0;
}

bool DensityTable::accepted(const Panel& panel) const {
    const std::size_t n = panel.legendre.size();
    const double tail = std::max(std::abs(panel.legendre[n - 1]), std::abs(panel.legendre[n - 2]));
    double peak = 0.0;
    for (double v : panel.values) peak = std::max(peak, std::abs(v));
    const double h = 0.5 * (panel.b - panel.a);
    return tail <= options_.rel_tol * peak || tail * h <= options_.abs_tol;
}

cplx DensityTable::fourier(double t) const {
    const cplx i{0.0, 1.0};
    cplx sum = first_value_ * first_width_ * power_moment(exponent_, first_width_ * t);
    std::vector<double> j(options_.order);
    // (-i)^k cycles through 1, -i, -1, i
    const cplx phase[4] = {cplx{1.0, 0.0}, cplx{0.0, -1.0}, cplx{-1.0, 0.0}, cplx{0.0, 1.0}};
    for (const auto& panel : panels_) {
        const double c = 0.5 * (panel.a + panel.b), h = 0.5 * (panel.b - panel.a);
        quad::spherical_bessel_j(h * t, options_.order, j.data());
        cplx moment{0.0, 0.0};
        for (std::size_t k = 0; k < options_.order; ++k) moment += phase[k % 4] * (panel.legendre[k] * j[k]);
        sum += 2.0 * h * std::exp(-i * (c * t)) * moment;
    }
    return sum;
}

double DensityTable::total() const { return fourier(0.0).real(); }

SpectralDensitySamples DensityTable::samples() const {
    SpectralDensitySamples out;
    for (const auto& panel : panels_) {
        out.grid.insert(out.grid.end(), panel.nodes.begin(), panel.nodes.end());
        out.density.insert(out.density.end(), panel.values.begin(), panel.values.end());
        out.overlap.insert(out.overlap.end(), panel.overlap.begin(), panel.overlap.end());
    }
    return out;
}

SurvivalSeries survival_amplitude(const Resolvent& resolvent, const InitialState& state,
                                  std::span<const double> times, DensityOptions options) {
    check_time_grid(times);
    if (!times.empty()) options.t_max = std::max(options.t_max, times.back());
    const DensityTable table(resolvent, state, options);
    SurvivalSeries out;
    out.times.assign(times.begin(), times.end());
    out.amplitude.resize(times.size());
    out.probability.resize(times.size());
    parallel_for(times.size(), [&](std::size_t k) {
        out.amplitude[k] = table.fourier(times[k]);
        out.probability[k] = std::norm(out.amplitude[k]);
    });
    out.tail_error = table.tail_error();
    out.complete = table.complete();
    return out;
}

SurvivalSeries survival_amplitude(const ModelSpec& spec, const InitialState& state, std::span<const double> times) {
    return survival_amplitude(Resolvent(spec), state, times);
}

SurvivalSeries exponential_era(std::span<const double> omegas, const InitialState& state,
                               std::span<const double> gammas, std::span<const double> times) {
    if (omegas.size() != state.size() || gammas.size() != state.size())
        throw Error(ErrorKind::Validation, "exponential_era: size mismatch");
    check_time_grid(times);
    SurvivalSeries out;
    out.times.assign(times.begin(), times.end());
    const cplx i{0.0, 1.0};
    for (double t : times) {
        cplx a{0.0, 0.0};
        for (std::size_t n = 0; n < state.size(); ++n)
            a += std::norm(state[n]) * std::exp(-i * (omegas[n] * t) - 0.5 * gammas[n] * t);
        out.amplitude.push_back(a);
        out.probability.push_back(std::norm(a));
    }
    return out;
}

SurvivalSeries exponential_era(const ModelSpec& spec, const InitialState& state, std::span<const double> times,
                               std::optional<std::vector<double>> gammas) {
    const std::vector<double> rates = gammas ? *gammas : decay_rates(spec);
    std::vector<double> w(spec.size());
    for (std::size_t n = 0; n < spec.size(); ++n) w[n] = spec.levels[n].omega;
    return exponential_era(w, state, rates, times);
}

}  // namespace friedrichs
