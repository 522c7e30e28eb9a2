#include "friedrichs/asymptotics.hpp"

#include "friedrichs/error.hpp"
#include "friedrichs/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace friedrichs {

std::string_view to_string(CoefficientMode mode) noexcept {
    return mode == CoefficientMode::Exact ? "exact" : "perturbative";
}

std::string_view to_string(CrossoverMode mode) noexcept {
    return mode == CrossoverMode::Full ? "full" : "approximate";
}

cplx AsymptoteReport::overlap(const InitialState& state) const {
    if (state.size() != static_cast<std::size_t>(f.size()))
        throw Error(ErrorKind::Validation, "state size does not match the asymptote report");
    return f.dot(state.coefficients());
}

double AsymptoteReport::coefficient(const InitialState& state) const {
    return lambda * lambda * std::tgamma(2.0 * p + 1.0) * std::norm(overlap(state));
}

AsymptoteReport make_report(double p, double lambda, Eigen::VectorXcd f, CoefficientMode mode) {
    AsymptoteReport r;
    r.p = p;
    r.lambda = lambda;
    r.chi_norm_sq = f.squaredNorm();
    r.f = std::move(f);
    r.mode = mode;
    return r;
}

AsymptoteReport asymptote_coeffs(const Resolvent& resolvent, CoefficientMode mode) {
    const auto& spec = resolvent.model();
    const auto lead = leading_small_energy(spec);
    const auto g = resolvent.g_zero_limit(1);
    Eigen::VectorXcd f;
    if (mode == CoefficientMode::Exact) {
        f = g.g_exact * lead.q_tilde;
    } else {
        f = (g.terms[0] + spec.lambda * spec.lambda * g.terms[1]) * lead.q_tilde;
    }
    return make_report(lead.p, spec.lambda, std::move(f), mode);
}

AsymptoteReport asymptote_coeffs(const ModelSpec& spec, CoefficientMode mode) {
    return asymptote_coeffs(Resolvent(spec), mode);
}

cplx asymptote_eval(const AsymptoteReport& report, const InitialState& state, double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorKind::Validation, "asymptote_eval needs t > 0");
    const double e = 2.0 * report.p + 1.0;
    const cplx it_pow = std::pow(t, e) * std::polar(1.0, 0.5 * std::numbers::pi * e);
    return report.coefficient(state) / it_pow;
}

InitialState maximizing_state(const AsymptoteReport& report) {
    if (!(report.chi_norm_sq > 0.0)) throw Error(ErrorKind::DegenerateChi, "chi vanishes; no maximizing state");
    return InitialState(report.f / std::sqrt(report.chi_norm_sq));
}

std::vector<InitialState> orthogonal_complement(const AsymptoteReport& report) {
    const auto n = report.f.size();
    if (n < 2) throw Error(ErrorKind::Validation, "orthogonal complement needs at least two levels");
    if (!(report.chi_norm_sq > 0.0)) throw Error(ErrorKind::DegenerateChi, "chi vanishes; no orthogonal complement");
    std::vector<Eigen::VectorXcd> basis{report.f / std::sqrt(report.chi_norm_sq)};
    for (Eigen::Index k = 0; k < n && static_cast<Eigen::Index>(basis.size()) < n; ++k) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Unit(n, k);
        // two passes for numerical orthogonality
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) v -= b.dot(v) * b;
        const double norm = v.norm();
        if (norm > 1e-8) basis.push_back(v / norm);
    }
    std::vector<InitialState> out;
    for (std::size_t k = 1; k < basis.size(); ++k) out.emplace_back(basis[k]);
    return out;
}

SlaComparison sla_comparison(const Resolvent& resolvent) {
    const auto& spec = resolvent.model();
    const auto lead = leading_small_energy(spec);
    if (lead.q_tilde(0) == cplx{0.0, 0.0})
        throw Error(ErrorKind::Validation, "sla_comparison needs a non-zero leading amplitude on level 1");
    const auto report = asymptote_coeffs(resolvent, CoefficientMode::Exact);
    const double pref = spec.lambda * spec.lambda * std::tgamma(2.0 * lead.p + 1.0);
    const double w1 = spec.levels.front().omega;
    SlaComparison out;
    out.single_level = pref * std::norm(lead.q_tilde(0)) / (w1 * w1);
    out.exact = pref * std::norm(report.f(0));
    out.deviation = std::abs(std::norm(report.f(0)) * w1 * w1 / std::norm(lead.q_tilde(0)) - 1.0);
    return out;
}

SlaComparison sla_comparison(const ModelSpec& spec) { return sla_comparison(Resolvent(spec)); }

CrossoverResult crossover_time(std::span<const double> omegas, const InitialState& state,
                               std::span<const double> gammas, const AsymptoteReport& report,
                               CrossoverMode mode) {
    const std::size_t n = state.size();
    if (omegas.size() != n || gammas.size() != n)
        throw Error(ErrorKind::Validation, "crossover_time: size mismatch");
    for (double g : gammas)
        if (!(g > 0.0) || !std::isfinite(g)) throw Error(ErrorKind::Validation, "decay rates must be positive");
    const double coeff = report.coefficient(state);
    if (!(coeff > 0.0)) throw Error(ErrorKind::NoRoot, "state has no power-law asymptote; no crossover");

    const double gamma_min = *std::min_element(gammas.begin(), gammas.end());
    const double exponent = 2.0 * (2.0 * report.p + 1.0);
    const double log_coeff = 2.0 * std::log(coeff);
    // ln|A_exp|^2 - ln|A_asym|^2 as a function of u = ln t
    auto h = [&](double u) {
        const double t = std::exp(u);
        double lhs;
        if (mode == CrossoverMode::Approximate) {
            lhs = 2.0 * std::log(std::norm(state[n - 1])) - gammas[n - 1] * t;
        } else {
            cplx sum{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k)
                sum += std::norm(state[k]) *
                       std::polar(std::exp(-0.5 * (gammas[k] - gamma_min) * t), -omegas[k] * t);
            lhs = std::log(std::norm(sum)) - gamma_min * t;
        }
        return lhs - (log_coeff - exponent * u);
    };

    const double t_n = 1.0 / gammas[n - 1];
    CrossoverResult out;
    out.mode = mode;
    out.window_lo = 1e-2 * t_n;
    out.window_hi = 1e4 * t_n;
    const double u0 = std::log(out.window_lo), u1 = std::log(out.window_hi);
    const int steps = 6000;
    double prev_u = u0, prev_h = h(u0);
    for (int k = 1; k <= steps; ++k) {
        const double u = u0 + (u1 - u0) * k / steps;
        const double hu = h(u);
        if (std::isfinite(prev_h) && std::isfinite(hu) && (prev_h > 0.0) != (hu > 0.0)) {
            double a = prev_u, b = u, ha = prev_h;
            while (b - a > 1e-9) {
                const double m = 0.5 * (a + b);
                const double hm = h(m);
                if ((hm > 0.0) == (ha > 0.0)) {
                    a = m;
                    ha = hm;
                } else {
                    b = m;
                }
            }
            out.roots.push_back(std::exp(0.5 * (a + b)));
        }
        prev_u = u;
        prev_h = hu;
    }
    if (out.roots.empty()) {
        std::ostringstream msg;
        msg << "no crossing of exponential era and asymptote in [" << out.window_lo << ", " << out.window_hi
            << "]; log-ratio at ends " << h(u0) << ", " << h(u1);
        throw Error(ErrorKind::NoRoot, msg.str());
    }
    out.t_ep = out.roots.back();
    return out;
}

CrossoverResult crossover_time(const ModelSpec& spec, const InitialState& state, std::span<const double> gammas,
                               const AsymptoteReport& report, CrossoverMode mode) {
    std::vector<double> w(spec.size());
    for (std::size_t n = 0; n < spec.size(); ++n) w[n] = spec.levels[n].omega;
    return crossover_time(w, state, gammas, report, mode);
}

SchwarzSweep schwarz_sweep(const AsymptoteReport& report, std::size_t count, std::uint64_t seed) {
    const auto best = maximizing_state(report);
    SchwarzSweep out;
    out.seed = seed;
    out.maximum = report.coefficient(best);
    out.samples.resize(count);
    const auto n = report.f.size();
    parallel_for(count, [&](std::size_t k) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> normal;
        Eigen::VectorXcd raw(n);
        for (Eigen::Index i = 0; i < n; ++i) raw(i) = cplx{normal(rng), normal(rng)};
        const auto state = normalize_state(raw);
        out.samples[k].coefficient = report.coefficient(state);
        // squared norm of the component orthogonal to chi; non-negative by construction
        const cplx along = best.coefficients().dot(state.coefficients());
        out.samples[k].deficit = (state.coefficients() - along * best.coefficients()).squaredNorm();
    });
    return out;
}

}  // namespace friedrichs
