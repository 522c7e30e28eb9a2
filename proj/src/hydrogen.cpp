#include "friedrichs/hydrogen.hpp"

#include "friedrichs/asymptotics.hpp"
#include "friedrichs/error.hpp"
#include "friedrichs/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace friedrichs::hydrogen {

SeriesParams series_params(std::size_t n, double omega) {
    if (n < 1) throw Error(ErrorKind::Validation, "hydrogen level index starts at 1");
    const double x = static_cast<double>(n);
    const double np1 = x + 1.0, np2 = x + 2.0;
    // n^{2n} / (n+2)^{2n+4}
    const double log_power = 2.0 * x * std::log(x) - (2.0 * x + 4.0) * std::log(np2);
    SeriesParams out;
    out.omega = 4.0 / 3.0 * omega * (1.0 - 1.0 / (np1 * np1));
    out.gamma = std::exp(std::log(kRatePrefactor) + 8.0 * std::numbers::ln2 + std::log(np1) + log_power - std::log(9.0));
    const double log_bracket = std::log(np1 * np1 - 1.0);
    out.lam_q_over_omega_sq = std::exp(std::log(kRatePrefactor) + std::log(6.0) + 7.0 * std::log(np1) + log_power -
                                       std::log(std::numbers::pi) - 3.0 * std::log(omega) - 3.0 * log_bracket);
    return out;
}

std::vector<double> bethe_rates(std::size_t levels) {
    std::vector<double> out(levels);
    for (std::size_t n = 1; n <= levels; ++n) out[n - 1] = series_params(n).gamma;
    return out;
}

std::vector<TableRow> reproduce_table(std::span<const std::size_t> level_counts, double omega, double lambda) {
    std::vector<TableRow> rows;
    for (std::size_t levels : level_counts) {
        if (levels < 1) throw Error(ErrorKind::Validation, "table needs N >= 1");
        std::vector<double> w(levels), gammas(levels);
        Eigen::VectorXcd f(levels);
        double sum = 0.0, first = 0.0;
        for (std::size_t n = 1; n <= levels; ++n) {
            const auto par = series_params(n, omega);
            w[n - 1] = par.omega;
            gammas[n - 1] = par.gamma;
            f(n - 1) = std::sqrt(par.lam_q_over_omega_sq) / lambda;  // q_n / w_n
            sum += par.lam_q_over_omega_sq;
            if (n == 1) first = par.lam_q_over_omega_sq;
        }
        const auto report = make_report(0.5, lambda, f, CoefficientMode::Perturbative);
        const auto state = maximizing_state(report);
        TableRow row;
        row.levels = levels;
        row.ratio = sum / first;
        row.t_N = 1.0 / gammas.back();
        row.t_ep = crossover_time(w, state, gammas, report, CrossoverMode::Approximate).t_ep;
        row.t_ep_full = crossover_time(w, state, gammas, report, CrossoverMode::Full).t_ep;
        row.survival_at_crossover = std::pow(std::norm(state[levels - 1]), 2) * std::exp(-gammas.back() * row.t_ep);
        rows.push_back(row);
    }
    return rows;
}

namespace {

double calibrate_cutoff(double w, double target, double r, std::size_t n) {
    // golden-rule rate relative to its infinite-cutoff value: (1 + w/L)^{-2(p+r)}
    const double e = 2.0 * (0.5 + r);
    auto residual = [&](double log_cut) { return std::pow(1.0 + w / std::exp(log_cut), -e) - target; };
    double a = std::log(w), b = std::log(1e6 * w);
    double ra = residual(a), rb = residual(b);
    if ((ra > 0.0) == (rb > 0.0)) {
        std::ostringstream msg;
        msg << "no cutoff in [w_n, 1e6 w_n] reproduces the Bethe rate of level " << n;
        throw Error(ErrorKind::CalibrationFailure, msg.str());
    }
    for (int k = 0; k < 200 && b - a > 1e-14; ++k) {
        const double m = 0.5 * (a + b);
        const double rm = residual(m);
        if ((rm > 0.0) == (ra > 0.0)) {
            a = m;
            ra = rm;
        } else {
            b = m;
        }
    }
    return std::exp(0.5 * (a + b));
}

}  // namespace

ModelSpec build_model(const SeriesSpec& spec) {
    if (spec.levels < 1) throw Error(ErrorKind::Validation, "hydrogen model needs N >= 1");
    if (!(spec.cutoff.target_fraction > 0.0 && spec.cutoff.target_fraction < 1.0))
        throw Error(ErrorKind::Validation, "calibration target fraction must lie in (0, 1)");
    ModelSpec model;
    model.lambda = spec.lambda;
    for (std::size_t n = 1; n <= spec.levels; ++n) {
        const auto par = series_params(n, spec.omega);
        const double q = std::sqrt(par.lam_q_over_omega_sq) * par.omega / spec.lambda;
        // the bare rate 2 pi lambda^2 q^2 w_n may differ from Bethe's; fold the ratio into the target
        const double bare = 2.0 * std::numbers::pi * spec.lambda * spec.lambda * q * q * par.omega;
        const double target = spec.cutoff.target_fraction * par.gamma / bare;
        const double cut = calibrate_cutoff(par.omega, target, spec.cutoff.r, n);
        model.levels.push_back({par.omega, FormFactor::power_law_cutoff(q, 0.5, spec.cutoff.r, cut)});
    }
    require_valid(model);
    return model;
}

ModelSpec build_model(std::size_t levels) {
    SeriesSpec spec;
    spec.levels = levels;
    return build_model(spec);
}

}  // namespace friedrichs::hydrogen
