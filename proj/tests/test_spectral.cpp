#include "doctest.h"
#include "toy_models.hpp"

#include "friedrichs/error.hpp"
#include "friedrichs/spectral.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace friedrichs;

namespace {

std::vector<double> log_grid(double lo, double hi, int count) {
    std::vector<double> out;
    for (int k = 0; k < count; ++k) out.push_back(lo * std::pow(hi / lo, k / (count - 1.0)));
    return out;
}

}  // namespace

TEST_CASE("solve_F vanishes without coupling") {
    const Resolvent res(toy::two_level_broad(0.0));
    CHECK(solve_F(res, 0.7, Branch::Plus).norm() == 0.0);
    const auto rho = spectral_density(res, localized_state(2, 0), std::vector<double>{0.3, 1.0, 2.0});
    for (double d : rho.density) CHECK(d == 0.0);
}

TEST_CASE("single-level F against the 1x1 inversion") {
    const double lambda = 0.2;
    const Resolvent res(toy::single_level(lambda));
    for (double w : {0.5, 0.05, 3.0}) {
        const double v = std::sqrt(w) / std::pow(1.0 + w, 2);
        const cplx s_plus{toy::single_level_I(w), -std::numbers::pi * v * v};
        const cplx want = -lambda * v / (1.0 - w + lambda * lambda * s_plus);
        CAPTURE(w);
        CHECK(std::abs(solve_F(res, w, Branch::Plus)(0) - want) <= 1e-10 * std::abs(want));
    }
}

TEST_CASE("F approaches -lambda f w^p near threshold") {
    const auto model = toy::two_level_broad();
    const Resolvent res(model);
    const Eigen::VectorXcd f = res.g_zero_limit(0).g_exact * leading_small_energy(model).q_tilde;
    for (double w : {1e-6, 1e-8}) {
        const Eigen::VectorXcd F = solve_F(res, w, Branch::Plus);
        const Eigen::VectorXcd lead = -model.lambda * std::sqrt(w) * f;
        CHECK((F - lead).norm() <= 1e-3 * lead.norm());
    }
}

TEST_CASE("density is branch independent") {
    const auto model = toy::two_level_broad();
    const Resolvent res(model);
    const auto c = normalize_state(Eigen::Vector2cd(cplx{0.3, 0.1}, cplx{-0.5, 0.8}));
    for (double w : log_grid(1e-6, 500.0, 40)) {
        const double plus = std::norm(scattering_overlap(res, c, w, Branch::Plus));
        const double minus = std::norm(scattering_overlap(res, c, w, Branch::Minus));
        CAPTURE(w);
        CHECK(std::abs(plus - minus) <= 1e-10 * plus);
    }
}

TEST_CASE("spectral_density rejects bad grids") {
    const Resolvent res(toy::two_level_weak());
    const auto c = localized_state(2, 0);
    CHECK_THROWS_AS(spectral_density(res, c, std::vector<double>{0.0, 1.0}), Error);
    CHECK_THROWS_AS(spectral_density(res, c, std::vector<double>{1.0, 0.5}), Error);
    CHECK_THROWS_AS(spectral_density(res, localized_state(3, 0), std::vector<double>{1.0}), Error);
}

TEST_CASE("completeness of the weak-coupling density") {
    const Resolvent res(toy::two_level_weak());
    for (std::size_t n = 0; n < 2; ++n) {
        const DensityTable table(res, localized_state(2, n));
        CHECK(table.complete());
        CHECK(table.total() == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(table.total() <= 1.0 + 1e-6);
        CHECK(table.tail_error() < 1e-3);
    }
}

TEST_CASE("density threshold exponent is 2p") {
    const auto model = toy::two_level_broad();
    const Resolvent res(model);
    const auto c = localized_state(2, 1);
    const double w1 = 1e-7, w2 = 1e-6;
    const double r1 = std::norm(scattering_overlap(res, c, w1));
    const double r2 = std::norm(scattering_overlap(res, c, w2));
    const double slope = std::log(r2 / r1) / std::log(w2 / w1);
    CHECK(slope == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("survival amplitude is bounded by its value at t = 0") {
    const Resolvent res(toy::two_level_broad());
    const auto c = normalize_state(Eigen::Vector2cd(cplx{1.0, 0.0}, cplx{0.0, 1.0}));
    std::vector<double> times{0.0};
    for (double t : log_grid(1e-2, 1e4, 60)) times.push_back(t);
    const auto series = survival_amplitude(res, c, times);
    CHECK(series.complete);
    const double a0 = std::abs(series.amplitude[0]);
    CHECK(a0 == doctest::Approx(1.0).epsilon(1e-6));
    for (std::size_t k = 0; k < times.size(); ++k) {
        CHECK(std::abs(series.amplitude[k]) <= a0 * (1.0 + 1e-12));
        CHECK(series.probability[k] == doctest::Approx(std::norm(series.amplitude[k])));
        CHECK(series.probability[k] <= 1.0 + 1e-6);
    }
}

TEST_CASE("survival_amplitude rejects unsorted or negative times") {
    const Resolvent res(toy::two_level_weak());
    const auto c = localized_state(2, 0);
    CHECK_THROWS_AS(survival_amplitude(res, c, std::vector<double>{2.0, 1.0}), Error);
    CHECK_THROWS_AS(survival_amplitude(res, c, std::vector<double>{-1.0}), Error);
}

TEST_CASE("golden-rule decay rates") {
    CHECK(decay_rate(toy::single_level(0.0), 0) == 0.0);
    const double lambda = 0.1;
    CHECK(decay_rate(toy::single_level(lambda), 0) ==
          doctest::Approx(2.0 * std::numbers::pi * lambda * lambda / 16.0).epsilon(1e-14));
    CHECK_THROWS_AS(decay_rate(toy::single_level(lambda), 1), Error);
}

TEST_CASE("exponential era") {
    const auto model = toy::two_level_weak();
    const auto gammas = decay_rates(model);
    const auto c = normalize_state(Eigen::Vector2cd(cplx{0.6, 0.0}, cplx{0.0, 0.8}));

    const auto at_zero = exponential_era(model, c, std::vector<double>{0.0});
    CHECK(std::abs(at_zero.amplitude[0] - 1.0) <= 1e-15);

    const auto one = toy::single_level(0.1);
    const double t1 = 1.0 / decay_rate(one, 0);
    const auto life = exponential_era(one, localized_state(1, 0), std::vector<double>{t1});
    CHECK(life.probability[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

    // beyond the lower lifetime only the upper level survives
    const double late = 40.0 / gammas[0];
    const auto tail = exponential_era(model, c, std::vector<double>{late});
    const double want = std::pow(std::norm(c[1]), 2) * std::exp(-late * gammas[1]);
    CHECK(tail.probability[0] == doctest::Approx(want).epsilon(1e-6));

    CHECK_THROWS_AS(exponential_era(std::vector<double>{1.0}, c, gammas, std::vector<double>{1.0}), Error);
}

TEST_CASE("spectral amplitude follows the exponential era at intermediate times") {
    const auto model = toy::two_level_weak();
    const Resolvent res(model);
    const auto gammas = decay_rates(model);
    const auto c = localized_state(2, 0);
    const auto times = log_grid(0.2 / gammas[0], 3.0 / gammas[0], 12);
    const auto spectral = survival_amplitude(res, c, times);
    const auto era = exponential_era(model, c, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double a = std::abs(spectral.amplitude[k]), b = std::abs(era.amplitude[k]);
        CAPTURE(times[k]);
        CHECK(std::abs(a - b) <= 0.02 * b);
    }
}
