#include "doctest.h"
#include "toy_models.hpp"

#include "friedrichs/error.hpp"
#include "friedrichs/resolvent.hpp"

#include <cmath>
#include <numbers>

using namespace friedrichs;

TEST_CASE("s_matrix matches the partial-fraction closed form") {
    const auto model = toy::single_level(0.1);
    const Resolvent res(model);
    for (cplx z : {cplx{-1.0, 0.0}, cplx{2.0, 1.0}, cplx{0.5, 1e-3}, cplx{-30.0, 4.0}, cplx{0.01, -0.2}}) {
        const cplx got = res.self_energy(z).values(0, 0);
        const cplx want = toy::single_level_s(z);
        CAPTURE(z);
        CHECK(std::abs(got - want) <= 1e-10 * std::abs(want));
    }
}

TEST_CASE("s_matrix edge cases") {
    ModelSpec zero = toy::two_level_broad();
    zero.levels[0].form_factor = FormFactor::power_law_cutoff(0.0, 0.5, 1.5, 3.0);
    zero.levels[1].form_factor = FormFactor::power_law_cutoff(0.0, 0.5, 1.5, 4.0);
    CHECK(s_matrix(zero, cplx{1.0, 1.0}).values.norm() == 0.0);

    const Resolvent res(toy::two_level_broad());
    const auto up = res.self_energy(cplx{2.0, 1.0}).values;
    const auto down = res.self_energy(cplx{2.0, -1.0}).values;
    CHECK((down - up.adjoint()).norm() <= 1e-10 * up.norm());

    CHECK_THROWS_AS(res.self_energy(cplx{1.0, 0.0}), Error);
    try {
        res.self_energy(cplx{3.0, 0.0});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OnCut);
    }
    // negative real axis is off the cut
    CHECK(std::isfinite(res.self_energy(cplx{-2.0, 0.0}).values.norm()));
}

TEST_CASE("boundary values: principal value against closed form") {
    const Resolvent res(toy::single_level(0.1));
    for (double w : {1e-6, 0.01, 0.5, 1.0, 2.5, 10.0, 99.0}) {
        const auto bv = res.boundary_values(w);
        CAPTURE(w);
        CHECK(std::abs(bv.I(0, 0).real() - toy::single_level_I(w)) <= 1e-12);
        CHECK(std::abs(bv.I(0, 0).imag()) <= 1e-15);
    }
    CHECK(std::abs(res.principal_value_at_zero()(0, 0).real() + 1.0 / 3.0) < 1e-13);
}

TEST_CASE("boundary values: jump and sum rules") {
    const Resolvent res(toy::single_level(0.1));
    const auto at1 = res.boundary_values(1.0);
    CHECK(std::abs(at1.s_plus(0, 0).imag() + std::numbers::pi / 16.0) < 1e-14);

    const Resolvent two(toy::two_level_broad());
    for (double w : {1e-9, 0.3, 1.3, 7.0}) {
        const auto bv = two.boundary_values(w);
        CHECK((bv.s_plus + bv.s_minus - 2.0 * bv.I).norm() < 1e-12 * bv.I.norm());
        CHECK((bv.I - bv.I.adjoint()).norm() < 1e-14 * bv.I.norm());
    }
    // jump vanishes at threshold, s_plus -> I(0)
    const auto tiny = two.boundary_values(1e-12);
    CHECK((tiny.s_plus - two.principal_value_at_zero()).norm() < 1e-6 * two.principal_value_at_zero().norm());
}

TEST_CASE("g_inverse_matrix") {
    auto free_model = toy::two_level_broad(0.0);
    const auto g0 = g_inverse_matrix(free_model, 0.7, Branch::Plus);
    CHECK(std::abs(g0(0, 0) - 0.3) < 1e-15);
    CHECK(std::abs(g0(1, 1) - 0.9) < 1e-15);
    CHECK(std::abs(g0(0, 1)) == 0.0);

    const Resolvent res(toy::two_level_broad());
    const double lam2 = 1e-4;
    const auto plus = res.g_inverse(0.9, Branch::Plus);
    const auto minus = res.g_inverse(0.9, Branch::Minus);
    const Eigen::VectorXcd v = res.model().form_factors(0.9);
    const cplx i{0.0, 1.0};
    CHECK((plus - minus + 2.0 * std::numbers::pi * i * lam2 * v * v.adjoint()).norm() < 1e-12 * plus.norm());

    // omega -> 0+: diag(w_n) + lambda^2 I(0)
    Eigen::MatrixXcd limit = lam2 * res.principal_value_at_zero();
    limit.diagonal() += res.model().omegas().cast<cplx>();
    CHECK((res.g_inverse(1e-10, Branch::Plus) - limit).norm() < 1e-6);
}

TEST_CASE("g_zero_limit expansion terms") {
    ModelSpec m = toy::two_level_broad();
    m.levels[1].omega = 2.0;
    const Resolvent res(m);
    const auto exp = res.g_zero_limit(3);
    REQUIRE(exp.terms.size() == 4);
    CHECK(std::abs(exp.terms[0](0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(exp.terms[0](1, 1) - 0.5) < 1e-15);
    CHECK(std::abs(exp.terms[0](0, 1)) == 0.0);
    const auto& I0 = res.principal_value_at_zero();
    CHECK(std::abs(exp.terms[1](0, 1) + I0(0, 1) / 2.0) < 1e-14 * std::abs(I0(0, 1)));

    // g_exact solves the defining equation
    Eigen::MatrixXcd limit = 1e-4 * I0;
    limit.diagonal() += m.omegas().cast<cplx>();
    CHECK((exp.g_exact * limit - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);

    // singular limit: lambda^2 I(0) cancels w_1
    ModelSpec singular = toy::single_level(0.0);
    singular.lambda = std::sqrt(3.0);  // w1 + lambda^2 (-1/3) = 0
    CHECK_THROWS_AS(g_zero_limit(singular, 2), Error);
}

TEST_CASE("finite-epsilon limit of s_matrix approaches boundary values") {
    const Resolvent res(toy::two_level_broad());
    for (double w : {0.2, 1.0, 3.7}) {
        const auto bv = res.boundary_values(w);
        double prev = 0.0;
        for (double eps : {1e-3, 1e-4, 1e-5}) {
            const auto s = res.self_energy(cplx{w, eps}).values;
            const double err = (s - bv.s_plus).norm() / bv.s_plus.norm();
            if (prev > 0.0) CHECK(err < 0.2 * prev);
            prev = err;
        }
        CHECK(prev < 1e-4);
    }
}
