#include <doctest.h>

#include <chrono>
#include <cmath>

#include "bicost/errors.hpp"
#include "bicost/specfun.hpp"

using namespace bicost;

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

TEST_CASE("Bernoulli polynomials at hand-checked points") {
    // B_0 = 1, B_1(q) = q - 1/2, B_2(q) = q^2 - q + 1/6,
    // B_3(q) = q (q - 1/2)(q - 1).
    CHECK(bernoulli_poly(0, 0.3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bernoulli_poly(1, 0.3) == doctest::Approx(-0.2).epsilon(1e-15));
    CHECK(bernoulli_poly(2, 0.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(bernoulli_poly(2, 0.5) ==
          doctest::Approx(-1.0 / 12.0).epsilon(1e-14));
    CHECK(bernoulli_poly(3, 0.25) ==
          doctest::Approx(0.25 * (0.25 - 0.5) * (0.25 - 1.0)).epsilon(1e-14));
    // Symmetry B_n(1 - q) = (-1)^n B_n(q).
    for (int n = 0; n <= 4; ++n) {
        const double q = 0.37;
        CHECK(bernoulli_poly(n, 1.0 - q) ==
              doctest::Approx(std::pow(-1.0, n) * bernoulli_poly(n, q))
                  .epsilon(1e-13));
    }
}

TEST_CASE("zeta at non-positive integers via Bernoulli polynomials") {
    // zeta(-n, q) = -B_{n+1}(q)/(n+1); zeta(0, q) = 1/2 - q.
    CHECK(hurwitz_zeta_nonpos(0, 0.3) ==
          doctest::Approx(0.5 - 0.3).epsilon(1e-15));
    CHECK(hurwitz_zeta_nonpos(0, 1.0) == doctest::Approx(-0.5).epsilon(1e-15));
    // Riemann values: zeta(-1, 1) = -1/12, zeta(-2, 1) = 0.
    CHECK(hurwitz_zeta_nonpos(-1, 1.0) ==
          doctest::Approx(-1.0 / 12.0).epsilon(1e-15));
    CHECK(hurwitz_zeta_nonpos(-2, 1.0) == doctest::Approx(0.0));
    // The two distinguished arguments of the construction.
    const double qp = 0.5 + 1.0 / (2.0 * kSqrt3);
    const double qm = 0.5 - 1.0 / (2.0 * kSqrt3);
    CHECK(std::abs(hurwitz_zeta_nonpos(-1, qp)) < 1e-15);
    CHECK(std::abs(hurwitz_zeta_nonpos(-1, qm)) < 1e-15);
    CHECK(hurwitz_zeta_nonpos(-2, qp) ==
          doctest::Approx(kSqrt3 / 108.0).epsilon(1e-14));
    CHECK(hurwitz_zeta_nonpos(-2, qm) ==
          doctest::Approx(-kSqrt3 / 108.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)hurwitz_zeta_nonpos(1, 0.5), config_error);
}

TEST_CASE("mean-ratio roots are the zeros of zeta(-1, 1/2 - r)") {
    const auto [gm, gp] = solve_mean_ratio();
    CHECK(gp == doctest::Approx(1.0 / (4.0 * kSqrt3)).epsilon(1e-13));
    CHECK(gm == doctest::Approx(-1.0 / (4.0 * kSqrt3)).epsilon(1e-13));
    const auto [rm, rp] = solve_mean_ratio_timeindep();
    CHECK(rp == doctest::Approx(1.0 / (2.0 * kSqrt3)).epsilon(1e-13));
    CHECK(rm == doctest::Approx(-1.0 / (2.0 * kSqrt3)).epsilon(1e-13));
    // Both roots really annihilate the regularized diagonal sum.
    CHECK(std::abs(hurwitz_zeta_nonpos(-1, 0.5 - rp)) < 1e-14);
    CHECK(std::abs(hurwitz_zeta_nonpos(-1, 0.5 - rm)) < 1e-14);
}

TEST_CASE("cost constants") {
    const CostConstants k = default_cost_constants();
    CHECK(k.lambda0 == 1.0);
    CHECK(k.lambda1_sq == doctest::Approx(kSqrt3 / 432.0).epsilon(1e-14));
    CHECK(k.lambda2_sq == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(k.lambda12_sq ==
          doctest::Approx(k.lambda1_sq + k.lambda2_sq).epsilon(1e-15));
    CHECK(k.gamma == doctest::Approx(-1.0 / (4.0 * kSqrt3)).epsilon(1e-13));

    // The scale enters every weight quadratically.
    const CostConstants k2 = default_cost_constants(2.0);
    CHECK(k2.lambda1_sq == doctest::Approx(4.0 * k.lambda1_sq));
    CHECK(k2.lambda2_sq == doctest::Approx(4.0 * k.lambda2_sq));

    const CostConstants kov = default_cost_constants(1.0, 0.01);
    CHECK(kov.lambda2_sq == 0.01);
    CHECK(kov.lambda12_sq == doctest::Approx(kov.lambda1_sq + 0.01));

    CHECK_THROWS_AS((void)default_cost_constants(0.0), config_error);
    CHECK_THROWS_AS((void)default_cost_constants(1.0, -0.1), config_error);
}

TEST_CASE("regularized off-diagonal sum vanishes on the actual spectrum") {
    // sum_n [(n + 1/2)^2 + 3/4] regularizes to zero, so the off-diagonal
    // weight cannot be fixed by the construction and stays free.
    CHECK(std::abs(epstein_hurwitz_regularized(0.5, 0.75)) < 1e-15);
    // With beta^2 = 0 it collapses to plain zeta(-2, alpha).
    const double qp = 0.5 + 1.0 / (2.0 * kSqrt3);
    CHECK(epstein_hurwitz_regularized(qp, 0.0) ==
          doctest::Approx(hurwitz_zeta_nonpos(-2, qp)).epsilon(1e-13));
}

TEST_CASE("constants evaluate fast enough for interactive use") {
    const auto t0 = std::chrono::steady_clock::now();
    volatile double sink = 0;
    for (int i = 0; i < 100; ++i) {
        const auto [gm, gp] = solve_mean_ratio();
        sink = sink + gp - gm + default_cost_constants().lambda1_sq;
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    CHECK(ms < 100.0); // 100 full evaluations in well under 1 ms each
}
