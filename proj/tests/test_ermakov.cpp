#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bicost/ermakov.hpp"
#include "bicost/errors.hpp"
#include "bicost/profile.hpp"

using namespace bicost;

namespace {

// Off-grid sampling avoids accidentally checking only accepted step points.
std::vector<double> sample_times(double t0, double t1, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(t0 + (t1 - t0) * (i + 0.5) / n);
    return out;
}

} // namespace

TEST_CASE("constant frequency: the equilibrium solution stays put") {
    const double omega = 2.0;
    const CoefficientProfile p = CoefficientProfile::constant(omega);
    const double rho_eq = 1.0 / std::sqrt(omega);
    const AuxiliaryTrajectory traj =
        solve_auxiliary_otf(p, 0.0, 5.0, rho_eq, 0.0);
    for (double t : sample_times(0, 5, 17)) {
        CHECK(traj.rho(t) == doctest::Approx(rho_eq).epsilon(1e-9));
        CHECK(std::abs(traj.rho_dot(t)) < 1e-8);
        // theta = omega t for the equilibrium solution
        CHECK(traj.theta(t) == doctest::Approx(omega * t).epsilon(1e-8));
    }
    CHECK(traj.max_residual() < 1e-6);
}

TEST_CASE("constant frequency, displaced start: f is conserved") {
    // f = rho'^2 + omega^2 rho^2 + 1/rho^2 is the Ermakov invariant (up to
    // the factor 2 omega) for constant omega, so it must hold over many
    // periods for arbitrary initial data.
    const double omega = 1.7;
    const CoefficientProfile p = CoefficientProfile::constant(omega);
    const double T = 10.0 * 2.0 * M_PI / omega; // ten periods
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u_rho(0.4, 1.6),
        u_vel(-0.8, 0.8);
    for (int trial = 0; trial < 5; ++trial) {
        const double r0 = u_rho(rng), v0 = u_vel(rng);
        const AuxiliaryTrajectory traj =
            solve_auxiliary_otf(p, 0.0, T, r0, v0);
        const DerivedFunctions df(traj, OtfOscillator{p});
        const double f0 = df.f(0.0);
        for (double t : sample_times(0, T, 23))
            CHECK(std::abs(df.f(t) - f0) / f0 < 1e-8);
    }
}

TEST_CASE("closed forms satisfy their governing equations") {
    struct Case {
        AnalyticKind kind;
        AnalyticParams p;
        double t1;
    };
    const Case cases[] = {
        {AnalyticKind::constant, {.omega = 1.3}, 4.0},
        {AnalyticKind::example1case1, {.b1 = 1.0, .b2 = 1.0}, 5.0},
        {AnalyticKind::example1case2, {.b1 = 1.0, .b2 = 2.0}, 5.0},
        {AnalyticKind::example2, {.l1 = 0.5, .l2 = 1.0}, 5.0},
        {AnalyticKind::quench, {.delta = 1.0, .eta = 1.0}, 6.0},
        {AnalyticKind::ck, {.omega = 1.0, .M = 1.0, .Delta = 0.3}, 2.0},
    };
    for (const Case& c : cases) {
        const AuxiliaryTrajectory traj =
            analytic_auxiliary(c.kind, c.p, 0.0, c.t1);
        CAPTURE(traj.source());
        CHECK(traj.is_analytic());
        CHECK(traj.max_residual() < 1e-6);
    }
}

TEST_CASE("numeric solver reproduces the closed forms") {
    // Seed the solver with the closed form's initial data and compare
    // pointwise; this is the main correctness check of the solver.
    struct Case {
        AnalyticKind kind;
        AnalyticParams p;
        double t1;
        double tol;
    };
    const Case cases[] = {
        {AnalyticKind::example1case1, {.b1 = 1.0, .b2 = 1.0}, 5.0, 1e-8},
        {AnalyticKind::example1case2, {.b1 = 1.0, .b2 = 2.0}, 5.0, 1e-8},
        {AnalyticKind::example2, {.l1 = 0.5, .l2 = 1.0}, 5.0, 1e-8},
        {AnalyticKind::quench, {.delta = 1.0, .eta = 1.0}, 6.0, 1e-8},
    };
    for (const Case& c : cases) {
        const AuxiliaryTrajectory exact =
            analytic_auxiliary(c.kind, c.p, 0.0, c.t1);
        CAPTURE(exact.source());
        CoefficientProfile omega;
        switch (c.kind) {
        case AnalyticKind::example1case1:
        case AnalyticKind::example1case2:
            omega = make_example1_profile(c.p.b1, c.p.b2);
            break;
        case AnalyticKind::example2:
            omega = make_example2_profile(c.p.l1, c.p.l2);
            break;
        default:
            omega = make_quench_profile(c.p.delta, c.p.eta);
            break;
        }
        const AuxiliaryTrajectory num = solve_auxiliary_otf(
            omega, 0.0, c.t1, exact.rho(0.0), exact.rho_dot(0.0));
        for (double t : sample_times(0, c.t1, 29)) {
            CHECK(num.rho(t) ==
                  doctest::Approx(exact.rho(t)).epsilon(c.tol));
            CHECK(num.rho_dot(t) ==
                  doctest::Approx(exact.rho_dot(t)).epsilon(1e-6));
        }
    }
}

TEST_CASE("two-coefficient solver reproduces the damped closed form") {
    const double M = 1.0, omega = 1.0, Delta = 0.3;
    const CkCoefficients ck = make_ck_coefficients(M, omega, Delta);
    AnalyticParams ap;
    ap.M = M;
    ap.omega = omega;
    ap.Delta = Delta;
    const AuxiliaryTrajectory exact =
        analytic_auxiliary(AnalyticKind::ck, ap, 0.0, 2.0);
    const AuxiliaryTrajectory num = solve_auxiliary_otmf(
        ck.A1, ck.B1, 0.0, 2.0, exact.rho(0.0), exact.rho_dot(0.0));
    for (double t : sample_times(0, 2, 19))
        CHECK(num.rho(t) == doctest::Approx(exact.rho(t)).epsilon(1e-8));
}

TEST_CASE("derived-function identities hold on every profile") {
    // g1^2 + g2^2 = f^2 - 4 Omega^2 (OTF) and f1 f2 = f3^2 - 4 A1 B1
    // (both families), checked at off-grid times.
    struct Case {
        AnalyticKind kind;
        AnalyticParams p;
        double t1;
    };
    const Case cases[] = {
        {AnalyticKind::constant, {.omega = 0.8}, 4.0},
        {AnalyticKind::example1case1, {.b1 = 1.0, .b2 = 1.0}, 5.0},
        {AnalyticKind::example1case2, {.b1 = 1.0, .b2 = 2.0}, 5.0},
        {AnalyticKind::example2, {.l1 = 0.5, .l2 = 1.0}, 5.0},
        {AnalyticKind::quench, {.delta = 1.0, .eta = 1.0}, 6.0},
        {AnalyticKind::ck, {.omega = 1.0, .M = 1.0, .Delta = 0.3}, 2.0},
    };
    for (const Case& c : cases) {
        const AuxiliaryTrajectory traj =
            analytic_auxiliary(c.kind, c.p, 0.0, c.t1);
        CAPTURE(traj.source());
        DerivedFunctions df = [&] {
            if (c.kind == AnalyticKind::ck) {
                const CkCoefficients ck =
                    make_ck_coefficients(c.p.M, c.p.omega, c.p.Delta);
                return DerivedFunctions(traj, OtmfOscillator{ck.A1, ck.B1});
            }
            CoefficientProfile omega;
            switch (c.kind) {
            case AnalyticKind::constant:
                omega = CoefficientProfile::constant(c.p.omega);
                break;
            case AnalyticKind::example1case1:
            case AnalyticKind::example1case2:
                omega = make_example1_profile(c.p.b1, c.p.b2);
                break;
            case AnalyticKind::example2:
                omega = make_example2_profile(c.p.l1, c.p.l2);
                break;
            default:
                omega = make_quench_profile(c.p.delta, c.p.eta);
                break;
            }
            return DerivedFunctions(traj, OtfOscillator{omega});
        }();
        for (double t : sample_times(0.0, c.t1, 200)) {
            const double f = df.f(t);
            const double gap = f * f - df.four_omega_sq(t);
            const double scale = std::max(1.0, f * f);
            if (df.family() == OscFamily::otf) {
                const double g1 = df.g1(t), g2 = df.g2_mag(t);
                CHECK(std::abs(g1 * g1 + g2 * g2 - gap) / scale < 1e-8);
            }
            CHECK(std::abs(df.f1f2(t) - gap) / scale < 1e-8);
            // |f1|^2 must agree with the product form
            const std::complex<double> f1 = df.f1(t);
            CHECK(std::abs(std::norm(f1) - df.f1f2(t)) / scale < 1e-8);
        }
    }
}

TEST_CASE("integral form of f matches the algebraic form") {
    const CoefficientProfile omega = make_example1_profile(1.0, 1.0);
    AnalyticParams ap;
    ap.b1 = 1.0;
    ap.b2 = 1.0;
    const AuxiliaryTrajectory traj =
        analytic_auxiliary(AnalyticKind::example1case1, ap, 0.0, 4.0);
    const DerivedFunctions df(traj, OtfOscillator{omega});
    const double c = df.f(0.0);
    for (double t : {0.5, 1.0, 2.5, 4.0})
        CHECK(f_integral_form(traj, omega, c, t) ==
              doctest::Approx(df.f(t)).epsilon(1e-8));
}

TEST_CASE("phase satisfies the Schwarzian relation") {
    const CoefficientProfile omega = make_quench_profile(1.0, 1.0);
    AnalyticParams ap; // defaults delta = eta = 1
    const AuxiliaryTrajectory traj =
        analytic_auxiliary(AnalyticKind::quench, ap, 0.0, 5.0);
    for (double t : {0.7, 1.9, 3.3, 4.6}) {
        const SchwarzianCheck sc = schwarzian_check(traj, omega, t);
        CHECK(std::abs(sc.residual) < 1e-6);
    }
}

TEST_CASE("collapse towards rho = 0 raises a singularity error") {
    // A strongly inverted start drives rho through its floor.
    const CoefficientProfile p = CoefficientProfile::constant(1.0);
    CHECK_THROWS_AS((void)solve_auxiliary_otf(p, 0.0, 2.0, 1e-5, -10.0),
                    numeric_error);
    CHECK_THROWS_AS((void)solve_auxiliary_otf(p, 0.0, 1.0, -1.0, 0.0),
                    config_error);
}

TEST_CASE("ground-state initial data") {
    const CoefficientProfile p = make_example1_profile(2.0, 1.0);
    const auto [r0, v0] = ground_state_initial(p, 0.0);
    CHECK(r0 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(v0 == 0.0);
}

TEST_CASE("Lewis-Riesenfeld phase sign and scaling") {
    const CoefficientProfile p = CoefficientProfile::constant(1.0);
    const AuxiliaryTrajectory traj = solve_auxiliary_otf(p, 0.0, 2.0, 1.0, 0.0);
    const DerivedFunctions df(traj, OtfOscillator{p});
    // Theta_n = -(n + 1/2) theta, theta(2) = 2 for the equilibrium solution
    CHECK(df.Theta_n(0, 2.0) == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(df.Theta_n(3, 2.0) == doctest::Approx(-7.0).epsilon(1e-8));
}
