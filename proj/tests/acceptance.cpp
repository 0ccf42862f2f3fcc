// Acceptance gate: every release-blocking property of the toolkit, one
// line of output per criterion, nonzero exit if any fails.  Tolerances are
// part of the contract and are asserted exactly as stated.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bicost/cost.hpp"
#include "bicost/csv.hpp"
#include "bicost/equivalence.hpp"
#include "bicost/ermakov.hpp"
#include "bicost/errors.hpp"
#include "bicost/profile.hpp"
#include "bicost/quench.hpp"
#include "bicost/specfun.hpp"
#include "bicost/su11.hpp"
#include "bicost/svg.hpp"

using namespace bicost;

namespace {

const double kSqrt3 = std::sqrt(3.0);

struct Failure {
    std::string message;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw Failure{message};
}

std::string fmt(const char* format, double a, double b = 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, format, a, b);
    return buf;
}

double rel(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = a + (b - a) * i / (n - 1);
    return out;
}

struct ProfileCase {
    AnalyticKind kind;
    AnalyticParams p;
    double t1;
};

const std::vector<ProfileCase>& all_profiles() {
    static const std::vector<ProfileCase> cases = {
        {AnalyticKind::constant, {.omega = 1.3}, 4.0},
        {AnalyticKind::example1case1, {.b1 = 1.0, .b2 = 1.0}, 5.0},
        {AnalyticKind::example1case2, {.b1 = 1.0, .b2 = 2.0}, 5.0},
        {AnalyticKind::example2, {.l1 = 0.5, .l2 = 1.0}, 5.0},
        {AnalyticKind::quench, {.delta = 1.0, .eta = 1.0}, 6.0},
        {AnalyticKind::ck, {.omega = 1.0, .M = 1.0, .Delta = 0.3}, 2.0},
    };
    return cases;
}

DerivedFunctions derived_for(const ProfileCase& c,
                             const AuxiliaryTrajectory& traj) {
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
}

// ------------------------------------------------------------ criteria

void c01_zeta_backbone() {
    // warm the code path, then time one full evaluation
    (void)solve_mean_ratio();
    const auto t0 = std::chrono::steady_clock::now();
    const auto [gm, gp] = solve_mean_ratio();
    const auto [rm, rp] = solve_mean_ratio_timeindep();
    const CostConstants k = default_cost_constants();
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    require(std::abs(gp - 1.0 / (4.0 * kSqrt3)) < 1e-12 &&
                std::abs(gm + 1.0 / (4.0 * kSqrt3)) < 1e-12,
            "mean-ratio roots differ from +-1/(4 sqrt3)");
    require(std::abs(rp - 1.0 / (2.0 * kSqrt3)) < 1e-12 &&
                std::abs(rm + 1.0 / (2.0 * kSqrt3)) < 1e-12,
            "static mean-ratio roots differ from +-1/(2 sqrt3)");
    require(std::abs(hurwitz_zeta_nonpos(-1, 0.5 - rp)) < 1e-12 &&
                std::abs(hurwitz_zeta_nonpos(-1, 0.5 + rp)) < 1e-12,
            "zeta(-1) does not vanish at the roots");
    require(std::abs(hurwitz_zeta_nonpos(-2, 0.5 + rp) - kSqrt3 / 108.0) <
                1e-12,
            "zeta(-2, 1/2 + 1/(2 sqrt3)) != sqrt3/108");
    require(std::abs(hurwitz_zeta_nonpos(-2, 0.5 - rp) + kSqrt3 / 108.0) <
                1e-12,
            "zeta(-2, 1/2 - 1/(2 sqrt3)) != -sqrt3/108");
    require(std::abs(k.lambda1_sq - kSqrt3 / 432.0) < 1e-12,
            "lambda1^2 != sqrt3/432");
    require(ms < 1.0, fmt("constant evaluation took %.3f ms (limit 1)", ms));
}

void c02_constant_reduces_to_static() {
    const CostConstants k = default_cost_constants();
    for (double omega : {0.5, 1.0, 2.3}) {
        AnalyticParams ap;
        ap.omega = omega;
        const AuxiliaryTrajectory traj =
            analytic_auxiliary(AnalyticKind::constant, ap, 0.0, 3.0);
        const DerivedFunctions df(
            traj, OtfOscillator{CoefficientProfile::constant(omega)});
        TimeIndepGeneralized spec;
        spec.A0 = omega * omega;
        spec.B0 = 1.0;
        const double stat = cost_timeindep(spec, k).F2;
        for (double t : {0.0, 1.1, 2.7})
            require(rel(cost_squared(df, k, t), stat) < 1e-12,
                    fmt("constant-frequency cost differs from the static "
                        "formula at omega=%g (rel %.2e)",
                        omega, rel(cost_squared(df, k, t), stat)));
    }
}

void c03_drive_is_free() {
    const CostConstants k = default_cost_constants();
    TimeIndepGeneralized spec;
    spec.A0 = 2.0;
    spec.B0 = 1.5;
    spec.C0 = 0.8;
    const double undriven = cost_timeindep(spec, k).F2;
    spec.F0 = 0.0;
    const TimeIndepCost driven = cost_timeindep(spec, k);
    require(driven.F2_driven_route.has_value(),
            "driven route not reported");
    require(rel(*driven.F2_driven_route, undriven) < 1e-12,
            fmt("driven-route cost differs (rel %.2e)",
                rel(*driven.F2_driven_route, undriven)));
    require(rel(driven.F2, undriven) < 1e-12,
            "driving changed the reported cost");
}

void c04_inverse_square_is_free() {
    const CostConstants k = default_cost_constants();
    TimeIndepGeneralized spec;
    spec.A0 = 1.2;
    spec.B0 = 0.9;
    double ref = 0;
    for (double D0 : {0.1, 1.0, 10.0}) {
        spec.D0 = D0;
        const TimeIndepCost tc = cost_timeindep(spec, k);
        if (ref == 0)
            ref = tc.F2;
        else
            require(rel(tc.F2, ref) < 1e-12,
                    fmt("cost moved with D0=%g (rel %.2e)", D0,
                        rel(tc.F2, ref)));
        require(tc.isotonic.has_value(), "isotonic info missing");
        const double eps = tc.isotonic->epsilon;
        const int want = eps > 1.0 / kSqrt3 ? 1 : -1;
        require(tc.isotonic->mean_sign == want,
                fmt("mean sign wrong at epsilon=%g", eps));
    }
    // the sign flip itself: epsilon below vs above 1/sqrt3
    spec.A0 = spec.B0 = 1.0;
    spec.D0 = 0.05;
    require(cost_timeindep(spec, k).isotonic->mean_sign == -1,
            "mean sign below the flip should be -1");
    spec.D0 = 0.2;
    require(cost_timeindep(spec, k).isotonic->mean_sign == +1,
            "mean sign above the flip should be +1");
}

void c05_f_conservation() {
    const double omega = 1.7;
    const CoefficientProfile p = CoefficientProfile::constant(omega);
    const double T = 10.0 * 2.0 * M_PI / omega;
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u_rho(0.4, 1.6), u_vel(-0.8, 0.8);
    for (int trial = 0; trial < 5; ++trial) {
        const AuxiliaryTrajectory traj =
            solve_auxiliary_otf(p, 0.0, T, u_rho(rng), u_vel(rng));
        const DerivedFunctions df(traj, OtfOscillator{p});
        const double f0 = df.f(0.0);
        for (double t : linspace(0.0, T, 97)) {
            const double drift = std::abs(df.f(t) - f0) / f0;
            require(drift < 1e-8,
                    fmt("f drifted by %.2e after t=%.1f", drift, t));
        }
    }
}

void c06_derived_identities() {
    for (const ProfileCase& c : all_profiles()) {
        const AuxiliaryTrajectory traj =
            analytic_auxiliary(c.kind, c.p, 0.0, c.t1);
        const DerivedFunctions df = derived_for(c, traj);
        for (int i = 0; i < 200; ++i) {
            const double t = c.t1 * (i + 0.5) / 200.0;
            const double f = df.f(t);
            const double gap = f * f - df.four_omega_sq(t);
            const double scale = std::max(1.0, f * f);
            if (df.family() == OscFamily::otf) {
                const double g1 = df.g1(t), g2 = df.g2_mag(t);
                require(std::abs(g1 * g1 + g2 * g2 - gap) / scale < 1e-8,
                        "g1^2 + g2^2 != f^2 - 4 Omega^2 on " +
                            traj.source());
            }
            require(std::abs(df.f1f2(t) - gap) / scale < 1e-8,
                    "f1 f2 != f3^2 - 4 A1 B1 on " + traj.source());
        }
    }
}

void c07_falloff_closed_forms() {
    const CostConstants k = default_cost_constants();
    // case 1: total cost against (lambda3/b2) ln(1 + b2 T / b1)
    const double b1 = 1.0, b2 = 1.0;
    const double lambda3 = std::sqrt(
        (16 * k.lambda1_sq + 4 * b2 * b2 * k.lambda2_sq) / (4 - b2 * b2));
    const CoefficientProfile omega = make_example1_profile(b1, b2);
    AnalyticParams ap;
    ap.b1 = b1;
    ap.b2 = b2;
    for (double T : {0.5, 1.0, 5.0}) {
        const AuxiliaryTrajectory traj =
            analytic_auxiliary(AnalyticKind::example1case1, ap, 0.0, T);
        const DerivedFunctions df(traj, OtfOscillator{omega});
        const CostTrajectory ct = total_cost(
            [&](double t) { return cost_squared(df, k, t); },
            [&](double t) { return df.f(t); }, k, 0.0, T, 21);
        const double closed = lambda3 / b2 * std::log1p(b2 * T / b1);
        require(rel(ct.cumulative.back(), closed) < 1e-6,
                fmt("case-1 total cost at T=%g off by rel %.2e", T,
                    rel(ct.cumulative.back(), closed)));
    }
    // case 2: pointwise F^2 against the log-square form
    const CoefficientProfile omega2 = make_example1_profile(b1, 2.0);
    AnalyticParams ap2;
    ap2.b1 = b1;
    ap2.b2 = 2.0;
    const AuxiliaryTrajectory traj2 =
        analytic_auxiliary(AnalyticKind::example1case2, ap2, 0.0, 6.0);
    const DerivedFunctions df2(traj2, OtfOscillator{omega2});
    for (double t : linspace(0.0, 6.0, 61)) {
        const double u = b1 + 2 * t;
        const double lnu = std::log(u);
        const double G = 0.25 * std::pow(6.0 + 2.0 * lnu + lnu * lnu, 2);
        const double want =
            (G * k.lambda12_sq - 4.0 * k.lambda2_sq) / (u * u);
        require(rel(cost_squared(df2, k, t), want) < 1e-8,
                fmt("case-2 F^2 at t=%g off by rel %.2e", t,
                    rel(cost_squared(df2, k, t), want)));
    }
}

void c08_damped_stationary_cost() {
    const CostConstants k = default_cost_constants();
    const double M = 1.0, omega = 1.0, Delta = 0.3;
    const double w0sq = omega * omega - 0.25 * Delta * Delta;
    AnalyticParams ap;
    ap.M = M;
    ap.omega = omega;
    ap.Delta = Delta;
    const AuxiliaryTrajectory traj =
        analytic_auxiliary(AnalyticKind::ck, ap, 0.0, 2.0);
    const CkCoefficients ck = make_ck_coefficients(M, omega, Delta);
    const DerivedFunctions df(traj, OtmfOscillator{ck.A1, ck.B1});
    const double want = 4.0 * omega * omega *
                        (k.lambda12_sq * omega * omega / w0sq -
                         k.lambda2_sq);
    const double f20 = cost_squared(df, k, 0.0);
    require(rel(f20, want) < 1e-10,
            fmt("stationary cost differs from formula (rel %.2e)",
                rel(f20, want)));
    for (double t : linspace(0.0, 2.0, 41))
        require(std::abs(cost_squared(df, k, t) - f20) / f20 < 1e-10,
                fmt("cost varies in time at t=%g", t));
}

void c09_group_checks() {
    using namespace su11;
    const auto t_start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(7041);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    int hyperbolic = 0, small = 0;
    for (int i = 0; i < 100; ++i) {
        Triple b;
        Triple c;
        bool ok = false;
        while (!ok) {
            b = Triple{u(rng), u(rng), u(rng)};
            if (i % 4 == 0) {
                b.k0 *= 1e-5;
                b.kp *= 1e-5;
                b.km *= 1e-5;
                ++small;
            }
            try {
                c = decompose_b_to_c(b);
                ok = true;
            } catch (const numeric_error&) {
                if (i % 4 == 0) --small;
            }
        }
        if (chi_of(b).imag() != 0.0) ++hyperbolic;
        const Mat2 mb = matrix_from_b(b);
        require(max_abs_diff(mb, matrix_from_c(c)) < 1e-10,
                fmt("decomposition mismatch at draw %d", i));
        require(max_abs_diff(matrix_from_b(b_from_matrix(mb)), mb) < 1e-10,
                fmt("matrix -> exponent round trip mismatch at draw %d",
                    i));
    }
    require(small >= 25, "chi ~ 0 branch not exercised");
    require(hyperbolic > 10, "imaginary-chi draws not exercised");

    SolveOptions tight;
    tight.abs_tol = tight.rel_tol = 1e-12;
    const std::vector<double> grid = linspace(0.0, 1.0, 801);
    {
        const ClassicalTrajectory xc =
            solve_classical(CoefficientProfile::constant(1.0),
                            CoefficientProfile::constant(1.0), 0.0, 1.0,
                            1.0, 0.0, tight);
        const double r = verify_schrodinger_residual(
            [&](double t) {
                return matrix_from_c(evolution_c_coefficients(xc, t));
            },
            [](double) { return hamiltonian_matrix(1.0, 1.0); }, grid);
        require(r < 1e-6,
                fmt("constant-oscillator evolution residual %.2e", r));
    }
    {
        const CkCoefficients ck = make_ck_coefficients(1.0, 1.0, 0.3);
        const CoefficientProfile m1 = profile_reciprocal(ck.B1);
        const CoefficientProfile om1sq = CoefficientProfile::from_functions(
            [ck](double t) { return ck.A1(t) * ck.B1(t); },
            [ck](double t) {
                return ck.A1.deriv(t) * ck.B1(t) + ck.A1(t) * ck.B1.deriv(t);
            },
            [ck](double t) {
                return ck.A1.deriv2(t) * ck.B1(t) +
                       2 * ck.A1.deriv(t) * ck.B1.deriv(t) +
                       ck.A1(t) * ck.B1.deriv2(t);
            },
            ck.A1.domain());
        const ClassicalTrajectory xc =
            solve_classical(m1, om1sq, 0.0, 1.0, 1.0, 0.0, tight);
        const double r = verify_schrodinger_residual(
            [&](double t) {
                return matrix_from_c(evolution_c_coefficients(xc, t));
            },
            [&](double t) {
                return hamiltonian_matrix(ck.A1(t), ck.B1(t));
            },
            grid);
        require(r < 1e-6,
                fmt("damped-oscillator evolution residual %.2e", r));
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t_start)
                          .count();
    require(ms < 1000.0, fmt("group checks took %.0f ms (limit 1000)", ms));
}

void c10_clock_change_equivalence() {
    const CostConstants k = default_cost_constants();
    const CkCoefficients ck = make_ck_coefficients(1.0, 1.0, 0.3);
    for (double T : {0.5, 1.0}) {
        const MappedPair pair =
            build_equivalent_pair(OtmfOscillator{ck.A1, ck.B1}, T);
        const CostEquivalence ce = verify_cost_equivalence(pair, k);
        require(ce.gap_rel < 1e-6,
                fmt("total costs differ at T=%g (rel %.2e)", T,
                    ce.gap_rel));
        const double sup = verify_f3_mapping(pair);
        require(sup < 1e-6, fmt("f3 mapping off at T=%g (sup %.2e)", T, sup));
    }
}

void c11_cost_bound() {
    const CostConstants k = default_cost_constants();
    for (const ProfileCase& c : all_profiles()) {
        const AuxiliaryTrajectory traj =
            analytic_auxiliary(c.kind, c.p, 0.0, c.t1);
        const DerivedFunctions df = derived_for(c, traj);
        for (int i = 0; i <= 20; ++i) {
            const double T = c.t1 * i / 20.0;
            if (i == 0) continue; // both sides vanish at T = 0
            const CostTrajectory ct = total_cost(
                [&](double t) { return cost_squared(df, k, t); },
                [&](double t) { return df.f(t); }, k, 0.0, T, 11, 1e-10,
                traj.breakpoints());
            const double bound = cost_bound(df, k, T);
            require(ct.cumulative.back() < bound,
                    fmt("bound violated at T=%g on ", T) + traj.source());
        }
    }
}

void c12_quench_basics() {
    using namespace quench;
    const CostConstants k = default_cost_constants();
    for (double beta : {0.1, 0.7, 2.0, 5.0}) {
        const QuenchParams p = QuenchParams::from_beta(beta);
        // closed-form rho solves the auxiliary equation
        for (double s : linspace(0.05, 12.0, 97)) {
            const RhoPoint r = quench_rho(p, s);
            const double Om = quench_omega(p, s);
            const double resid =
                r.rho_ddot + Om * Om * r.rho - 1.0 / std::pow(r.rho, 3);
            require(std::abs(resid) /
                            std::max(1.0, std::abs(r.rho_ddot)) <
                        1e-8,
                    fmt("auxiliary residual %.2e at beta=%g", resid, beta));
        }
        require(rel(quench_f(p, 0.0), 2.0 * p.omega0()) < 1e-12,
                fmt("f(0) != 2 Omega_0 at beta=%g", beta));
        require(rel(quench_cost(p, k, 0.0),
                    4.0 * k.lambda1_sq * beta * beta) < 1e-10,
                fmt("F_N^2(0) != 4 lambda1^2 beta^2 at beta=%g", beta));
        require(shannon_delta(p, 0.0, ShannonMode::exact) == 0.0,
                "entropy change at s=0 must be exactly zero");
        const auto kz = kz_time(make_quench_profile(p.delta, p.eta));
        require(kz.has_value() && rel(*kz, p.delta / 2.0) < 1e-10,
                fmt("freeze-out time != delta/2 at beta=%g", beta));
    }
}

void c13_scaling_and_figures() {
    using namespace quench;
    using namespace bicost::io;
    const auto t_start = std::chrono::steady_clock::now();
    const CostConstants k = default_cost_constants();

    std::vector<double> grid;
    for (int i = 1; i <= 480; ++i) grid.push_back(0.0025 * i);
    const ScalingStudy st = scaling_study(k, 200.0, grid);
    require(st.power.exponent > 1.9 && st.power.exponent < 2.1,
            fmt("power-law exponent %.3f outside [1.9, 2.1]",
                st.power.exponent));
    require(rel(st.power.amplitude, 1.0 / 18.0) < 0.2,
            fmt("power-law amplitude %.4f vs 1/18 (rel > 20%%)",
                st.power.amplitude));
    require(rel(st.linear.slope, 0.0345) < 0.2,
            fmt("crossover slope %.4f vs 0.0345 (rel > 20%%)",
                st.linear.slope));

    std::filesystem::create_directories("acceptance_out");
    const Figure figs[] = {Figure::fig1, Figure::fig2, Figure::fig3};
    for (const Figure which : figs) {
        const FigureSeries fs = figure_data(which, k);
        Table tbl{fs.columns, fs.rows, fs.notes};
        const std::string base = "acceptance_out/" + fs.name;
        write_text_file(base + ".csv", to_csv(tbl));
        SvgStyle style;
        style.title = fs.name;
        style.x_label = "beta";
        style.y_label = which == Figure::fig3 ? "F_N^2" : "dS";
        write_text_file(base + ".svg", render_svg(tbl, style));

        if (which == Figure::fig1) {
            // exact stays below adiabatic; the s = 0.2 pair shows at
            // least three tangential contacts over beta in (0, 50]
            int contacts = 0;
            std::vector<double> gap;
            for (const auto& row : fs.rows) {
                for (std::size_t c = 1; c + 1 < row.size(); c += 2)
                    require(row[c] <= row[c + 1] + 1e-12,
                            "exact entropy exceeded the adiabatic value");
                gap.push_back(row[6] - row[5]); // s = 0.2 pair
            }
            for (std::size_t i = 1; i + 1 < gap.size(); ++i)
                if (gap[i] < gap[i - 1] && gap[i] < gap[i + 1] &&
                    gap[i] < 1e-6)
                    ++contacts;
            require(contacts >= 3,
                    fmt("expected >= 3 tangential contacts, saw %g",
                        contacts));
        }
        if (which == Figure::fig2) {
            // late-time column tracks the exact one at small beta
            double max_err = 0, range = 0;
            for (const auto& row : fs.rows) {
                if (row[0] > 0.05) continue;
                for (std::size_t c = 1; c + 1 < row.size(); c += 2) {
                    max_err = std::max(max_err,
                                       std::abs(row[c] - row[c + 1]));
                    range = std::max(range, std::abs(row[c]));
                }
            }
            require(range > 0 && max_err < 0.01 * range,
                    "late-time entropy drifts from the exact value");
        }
        if (which == Figure::fig3) {
            // quadratic onset: cost grows with beta for every s column
            for (std::size_t c = 1; c < fs.columns.size(); ++c)
                require(fs.rows[40][c] > fs.rows[4][c],
                        "cost does not grow with beta");
            // plateau at large s: for small beta the s = 20 and s = 200
            // columns coincide and sit on (lambda1^2 + lambda2^2) beta^2
            for (std::size_t i = 0; i < 5; ++i) {
                const double b = fs.rows[i][0];
                const double c20 = fs.rows[i][2];
                const double c200 = fs.rows[i][3];
                require(rel(c200, c20) < 0.01,
                        fmt("cost at s = 200 is not on the s = 20 plateau "
                            "(beta = %g, rel = %g)",
                            b, rel(c200, c20)));
                const double plateau =
                    (k.lambda1_sq + k.lambda2_sq) * b * b;
                require(rel(c200, plateau) < 0.05,
                        fmt("plateau amplitude off at beta = %g (rel %g)",
                            b, rel(c200, plateau)));
            }
        }
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t_start)
                          .count();
    require(ms < 30000.0, fmt("scaling study took %.0f ms (limit 30000)",
                              ms));
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        void (*run)();
    };
    const Criterion criteria[] = {
        {"zeta backbone and cost constants", c01_zeta_backbone},
        {"constant frequency reduces to the static cost",
         c02_constant_reduces_to_static},
        {"linear drive leaves the cost unchanged", c03_drive_is_free},
        {"inverse-square coupling leaves the cost unchanged",
         c04_inverse_square_is_free},
        {"f is conserved over ten periods", c05_f_conservation},
        {"derived-function identities on every profile",
         c06_derived_identities},
        {"falloff-profile closed forms", c07_falloff_closed_forms},
        {"damped-oscillator stationary cost", c08_damped_stationary_cost},
        {"group decomposition and evolution", c09_group_checks},
        {"clock-change equivalence of total costs",
         c10_clock_change_equivalence},
        {"cumulative cost stays below its bound", c11_cost_bound},
        {"quench closed forms and freeze-out", c12_quench_basics},
        {"scaling fits and summary figures", c13_scaling_and_figures},
    };

    int failures = 0;
    int id = 0;
    for (const Criterion& c : criteria) {
        ++id;
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            c.run();
        } catch (const Failure& f) {
            ok = false;
            detail = f.message;
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("unexpected error: ") + e.what();
        }
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
        if (ok) {
            std::printf("PASS %2d  %-52s (%7.1f ms)\n", id, c.name, ms);
        } else {
            std::printf("FAIL %2d  %-52s (%7.1f ms)  %s\n", id, c.name, ms,
                        detail.c_str());
            ++failures;
        }
    }
    if (failures == 0) {
        std::printf("all %d acceptance criteria hold\n", id);
        return 0;
    }
    std::printf("%d of %d acceptance criteria FAILED\n", failures, id);
    return 1;
}
