#include "bicost/ermakov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bicost/errors.hpp"
#include "bicost/ode.hpp"
#include "bicost/quadrature.hpp"

namespace bicost {

// ---------------------------------------------------------------------------
// trajectory storage
// ---------------------------------------------------------------------------

struct AuxiliaryTrajectory::Impl {
    bool analytic = false;
    double t0 = 0, t1 = 0;
    std::string source;
    std::vector<double> times;
    std::vector<double> breakpoints; ///< non-smooth interior times
    // rho'' = rhs(t, rho, rho'), the governing equation.
    std::function<double(double, double, double)> rhs;

    // Numeric: dense solution with states (rho, rho', theta).
    std::shared_ptr<const OdeSolution> sol;

    // Analytic: closed forms; theta may wrap a co-integrated phase.
    std::function<double(double)> rho_fn, rho_dot_fn, rho_ddot_fn, theta_fn;
};

namespace {

void check_span(double t, double t0, double t1, const char* who) {
    const double lo = std::min(t0, t1), hi = std::max(t0, t1);
    const double slack = 1e-9 * std::max(1.0, hi - lo);
    if (t < lo - slack || t > hi + slack)
        throw numeric_error(std::string(who) + ": time " + std::to_string(t) +
                            " outside trajectory span");
}

std::vector<double> uniform_times(double t0, double t1, int n = 257) {
    std::vector<double> ts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        ts[static_cast<std::size_t>(i)] =
            t0 + (t1 - t0) * static_cast<double>(i) / (n - 1);
    return ts;
}

} // namespace

double AuxiliaryTrajectory::rho(double t) const {
    check_span(t, p_->t0, p_->t1, "rho");
    return p_->analytic ? p_->rho_fn(t) : p_->sol->component(t, 0);
}

double AuxiliaryTrajectory::rho_dot(double t) const {
    check_span(t, p_->t0, p_->t1, "rho_dot");
    return p_->analytic ? p_->rho_dot_fn(t) : p_->sol->component(t, 1);
}

double AuxiliaryTrajectory::rho_ddot(double t) const {
    check_span(t, p_->t0, p_->t1, "rho_ddot");
    if (p_->analytic && p_->rho_ddot_fn) return p_->rho_ddot_fn(t);
    return p_->rhs(t, rho(t), rho_dot(t));
}

double AuxiliaryTrajectory::theta(double t) const {
    check_span(t, p_->t0, p_->t1, "theta");
    return p_->analytic ? p_->theta_fn(t) : p_->sol->component(t, 2);
}

double AuxiliaryTrajectory::t_begin() const { return p_->t0; }
double AuxiliaryTrajectory::t_end() const { return p_->t1; }
const std::vector<double>& AuxiliaryTrajectory::times() const {
    return p_->times;
}
const std::string& AuxiliaryTrajectory::source() const { return p_->source; }
const std::vector<double>& AuxiliaryTrajectory::breakpoints() const {
    return p_->breakpoints;
}
bool AuxiliaryTrajectory::is_analytic() const { return p_->analytic; }

double AuxiliaryTrajectory::max_residual(int n) const {
    // Difference the dense rho' at off-grid points and compare with the
    // governing equation.
    const double span = p_->t1 - p_->t0;
    const double h = 1e-5 * std::max(1.0, std::abs(span));
    double worst = 0;
    for (int i = 0; i < n; ++i) {
        // Golden-ratio low-discrepancy samples keep clear of step edges.
        const double frac = std::fmod(0.5 + 0.6180339887498949 * (i + 1), 1.0);
        double t = p_->t0 + span * frac;
        if (std::abs(t - p_->t0) < 2 * h || std::abs(t - p_->t1) < 2 * h)
            continue;
        // Never straddle a non-smooth junction (e.g. a quench corner).
        bool near_kink = false;
        for (double b : p_->breakpoints)
            if (std::abs(t - b) < 2 * h) near_kink = true;
        if (near_kink) continue;
        const double ddot_fd =
            (rho_dot(t + h) - rho_dot(t - h)) / (2.0 * h);
        const double want = p_->rhs(t, rho(t), rho_dot(t));
        worst = std::max(worst, std::abs(ddot_fd - want));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// numeric solvers
// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<AuxiliaryTrajectory::Impl> solve_numeric(
    const std::function<double(double, double, double)>& rhs,
    const std::vector<double>& breakpoints, double t0, double t1, double rho0,
    double rho_dot0, const SolveOptions& opts, const std::string& tag) {
    if (!(rho0 > 0))
        throw config_error("auxiliary solve: rho(t0) must be positive");
    if (!(opts.rho_floor > 0) || !(opts.abs_tol > 0) || !(opts.rel_tol > 0))
        throw config_error("auxiliary solve: tolerances must be positive");

    OdeOptions oo;
    oo.abs_tol = opts.abs_tol;
    oo.rel_tol = opts.rel_tol;
    oo.breakpoints = breakpoints;
    // Keep steps short compared to the local contraction scale of rho.
    oo.max_step = [](double, const double* y) {
        const double r = std::abs(y[0]), v = std::abs(y[1]);
        return v > 0 ? 0.1 * r / v : std::numeric_limits<double>::infinity();
    };
    const double floor = opts.rho_floor;
    oo.stop = [floor](double, const double* y) { return y[0] <= floor; };
    oo.stop_message = "auxiliary solve: rho collapsed to the floor";

    OdeRhs f = [rhs](double t, const double* y, double* dy) {
        dy[0] = y[1];
        dy[1] = rhs(t, y[0], y[1]);
        dy[2] = 1.0 / (y[0] * y[0]);
    };
    auto sol = std::make_shared<OdeSolution>(
        integrate(f, t0, t1, {rho0, rho_dot0, 0.0}, oo));

    auto impl = std::make_shared<AuxiliaryTrajectory::Impl>();
    impl->analytic = false;
    impl->t0 = t0;
    impl->t1 = t1;
    impl->times = sol->step_times();
    impl->breakpoints = breakpoints;
    impl->sol = sol;
    impl->rhs = rhs;
    char buf[96];
    std::snprintf(buf, sizeof buf, "dopri5 %s tol=%.1e steps=%zu", tag.c_str(),
                  opts.abs_tol, sol->n_steps());
    impl->source = buf;
    return impl;
}

void require_in_domain(const CoefficientProfile& p, double t0, double t1,
                       const char* name) {
    const double lo = std::min(t0, t1), hi = std::max(t0, t1);
    if (!p.domain().contains(lo) || !(hi <= p.domain().hi))
        throw config_error(std::string("auxiliary solve: span exits the "
                                       "domain of profile ") +
                           name);
}

} // namespace

AuxiliaryTrajectory solve_auxiliary_otf(const CoefficientProfile& omega,
                                        double t0, double t1, double rho0,
                                        double rho_dot0,
                                        const SolveOptions& opts) {
    if (!omega.valid())
        throw config_error("solve_auxiliary_otf: empty profile");
    require_in_domain(omega, t0, t1, "Omega");
    auto rhs = [omega](double t, double r, double) {
        const double w = omega(t);
        return 1.0 / (r * r * r) - w * w * r;
    };
    return AuxiliaryTrajectory(solve_numeric(rhs, omega.breakpoints(), t0, t1,
                                             rho0, rho_dot0, opts, "otf"));
}

AuxiliaryTrajectory solve_auxiliary_otmf(const CoefficientProfile& A1,
                                         const CoefficientProfile& B1,
                                         double t0, double t1, double rho0,
                                         double rho_dot0,
                                         const SolveOptions& opts) {
    if (!A1.valid() || !B1.valid())
        throw config_error("solve_auxiliary_otmf: empty profiles");
    require_in_domain(A1, t0, t1, "A1");
    require_in_domain(B1, t0, t1, "B1");
    // The mass 1/B1 must stay finite and one-signed on the span.
    const double sign0 = B1(t0) > 0 ? 1.0 : -1.0;
    for (int i = 0; i <= 1000; ++i) {
        const double t = t0 + (t1 - t0) * i / 1000.0;
        const double b = B1(t);
        if (b == 0.0 || b * sign0 < 0)
            throw numeric_error(
                "solve_auxiliary_otmf: B1 vanishes or changes sign near t = " +
                std::to_string(t));
    }
    auto rhs = [A1, B1](double t, double r, double v) {
        const double b = B1(t);
        return (B1.deriv(t) / b) * v - A1(t) * b * r +
               b * b / (r * r * r);
    };
    std::vector<double> brk = A1.breakpoints();
    brk.insert(brk.end(), B1.breakpoints().begin(), B1.breakpoints().end());
    return AuxiliaryTrajectory(
        solve_numeric(rhs, brk, t0, t1, rho0, rho_dot0, opts, "otmf"));
}

std::pair<double, double> ground_state_initial(const CoefficientProfile& omega,
                                               double t0) {
    const double w = omega(t0);
    if (!(w > 0))
        throw numeric_error(
            "ground_state_initial: Omega(t0) must be positive");
    return {1.0 / std::sqrt(w), 0.0};
}

// ---------------------------------------------------------------------------
// closed-form solutions
// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<AuxiliaryTrajectory::Impl> analytic_impl(
    double t0, double t1, const std::string& source,
    std::function<double(double)> rho, std::function<double(double)> rho_dot,
    std::function<double(double)> rho_ddot,
    std::function<double(double)> theta,
    std::function<double(double, double, double)> rhs) {
    auto impl = std::make_shared<AuxiliaryTrajectory::Impl>();
    impl->analytic = true;
    impl->t0 = t0;
    impl->t1 = t1;
    impl->times = uniform_times(t0, t1);
    impl->source = source;
    impl->rho_fn = std::move(rho);
    impl->rho_dot_fn = std::move(rho_dot);
    impl->rho_ddot_fn = std::move(rho_ddot);
    impl->theta_fn = std::move(theta);
    impl->rhs = std::move(rhs);
    return impl;
}

/// Phase for closed-form rho without an elementary integral: co-integrate
/// theta' = 1/rho^2 densely once at construction.
std::function<double(double)> quadrature_theta(
    const std::function<double(double)>& rho, double t0, double t1,
    std::vector<double> breakpoints) {
    OdeOptions oo;
    oo.abs_tol = oo.rel_tol = 1e-12;
    oo.breakpoints = std::move(breakpoints);
    OdeRhs f = [rho](double t, const double*, double* dy) {
        const double r = rho(t);
        dy[0] = 1.0 / (r * r);
    };
    auto sol =
        std::make_shared<OdeSolution>(integrate(f, t0, t1, {0.0}, oo));
    return [sol](double t) { return sol->component(t, 0); };
}

} // namespace

AuxiliaryTrajectory analytic_auxiliary(AnalyticKind kind,
                                       const AnalyticParams& p, double t0,
                                       double t1) {
    switch (kind) {
        case AnalyticKind::constant: {
            const double w = p.omega;
            if (!(w > 0))
                throw config_error("analytic constant: omega must be > 0");
            const double r0 = 1.0 / std::sqrt(w);
            return AuxiliaryTrajectory(analytic_impl(
                t0, t1, "analytic constant",
                [r0](double) { return r0; }, [](double) { return 0.0; },
                [](double) { return 0.0; },
                [w, t0](double t) { return w * (t - t0); },
                [w](double, double r, double) {
                    return 1.0 / (r * r * r) - w * w * r;
                }));
        }
        case AnalyticKind::example1case1: {
            const double b1 = p.b1, b2 = p.b2;
            if (!(b1 > 0) || !(b2 > 0) || !(b2 < 2))
                throw config_error(
                    "analytic example1case1: need b1 > 0 and 0 < b2 < 2");
            const double c1 = std::pow(1.0 - b2 * b2 / 4.0, -0.25);
            auto u = [b1, b2](double t) { return b1 + b2 * t; };
            return AuxiliaryTrajectory(analytic_impl(
                t0, t1, "analytic example1case1",
                [c1, u](double t) { return c1 * std::sqrt(u(t)); },
                [c1, u, b2](double t) {
                    return 0.5 * c1 * b2 / std::sqrt(u(t));
                },
                [c1, u, b2](double t) {
                    return -0.25 * c1 * b2 * b2 / std::pow(u(t), 1.5);
                },
                [c1, u, b2, t0](double t) {
                    return (std::log(u(t)) - std::log(u(t0))) /
                           (b2 * c1 * c1);
                },
                [u](double t, double r, double) {
                    const double w = 1.0 / u(t);
                    return 1.0 / (r * r * r) - w * w * r;
                }));
        }
        case AnalyticKind::example1case2: {
            const double b1 = p.b1;
            if (!(b1 > 0))
                throw config_error("analytic example1case2: need b1 > 0");
            auto u = [b1](double t) { return b1 + 2.0 * t; };
            auto L = [u](double t) { return 0.5 * std::log(u(t)); };
            auto rho = [u, L](double t) {
                const double l = L(t);
                return std::sqrt(u(t) * (1.0 + l * l));
            };
            return AuxiliaryTrajectory(analytic_impl(
                t0, t1, "analytic example1case2", rho,
                [rho, L](double t) {
                    const double l = L(t);
                    return (1.0 + l + l * l) / rho(t);
                },
                [rho, L](double t) {
                    const double l = L(t), r = rho(t);
                    return -l * l * (2.0 + l * l) / (r * r * r);
                },
                [L, t0](double t) {
                    return std::atan(L(t)) - std::atan(L(t0));
                },
                [u](double t, double r, double) {
                    const double w = 1.0 / u(t);
                    return 1.0 / (r * r * r) - w * w * r;
                }));
        }
        case AnalyticKind::example2: {
            const double l1 = p.l1, l2 = p.l2;
            if (!(l2 > 0))
                throw config_error("analytic example2: need l2 > 0");
            auto den = [l1, l2](double t) { return l1 * t + l2; };
            return AuxiliaryTrajectory(analytic_impl(
                t0, t1, "analytic example2", den,
                [l1](double) { return l1; }, [](double) { return 0.0; },
                [l1, l2, den, t0](double t) {
                    if (l1 == 0.0) return (t - t0) / (l2 * l2);
                    return (1.0 / den(t0) - 1.0 / den(t)) / l1;
                },
                [den](double t, double r, double) {
                    const double d = den(t);
                    const double w = 1.0 / (d * d);
                    return 1.0 / (r * r * r) - w * w * r;
                }));
        }
        case AnalyticKind::quench: {
            const double delta = p.delta, eta = p.eta;
            if (!(delta > 0) || !(eta > 0))
                throw config_error(
                    "analytic quench: delta and eta must be > 0");
            const double beta = delta / eta;
            const double nu = std::sqrt(1.0 + beta * beta);
            const double rho_pre = eta / std::sqrt(delta);
            // rho^2 and its two s-derivatives for s = t/eta > 0.
            auto Q = [=](double s) {
                const double phi = std::atan(s);
                const double c = std::cos(nu * phi);
                const double P = c * c + beta * beta;
                return (eta / beta) * (1.0 + s * s) * P / (1.0 + beta * beta);
            };
            auto Qp = [=](double s) {
                const double phi = std::atan(s);
                const double c = std::cos(nu * phi);
                const double P = c * c + beta * beta;
                return (eta / (beta * (1.0 + beta * beta))) *
                       (2.0 * s * P - nu * std::sin(2.0 * nu * phi));
            };
            auto Qpp = [=](double s) {
                const double phi = std::atan(s);
                const double c = std::cos(nu * phi);
                const double P = c * c + beta * beta;
                const double s2 = 1.0 + s * s;
                return (eta / (beta * (1.0 + beta * beta))) *
                       (2.0 * P -
                        (2.0 * s * nu * std::sin(2.0 * nu * phi) +
                         2.0 * nu * nu * std::cos(2.0 * nu * phi)) /
                            s2);
            };
            auto rho = [=](double t) {
                if (t <= 0) return rho_pre;
                return std::sqrt(Q(t / eta));
            };
            auto rho_dot = [=](double t) {
                if (t <= 0) return 0.0;
                const double s = t / eta;
                return Qp(s) / (2.0 * std::sqrt(Q(s)) * eta);
            };
            auto rho_ddot = [=](double t) {
                if (t <= 0) return 0.0;
                const double s = t / eta;
                const double q = Q(s), qp = Qp(s);
                const double d2 = Qpp(s) / (2.0 * std::sqrt(q)) -
                                  qp * qp / (4.0 * std::pow(q, 1.5));
                return d2 / (eta * eta);
            };
            const CoefficientProfile omega = make_quench_profile(delta, eta);
            std::vector<double> brk;
            if (t0 < 0 && t1 > 0) brk.push_back(0.0);
            auto impl = analytic_impl(
                t0, t1, "analytic quench", rho, rho_dot, rho_ddot,
                quadrature_theta(rho, t0, t1, brk),
                [omega](double t, double r, double) {
                    const double w = omega(t);
                    return 1.0 / (r * r * r) - w * w * r;
                });
            impl->breakpoints = brk;
            return AuxiliaryTrajectory(impl);
        }
        case AnalyticKind::ck: {
            const double M = p.M, w = p.omega, D = p.Delta;
            const CkCoefficients ck = make_ck_coefficients(M, w, D);
            const double w0 = std::sqrt(w * w - 0.25 * D * D);
            const double r0 = 1.0 / std::sqrt(M * w0);
            auto rho = [r0, D](double t) {
                return r0 * std::exp(-0.5 * D * t);
            };
            return AuxiliaryTrajectory(analytic_impl(
                t0, t1, "analytic ck", rho,
                [rho, D](double t) { return -0.5 * D * rho(t); },
                [rho, D](double t) { return 0.25 * D * D * rho(t); },
                [M, w0, D, t0](double t) {
                    if (D == 0.0) return M * w0 * (t - t0);
                    return M * w0 * (std::exp(D * t) - std::exp(D * t0)) / D;
                },
                [ck](double t, double r, double v) {
                    const double b = ck.B1(t);
                    return (ck.B1.deriv(t) / b) * v - ck.A1(t) * b * r +
                           b * b / (r * r * r);
                }));
        }
    }
    throw config_error("analytic_auxiliary: unknown kind");
}

// ---------------------------------------------------------------------------
// derived functions
// ---------------------------------------------------------------------------

namespace {

void check_consistency(const AuxiliaryTrajectory& traj,
                       const std::function<double(double, double, double)>& rhs,
                       const char* family) {
    // A trajectory paired with the wrong oscillator would report second
    // derivatives that disagree with the governing equation.
    const double t0 = traj.t_begin(), t1 = traj.t_end();
    for (double frac : {0.13, 0.47, 0.84}) {
        const double t = t0 + (t1 - t0) * frac;
        const double have = traj.rho_ddot(t);
        const double want = rhs(t, traj.rho(t), traj.rho_dot(t));
        const double scale =
            std::max({1.0, std::abs(have), std::abs(want)});
        if (std::abs(have - want) > 1e-6 * scale)
            throw numeric_error(
                std::string("derived_functions: trajectory is not a "
                            "solution of the ") +
                family + " auxiliary equation at t = " + std::to_string(t));
    }
}

} // namespace

DerivedFunctions::DerivedFunctions(AuxiliaryTrajectory traj, OtfOscillator osc)
    : traj_(std::move(traj)), family_(OscFamily::otf) {
    if (!osc.omega.valid())
        throw config_error("derived_functions: empty Omega profile");
    const CoefficientProfile omega = osc.omega;
    // Represent the OTF case as A1 = Omega^2, B1 = 1.
    a1_ = CoefficientProfile::from_functions(
        [omega](double t) {
            const double w = omega(t);
            return w * w;
        },
        [omega](double t) { return 2.0 * omega(t) * omega.deriv(t); },
        [omega](double t) {
            const double d = omega.deriv(t);
            return 2.0 * (d * d + omega(t) * omega.deriv2(t));
        },
        omega.domain(), omega.breakpoints(), "omega_sq");
    b1_ = CoefficientProfile::constant(1.0);
    check_consistency(traj_,
                      [omega](double t, double r, double) {
                          const double w = omega(t);
                          return 1.0 / (r * r * r) - w * w * r;
                      },
                      "otf");
}

DerivedFunctions::DerivedFunctions(AuxiliaryTrajectory traj,
                                   OtmfOscillator osc)
    : traj_(std::move(traj)), family_(OscFamily::otmf), a1_(osc.A1),
      b1_(osc.B1) {
    if (!a1_.valid() || !b1_.valid())
        throw config_error("derived_functions: empty coefficient profiles");
    const CoefficientProfile A1 = a1_, B1 = b1_;
    check_consistency(traj_,
                      [A1, B1](double t, double r, double v) {
                          const double b = B1(t);
                          return (B1.deriv(t) / b) * v - A1(t) * b * r +
                                 b * b / (r * r * r);
                      },
                      "otmf");
}

double DerivedFunctions::f(double t) const {
    const double r = traj_.rho(t), v = traj_.rho_dot(t);
    const double b = b1_(t);
    return v * v / b + a1_(t) * r * r + b / (r * r);
}

double DerivedFunctions::g1(double t) const {
    const double r = traj_.rho(t);
    return traj_.rho_dot(t) * traj_.rho_dot(t) - r * traj_.rho_ddot(t);
}

double DerivedFunctions::g2_mag(double t) const {
    return 2.0 * traj_.rho_dot(t) / traj_.rho(t);
}

std::complex<double> DerivedFunctions::f1(double t) const {
    const double r = traj_.rho(t), v = traj_.rho_dot(t);
    const double b = b1_(t);
    const double re = a1_(t) * r * r + v * v / b - b / (r * r);
    return {re, -2.0 * v / r};
}

double DerivedFunctions::f1f2(double t) const {
    const std::complex<double> z = f1(t);
    return z.real() * z.real() + z.imag() * z.imag();
}

double DerivedFunctions::four_omega_sq(double t) const {
    return 4.0 * a1_(t) * b1_(t);
}

// ---------------------------------------------------------------------------
// cross-checks
// ---------------------------------------------------------------------------

double f_integral_form(const AuxiliaryTrajectory& traj,
                       const CoefficientProfile& omega, double c, double t,
                       double tol) {
    const double t0 = traj.t_begin();
    check_span(t, t0, traj.t_end(), "f_integral_form");
    auto integrand = [&](double s) {
        const double r = traj.rho(s);
        return r * r * omega(s) * omega.deriv(s);
    };
    const QuadResult q =
        integrate_adaptive(integrand, t0, t, tol, 1e-12, omega.breakpoints());
    return 2.0 * q.value + c;
}

SchwarzianCheck schwarzian_check(const AuxiliaryTrajectory& traj,
                                 const CoefficientProfile& omega, double t) {
    const double r = traj.rho(t);
    const double w = omega(t);
    // theta' = 1/rho^2 collapses the Schwarzian to {theta, t} = -2 rho''/rho.
    const double schwarzian = -2.0 * traj.rho_ddot(t) / r;
    const double residual =
        w * w - 1.0 / (r * r * r * r) - 0.5 * schwarzian;
    return {schwarzian, residual};
}

} // namespace bicost
