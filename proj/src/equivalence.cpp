#include "bicost/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include "bicost/cost.hpp"
#include "bicost/errors.hpp"
#include "bicost/ode.hpp"
#include "bicost/roots.hpp"

namespace bicost {

struct Reparametrization::Impl {
    double t0 = 0, t1 = 0;
    double tau0 = 0, tau1 = 0;
    double c3 = 0;
    CoefficientProfile m1;
    std::shared_ptr<OdeSolution> sol; // single component: int dt/m1 from t0
};

namespace {

void check_range(double x, double lo, double hi, const char* what) {
    const double slack = 1e-9 * std::max(1.0, hi - lo);
    if (x < lo - slack || x > hi + slack)
        throw config_error(std::string(what) + ": outside the built span");
}

} // namespace

double Reparametrization::tau(double t) const {
    check_range(t, p_->t0, p_->t1, "tau");
    return p_->sol->component(t, 0) + p_->c3;
}

double Reparametrization::t_of_tau(double tau_target) const {
    check_range(tau_target, p_->tau0, p_->tau1, "t_of_tau");
    const double lo = p_->t0, hi = p_->t1;
    if (tau_target <= p_->tau0) return lo;
    if (tau_target >= p_->tau1) return hi;
    return find_root_brent([&](double t) { return tau(t) - tau_target; }, lo,
                           hi, 1e-14 * std::max(1.0, hi - lo));
}

double Reparametrization::jacobian(double t) const { return 1.0 / p_->m1(t); }
double Reparametrization::c3() const { return p_->c3; }
double Reparametrization::t_begin() const { return p_->t0; }
double Reparametrization::t_end() const { return p_->t1; }
double Reparametrization::tau_begin() const { return p_->tau0; }
double Reparametrization::tau_end() const { return p_->tau1; }
const CoefficientProfile& Reparametrization::m1() const { return p_->m1; }

Reparametrization build_reparam(const CoefficientProfile& m1, double t0,
                                double t1) {
    if (!(t1 > t0))
        throw config_error("build_reparam: need t1 > t0");
    if (!m1.domain().contains(t0) || !(t1 <= m1.domain().hi))
        throw config_error("build_reparam: span exits the domain of m1");
    for (int i = 0; i <= 1000; ++i) {
        const double t = t0 + (t1 - t0) * i / 1000.0;
        if (!(m1(t) > 0))
            throw config_error(
                "build_reparam: m1 must be strictly positive on the span, "
                "otherwise tau is not monotone");
    }

    OdeOptions oo;
    oo.abs_tol = 1e-13;
    oo.rel_tol = 1e-13;
    oo.breakpoints = m1.breakpoints();
    OdeRhs f = [&m1](double t, const double*, double* dy) {
        dy[0] = 1.0 / m1(t);
    };
    auto impl = std::make_shared<Reparametrization::Impl>();
    impl->sol =
        std::make_shared<OdeSolution>(integrate(f, t0, t1, {0.0}, oo));
    impl->t0 = t0;
    impl->t1 = t1;
    impl->m1 = m1;
    // anchor: tau(0) = 0 when reachable, else tau(t0) = 0
    impl->c3 = (t0 <= 0.0 && 0.0 <= t1)
                   ? -impl->sol->component(0.0, 0)
                   : 0.0;
    impl->tau0 = impl->sol->component(t0, 0) + impl->c3;
    impl->tau1 = impl->sol->component(t1, 0) + impl->c3;
    return Reparametrization(impl);
}

CoefficientProfile map_otmf_to_otf(const CoefficientProfile& A1,
                                   const CoefficientProfile& B1,
                                   const Reparametrization& rep) {
    const double t0 = rep.t_begin(), t1 = rep.t_end();
    for (int i = 0; i <= 1000; ++i) {
        const double t = t0 + (t1 - t0) * i / 1000.0;
        if (!(A1(t) / B1(t) > 0))
            throw config_error(
                "map_otmf_to_otf: A1/B1 must stay positive to define a "
                "real frequency");
    }

    // sqrt(A1/B1) and its t-derivatives via quotient and square-root rules
    auto w_of_t = [A1, B1](double t) { return std::sqrt(A1(t) / B1(t)); };
    auto wp_of_t = [A1, B1](double t) {
        const double a = A1(t), b = B1(t);
        const double rp = (A1.deriv(t) * b - a * B1.deriv(t)) / (b * b);
        return rp / (2.0 * std::sqrt(a / b));
    };
    auto wpp_of_t = [A1, B1](double t) {
        const double a = A1(t), b = B1(t);
        const double ap = A1.deriv(t), bp = B1.deriv(t);
        const double r = a / b;
        const double rp = (ap * b - a * bp) / (b * b);
        const double rpp = (A1.deriv2(t) * b * b - a * B1.deriv2(t) * b -
                            2.0 * ap * bp * b + 2.0 * a * bp * bp) /
                           (b * b * b);
        const double w = std::sqrt(r);
        return rpp / (2.0 * w) - rp * rp / (4.0 * w * w * w);
    };

    // chain rule through t(tau): dt/dtau = m1
    auto value = [rep, w_of_t](double tau) {
        return w_of_t(rep.t_of_tau(tau));
    };
    auto deriv = [rep, wp_of_t](double tau) {
        const double t = rep.t_of_tau(tau);
        return wp_of_t(t) * rep.m1()(t);
    };
    auto deriv2 = [rep, wp_of_t, wpp_of_t](double tau) {
        const double t = rep.t_of_tau(tau);
        const double m = rep.m1()(t);
        return (wpp_of_t(t) * m + wp_of_t(t) * rep.m1().deriv(t)) * m;
    };

    std::vector<double> brk;
    for (const CoefficientProfile* p : {&A1, &B1})
        for (double b : p->breakpoints())
            if (b > t0 && b < t1) brk.push_back(rep.tau(b));
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end()), brk.end());

    return CoefficientProfile::from_functions(
        value, deriv, deriv2, {rep.tau_begin(), rep.tau_end()},
        std::move(brk), "mapped_omega");
}

MappedPair build_equivalent_pair(const OtmfOscillator& osc, double T,
                                 std::optional<double> rho0,
                                 double rho_dot0, const SolveOptions& opts) {
    if (!(T > 0))
        throw config_error("build_equivalent_pair: need T > 0");
    const CoefficientProfile &A1 = osc.A1, &B1 = osc.B1;

    Reparametrization rep = build_reparam(profile_reciprocal(B1), 0.0, T);

    const double r0 =
        rho0 ? *rho0 : std::pow(B1(0.0) / A1(0.0), 0.25);
    AuxiliaryTrajectory otmf_traj =
        solve_auxiliary_otmf(A1, B1, 0.0, T, r0, rho_dot0, opts);
    DerivedFunctions otmf_df(otmf_traj, osc);

    CoefficientProfile omega_tau = map_otmf_to_otf(A1, B1, rep);
    const double tau_T = rep.tau(T);
    const double m1_at_0 = 1.0 / B1(0.0);
    AuxiliaryTrajectory otf_traj = solve_auxiliary_otf(
        omega_tau, 0.0, tau_T, r0, m1_at_0 * rho_dot0, opts);
    DerivedFunctions otf_df(otf_traj, OtfOscillator{omega_tau});

    return MappedPair{otmf_df, otf_df, rep};
}

double verify_f3_mapping(const MappedPair& pair, int n_grid) {
    if (n_grid < 2)
        throw config_error("verify_f3_mapping: need at least two grid points");
    const double t0 = pair.otmf.trajectory().t_begin();
    const double t1 = pair.otmf.trajectory().t_end();
    double worst = 0;
    for (int i = 0; i < n_grid; ++i) {
        const double t = t0 + (t1 - t0) * i / (n_grid - 1);
        const double f3 = pair.otmf.f3(t);
        const double mapped =
            pair.rep.jacobian(t) * pair.otf.f(pair.rep.tau(t));
        worst = std::max(worst, std::abs(f3 - mapped) / std::abs(f3));
    }
    return worst;
}

CostEquivalence verify_cost_equivalence(const MappedPair& pair,
                                        const CostConstants& k, double tol) {
    const double t0 = pair.otmf.trajectory().t_begin();
    const double t1 = pair.otmf.trajectory().t_end();
    const double u0 = pair.otf.trajectory().t_begin();
    const double u1 = pair.otf.trajectory().t_end();

    auto F2_otmf = [&](double t) { return cost_squared(pair.otmf, k, t); };
    auto F2_otf = [&](double u) { return cost_squared(pair.otf, k, u); };

    CostEquivalence out;
    out.D_otmf = total_cost(F2_otmf, {}, k, t0, t1, 2, tol,
                            pair.otmf.trajectory().breakpoints())
                     .cumulative.back();
    out.D_otf = total_cost(F2_otf, {}, k, u0, u1, 2, tol,
                           pair.otf.trajectory().breakpoints())
                    .cumulative.back();
    out.gap_rel = std::abs(out.D_otmf - out.D_otf) /
                  std::max(std::abs(out.D_otmf), 1e-300);
    return out;
}

} // namespace bicost
