#include "bicost/su11.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "bicost/errors.hpp"
#include "bicost/ode.hpp"

namespace bicost::su11 {
namespace {

constexpr double kSeriesCut = 1e-4;

/// sin(chi)/chi, entire in chi^2; series below the cutoff avoids the 0/0.
cplx sinc_chi(cplx chi) {
    if (std::abs(chi) < kSeriesCut) {
        const cplx z = chi * chi;
        return 1.0 +
               z * (-1.0 / 6.0 +
                    z * (1.0 / 120.0 +
                         z * (-1.0 / 5040.0 +
                              z * (1.0 / 362880.0 - z / 39916800.0))));
    }
    return std::sin(chi) / chi;
}

} // namespace

Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}
Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}
Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}
Mat2 operator*(cplx s, const Mat2& a) {
    return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
}

double max_abs(const Mat2& a) {
    return std::max(std::max(std::abs(a.a11), std::abs(a.a12)),
                    std::max(std::abs(a.a21), std::abs(a.a22)));
}
double max_abs_diff(const Mat2& a, const Mat2& b) { return max_abs(a - b); }

KMatrices k_matrices() {
    KMatrices k;
    k.k0 = {-0.5, 0.0, 0.0, 0.5};
    k.kp = {0.0, 0.0, 1.0, 0.0};
    k.km = {0.0, -1.0, 0.0, 0.0};
    return k;
}

Mat2 k_linear(const Triple& a) {
    return {-0.5 * a.k0, -a.km, a.kp, 0.5 * a.k0};
}

cplx chi_of(const Triple& b) {
    return std::sqrt(b.kp * b.km - 0.25 * b.k0 * b.k0);
}

Mat2 matrix_from_b(const Triple& b) {
    const cplx chi = chi_of(b);
    const cplx c = std::cos(chi), s = sinc_chi(chi);
    return (c * Mat2::identity()) + (s * k_linear(b));
}

Mat2 matrix_from_c(const Triple& c) {
    const cplx em = std::exp(-0.5 * c.k0), ep = std::exp(0.5 * c.k0);
    return {em, -c.km * em, c.kp * em, ep - c.kp * c.km * em};
}

Triple decompose_b_to_c(const Triple& b) {
    const cplx chi = chi_of(b);
    const cplx s = sinc_chi(chi);
    const cplx g = std::cos(chi) - 0.5 * b.k0 * s;
    if (std::abs(g) < 1e-14)
        throw numeric_error(
            "su11 decomposition is singular: g(chi) = 0, the normal "
            "ordering does not exist here");
    Triple c;
    c.kp = b.kp * s / g;
    c.k0 = -2.0 * std::log(g);
    c.km = b.km * s / g;
    return c;
}

Triple b_from_matrix(const Mat2& m) {
    if (std::abs(m.det() - 1.0) > 1e-6)
        throw config_error("b_from_matrix: matrix is not unimodular");
    const cplx ct = 0.5 * m.trace();
    const cplx chi = std::acos(ct);
    const cplx s = sinc_chi(chi);
    if (std::abs(s) < 1e-12)
        throw numeric_error(
            "b_from_matrix: trace = -2, the exponent is not unique");
    const Mat2 n = (1.0 / s) * (m - (ct * Mat2::identity()));
    Triple b;
    b.k0 = n.a22 - n.a11;
    b.kp = n.a21;
    b.km = -n.a12;
    return b;
}

Element element_from_b(const Triple& b) {
    Element e;
    e.b = b;
    e.chi = chi_of(b);
    e.c = decompose_b_to_c(b);
    e.matrix = matrix_from_b(b);
    return e;
}

// ---------------------------------------------------------------------------
// classical trajectory and the evolution coefficients
// ---------------------------------------------------------------------------

struct ClassicalTrajectory::Impl {
    double t0 = 0, t1 = 0, x0 = 1;
    CoefficientProfile m1, omega1_sq;
    std::vector<double> breakpoints;
    std::shared_ptr<OdeSolution> sol; // components: x, x', int dt/(m1 x^2)
};

namespace {

void check_span(double t, double lo, double hi, const char* what) {
    const double slack = 1e-9 * std::max(1.0, std::abs(hi - lo));
    if (t < lo - slack || t > hi + slack)
        throw config_error(std::string(what) +
                           ": time outside the solved span");
}

} // namespace

double ClassicalTrajectory::x(double t) const {
    check_span(t, p_->t0, p_->t1, "x");
    return p_->sol->component(t, 0);
}
double ClassicalTrajectory::x_dot(double t) const {
    check_span(t, p_->t0, p_->t1, "x_dot");
    return p_->sol->component(t, 1);
}
double ClassicalTrajectory::lowering_integral(double t) const {
    check_span(t, p_->t0, p_->t1, "lowering_integral");
    return p_->sol->component(t, 2);
}
double ClassicalTrajectory::x0() const { return p_->x0; }
double ClassicalTrajectory::t_begin() const { return p_->t0; }
double ClassicalTrajectory::t_end() const { return p_->t1; }
const std::vector<double>& ClassicalTrajectory::times() const {
    return p_->sol->step_times();
}
const CoefficientProfile& ClassicalTrajectory::m1() const { return p_->m1; }
const CoefficientProfile& ClassicalTrajectory::omega1_sq() const {
    return p_->omega1_sq;
}

double ClassicalTrajectory::max_residual(int n) const {
    const double span = p_->t1 - p_->t0;
    const double h = 1e-5 * std::max(1.0, std::abs(span));
    double worst = 0;
    for (int i = 0; i < n; ++i) {
        const double frac = std::fmod(0.5 + 0.6180339887498949 * (i + 1), 1.0);
        double t = p_->t0 + span * frac;
        if (std::abs(t - p_->t0) < 2 * h || std::abs(t - p_->t1) < 2 * h)
            continue;
        bool near_kink = false;
        for (double b : p_->breakpoints)
            if (std::abs(t - b) < 2 * h) near_kink = true;
        if (near_kink) continue;
        const double xdd_fd = (x_dot(t + h) - x_dot(t - h)) / (2.0 * h);
        const double xi = p_->m1.deriv(t) / p_->m1(t);
        const double want = -xi * x_dot(t) - p_->omega1_sq(t) * x(t);
        worst = std::max(worst, std::abs(xdd_fd - want));
    }
    return worst;
}

ClassicalTrajectory solve_classical(const CoefficientProfile& m1,
                                    const CoefficientProfile& omega1_sq,
                                    double t0, double t1, double x0,
                                    double x_dot0, const SolveOptions& opts) {
    if (!(t1 > t0))
        throw config_error("solve_classical: need t1 > t0");
    if (x0 == 0)
        throw config_error(
            "solve_classical: x(t0) must be nonzero (the evolution "
            "coefficients take its logarithm)");
    for (const CoefficientProfile* p : {&m1, &omega1_sq})
        if (!p->domain().contains(t0) || !(t1 <= p->domain().hi))
            throw config_error(
                "solve_classical: span exits a coefficient domain");

    std::vector<double> brk = m1.breakpoints();
    brk.insert(brk.end(), omega1_sq.breakpoints().begin(),
               omega1_sq.breakpoints().end());
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end()), brk.end());

    OdeOptions oo;
    oo.abs_tol = opts.abs_tol;
    oo.rel_tol = opts.rel_tol;
    oo.breakpoints = brk;
    const double floor = opts.rho_floor * std::max(1.0, std::abs(x0));
    oo.stop = [floor](double, const double* y) {
        return std::abs(y[0]) <= floor;
    };
    oo.stop_message =
        "solve_classical: trajectory reached a caustic (x -> 0)";

    OdeRhs f = [&m1, &omega1_sq](double t, const double* y, double* dy) {
        const double xi = m1.deriv(t) / m1(t);
        dy[0] = y[1];
        dy[1] = -xi * y[1] - omega1_sq(t) * y[0];
        dy[2] = 1.0 / (m1(t) * y[0] * y[0]);
    };

    auto impl = std::make_shared<ClassicalTrajectory::Impl>();
    impl->t0 = t0;
    impl->t1 = t1;
    impl->x0 = x0;
    impl->m1 = m1;
    impl->omega1_sq = omega1_sq;
    impl->breakpoints = brk;
    impl->sol = std::make_shared<OdeSolution>(
        integrate(f, t0, t1, {x0, x_dot0, 0.0}, oo));
    return ClassicalTrajectory(impl);
}

Triple evolution_c_coefficients(const ClassicalTrajectory& xc, double t) {
    const double x = xc.x(t);
    const double x0 = xc.x0();
    if (x * x0 <= 0 || std::abs(x) < 1e-12 * std::abs(x0))
        throw numeric_error(
            "evolution_c_coefficients: caustic reached, the operator "
            "coefficients are singular");
    Triple c;
    c.kp = xc.m1()(t) * xc.x_dot(t) / x;
    c.k0 = -2.0 * std::log(x / x0);
    c.km = -x0 * x0 * xc.lowering_integral(t);
    return c;
}

Mat2 hamiltonian_matrix(double A1, double B1) {
    const cplx i(0.0, 1.0);
    return {0.0, i * B1, -i * A1, 0.0};
}

double verify_schrodinger_residual(const std::function<Mat2(double)>& U,
                                   const std::function<Mat2(double)>& H,
                                   const std::vector<double>& grid) {
    const std::size_t n = grid.size();
    if (n < 5)
        throw config_error(
            "verify_schrodinger_residual: need at least five grid points");
    const double h = grid[1] - grid[0];
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (std::abs((grid[i + 1] - grid[i]) - h) > 1e-9 * std::abs(h))
            throw config_error(
                "verify_schrodinger_residual: grid must be uniform");

    std::vector<Mat2> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = U(grid[i]);

    const cplx im(0.0, 1.0);
    double worst = 0;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        // 4th-order central difference of every entry
        const Mat2 du = (1.0 / (12.0 * h)) *
                        ((u[i - 2] - u[i + 2]) +
                         (8.0 * (u[i + 1] - u[i - 1])));
        const Mat2 defect = (im * du) - (H(grid[i]) * u[i]);
        worst = std::max(worst, max_abs(defect));
    }
    return worst;
}

TimeIndepGeneralized geodesic_generator(const Triple& h) {
    const cplx i(0.0, 1.0);
    const cplx a0 = i * h.kp, b0 = i * h.km, c0 = i * h.k0;
    const double scale =
        std::max({std::abs(h.k0), std::abs(h.kp), std::abs(h.km), 1.0});
    if (std::abs(a0.imag()) > 1e-12 * scale ||
        std::abs(b0.imag()) > 1e-12 * scale ||
        std::abs(c0.imag()) > 1e-12 * scale)
        throw config_error(
            "geodesic_generator: coefficients do not give a Hermitian "
            "generator (i*h must be real)");
    TimeIndepGeneralized spec;
    spec.A0 = a0.real();
    spec.B0 = b0.real();
    spec.C0 = c0.real();
    return spec;
}

} // namespace bicost::su11
