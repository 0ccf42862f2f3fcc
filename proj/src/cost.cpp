#include "bicost/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bicost/errors.hpp"
#include "bicost/quadrature.hpp"
#include "bicost/roots.hpp"

namespace bicost {

MatrixElement matrix_element(const DerivedFunctions& df, int n, int m,
                             double t) {
    if (n < 0 || m < 0)
        throw config_error("matrix_element: level indices must be non-negative");
    MatrixElement e;
    e.n = n;
    e.m = m;
    if (n == m) {
        e.value = 0.5 * (n + 0.5) * df.f3(t);
    } else if (n + 2 == m || m + 2 == n) {
        // both off-diagonals carry sqrt(L(L-1)) with L the larger index
        int L = std::max(n, m);
        double amp = 0.25 * std::sqrt(double(L) * (L - 1));
        e.value = amp * (n < m ? df.f1(t) : df.f2(t));
    }
    return e;
}

double cost_squared(const DerivedFunctions& df, const CostConstants& k,
                    double t) {
    double f3 = df.f3(t);
    double F2 = k.lambda12_sq * f3 * f3 - k.lambda2_sq * df.four_omega_sq(t);
    if (F2 < 0)
        throw config_error(
            "cost_squared: negative norm; lambda2^2 is too large for this "
            "trajectory");
    return F2;
}

CostSquaredForms cost_squared_forms(const DerivedFunctions& df,
                                    const CostConstants& k, double t) {
    double f3 = df.f3(t);
    double fo = df.four_omega_sq(t);
    double e00 = matrix_element(df, 0, 0, t).value.real();
    CostSquaredForms out;
    out.primary = k.lambda12_sq * f3 * f3 - k.lambda2_sq * fo;
    out.split = k.lambda1_sq * f3 * f3 + k.lambda2_sq * (f3 * f3 - fo);
    out.via_e00 = 16.0 * k.lambda12_sq * e00 * e00 - k.lambda2_sq * fo;
    return out;
}

TimeIndepCost cost_timeindep(const TimeIndepGeneralized& spec,
                             const CostConstants& k) {
    TimeIndepCost out;
    if (spec.D0 && spec.F0)
        throw config_error(
            "cost_timeindep: the linear drive and the inverse-square term "
            "are separate variants; give one of F0, D0");
    if (spec.D0) {
        if (spec.C0 != 0)
            throw config_error(
                "cost_timeindep: the inverse-square variant has no cross "
                "term; C0 must be zero");
        if (spec.A0 <= 0 || spec.B0 <= 0)
            throw config_error(
                "cost_timeindep: inverse-square variant needs A0 > 0 and "
                "B0 > 0");
        double ratio = 1.0 + 4.0 * (*spec.D0) / spec.B0;
        if (ratio <= 0)
            throw config_error(
                "cost_timeindep: 1 + 4 D0/B0 must be positive for a bound "
                "spectrum");
        IsotonicInfo iso;
        iso.omega_is = std::sqrt(spec.A0 * spec.B0);
        iso.epsilon = 0.5 * std::sqrt(ratio);
        const double half_rt3 = 0.5 / std::sqrt(3.0);
        iso.mean_plus = 0.5 * iso.omega_is * (0.5 * iso.epsilon + half_rt3);
        iso.mean_minus = 0.5 * iso.omega_is * (0.5 * iso.epsilon - half_rt3);
        iso.mean_cost_branch = iso.mean_minus;
        iso.mean_sign = (iso.mean_cost_branch > 0) - (iso.mean_cost_branch < 0);
        out.isotonic = iso;
        out.F2 = k.lambda1_sq * iso.omega_is * iso.omega_is;
        out.complexity = std::sqrt(out.F2);
        return out;
    }

    if (spec.A0 == 0 && spec.B0 == 0 && spec.C0 == 0 && !spec.F0) {
        // Zero generator: the identity path costs nothing.
        return out;
    }

    double disc = 4.0 * spec.A0 * spec.B0 - spec.C0 * spec.C0;
    if (disc <= 0)
        throw config_error(
            "cost_timeindep: non-oscillatory coefficients; 4 A0 B0 - C0^2 "
            "must be positive");
    out.F2 = k.lambda1_sq * disc;
    out.complexity = std::sqrt(out.F2);

    if (spec.F0) {
        if (spec.B0 <= 0)
            throw config_error("cost_timeindep: driven variant needs B0 > 0");
        // Unitarily strip the cross term and the drive: what is left is a
        // plain oscillator with a constant spectral shift, and demanding
        // that the shift alone zero the trace fixes the drive strength.
        double A1 = spec.A0 - spec.C0 * spec.C0 / (4.0 * spec.B0);
        double w = std::sqrt(A1 * spec.B0); // = sqrt(disc)/2
        out.regulator_force_sq = A1 * w / std::sqrt(3.0);
        // Route through the displaced spectrum w(n + 1/2 - 1/(2 sqrt 3)):
        // the same magnitude as the undriven cost (positive branch).
        double q = 0.5 - 0.5 / std::sqrt(3.0);
        double lambda0_sq = k.lambda0 * k.lambda0;
        out.F2_driven_route =
            lambda0_sq * w * w * std::fabs(hurwitz_zeta_nonpos(-2, q));
    }
    return out;
}

CostTrajectory total_cost(const std::function<double(double)>& F2_fn,
                          const std::function<double(double)>& f_fn,
                          const CostConstants& k, double t0, double t1,
                          int n_samples, double tol,
                          const std::vector<double>& breakpoints) {
    if (!(t1 > t0))
        throw config_error("total_cost: need t1 > t0");
    if (n_samples < 2)
        throw config_error("total_cost: need at least two samples");

    auto speed = [&](double t) {
        double v = F2_fn(t);
        if (v < 0)
            throw config_error(
                "total_cost: negative F^2 encountered along the path");
        return std::sqrt(v);
    };
    auto f_sq = [&](double t) {
        double v = f_fn(t);
        return v * v;
    };

    CostTrajectory out;
    out.times.resize(n_samples);
    out.F2.resize(n_samples);
    out.cumulative.assign(n_samples, 0.0);
    out.bound.assign(n_samples, 0.0);

    double panel_tol = tol / (n_samples - 1);
    double cum = 0.0, f2_int = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        double t = t0 + (t1 - t0) * i / (n_samples - 1);
        out.times[i] = t;
        out.F2[i] = F2_fn(t);
        if (out.F2[i] < 0)
            throw config_error(
                "total_cost: negative F^2 encountered along the path");
        if (i == 0)
            continue;
        double a = out.times[i - 1], b = t;
        std::vector<double> brk;
        for (double s : breakpoints)
            if (s > a && s < b) brk.push_back(s);
        QuadResult qc = integrate_adaptive(speed, a, b, panel_tol, 1e-12, brk);
        cum += qc.value;
        out.quadrature_error += qc.error;
        out.cumulative[i] = cum;
        if (f_fn) {
            QuadResult qf = integrate_adaptive(f_sq, a, b, panel_tol, 1e-12, brk);
            f2_int += qf.value;
            double span = t - t0;
            out.bound[i] = std::sqrt(k.lambda12_sq * span * f2_int);
        }
    }
    return out;
}

double cost_bound(const DerivedFunctions& df, const CostConstants& k,
                  double T, double tol) {
    if (T == 0) return 0.0;
    if (T < 0) throw config_error("cost_bound: need T >= 0");
    auto f_sq = [&](double t) {
        double v = df.f3(t);
        return v * v;
    };
    std::vector<double> brk;
    for (double b : df.trajectory().breakpoints())
        if (b > 0.0 && b < T) brk.push_back(b);
    QuadResult q = integrate_adaptive(f_sq, 0.0, T, tol, 1e-12, brk);
    return std::sqrt(k.lambda12_sq * T * q.value);
}

std::optional<double> kz_time(const CoefficientProfile& omega,
                              double scan_to) {
    auto ratio = [&](double t) {
        double w = omega(t);
        if (w == 0) return std::numeric_limits<double>::infinity();
        return std::fabs(omega.deriv(t)) / (w * w);
    };
    double lo = std::max(omega.domain().lo, 0.0);
    double hi = std::min(omega.domain().hi, scan_to);
    if (!(hi > lo))
        throw config_error("kz_time: empty scan window");

    // sample on a grid (plus any profile kinks), bracket the first crossing
    std::vector<double> grid;
    const int n = 4096;
    grid.reserve(n + 8);
    for (int i = 0; i <= n; ++i)
        grid.push_back(lo + (hi - lo) * i / n);
    for (double b : omega.breakpoints())
        if (b > lo && b < hi) grid.push_back(b);
    std::sort(grid.begin(), grid.end());

    double prev_t = grid.front();
    double prev_g = ratio(prev_t) - 1.0;
    for (size_t i = 1; i < grid.size(); ++i) {
        double t = grid[i];
        double g = ratio(t) - 1.0;
        if (prev_g < 0 && g >= 0) {
            if (g == 0) return t;
            double root = find_root_brent(
                [&](double s) { return ratio(s) - 1.0; }, prev_t, t, 1e-12);
            if (root > 0) return root;
        }
        prev_t = t;
        prev_g = g;
    }
    return std::nullopt;
}

} // namespace bicost
