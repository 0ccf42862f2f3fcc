#include "bicost/quench.hpp"

#include <cmath>
#include <cstdio>

#include "bicost/errors.hpp"
#include "bicost/fit.hpp"
#include "bicost/parallel.hpp"

namespace bicost::quench {

QuenchParams::QuenchParams(double delta_, double eta_)
    : delta(delta_), eta(eta_) {
    if (!(delta > 0) || !std::isfinite(delta))
        throw config_error("quench: delta must be positive and finite");
    if (!(eta > 0) || !std::isfinite(eta))
        throw config_error("quench: eta must be positive and finite");
}

QuenchParams QuenchParams::from_beta(double beta, double eta) {
    return QuenchParams(beta * eta, eta);
}

double QuenchParams::nu() const { return std::sqrt(lambda_exp()); }

double quench_omega(const QuenchParams& p, double s) {
    if (s <= 0) return p.omega0();
    const double t = s * p.eta;
    return p.delta / (t * t + p.eta * p.eta);
}

RhoPoint quench_rho(const QuenchParams& p, double s) {
    if (s <= 0) {
        // Equilibrium ground-state width of the pre-quench oscillator.
        return {p.eta / std::sqrt(p.delta), 0.0, 0.0};
    }
    const double b = p.beta();
    const double nu = p.nu();
    const double phi = std::atan(s);
    const double c = std::cos(nu * phi);
    const double P = c * c + b * b;
    const double one_s2 = 1.0 + s * s;
    const double scale = p.eta / (b * (1.0 + b * b));

    const double Q = scale * one_s2 * P;
    const double s2nf = std::sin(2.0 * nu * phi);
    const double c2nf = std::cos(2.0 * nu * phi);
    const double Qp = scale * (2.0 * s * P - nu * s2nf);
    const double Qpp =
        scale *
        (2.0 * P - (2.0 * s * nu * s2nf + 2.0 * nu * nu * c2nf) / one_s2);

    // rho = sqrt(Q(s)); chain rule converts d/ds into d/dt (t = eta s).
    const double root = std::sqrt(Q);
    RhoPoint r;
    r.rho = root;
    r.rho_dot = Qp / (2.0 * root * p.eta);
    r.rho_ddot = (Qpp / (2.0 * root) - Qp * Qp / (4.0 * Q * root)) /
                 (p.eta * p.eta);
    return r;
}

double shannon_delta(const QuenchParams& p, double s, ShannonMode mode,
                     int /*n: the change is the same for every level*/) {
    const double b = p.beta();
    switch (mode) {
    case ShannonMode::exact: {
        if (s <= 0) return 0.0;
        const double c = std::cos(p.nu() * std::atan(s));
        const double P = c * c + b * b;
        return 0.5 * std::log((1.0 + s * s) * P / (1.0 + b * b));
    }
    case ShannonMode::adiabatic:
        // 0.5 ln(Omega0/Omega); the driven side gives 0.5 ln(s^2+1).
        return s <= 0 ? 0.0 : 0.5 * std::log(s * s + 1.0);
    case ShannonMode::late_time:
        return 0.5 * std::log(1.0 + (s * s - s * M_PI / 2.0 + 1.0) * b * b);
    }
    throw config_error("shannon_delta: unknown mode");
}

namespace {

/// eta * f(s), which depends on (beta, s) only.
double eta_f_exact(const QuenchParams& p, double s) {
    const double b = p.beta();
    if (s <= 0) return 2.0 * b;
    const double b2 = b * b;
    const double s2 = s * s;
    const double Th = 2.0 * p.nu() * std::atan(s);
    const double numer = (1.0 + 2.0 * b2) * (1.0 + 2.0 * b2 + s2) +
                         (s2 - 1.0) * std::cos(Th) -
                         2.0 * s * std::sqrt(1.0 + b2) * std::sin(Th);
    return numer / (2.0 * b * (1.0 + s2) * (1.0 + b2));
}

double eta_omega(const QuenchParams& p, double s) {
    const double b = p.beta();
    return s <= 0 ? b : b / (1.0 + s * s);
}

double combine_cost(const CostConstants& k, double eta_f, double eta_om) {
    const double F2 =
        k.lambda12_sq * eta_f * eta_f - 4.0 * k.lambda2_sq * eta_om * eta_om;
    if (F2 < 0)
        throw config_error(
            "quench cost: negative squared norm; the free weight "
            "lambda2^2 is too large for this configuration");
    return F2;
}

} // namespace

double quench_f(const QuenchParams& p, double s) {
    return eta_f_exact(p, s) / p.eta;
}

double quench_cost(const QuenchParams& p, const CostConstants& k, double s) {
    return combine_cost(k, eta_f_exact(p, s), eta_omega(p, s));
}

double quench_cost_late(const QuenchParams& p, const CostConstants& k,
                        double s) {
    const double b = p.beta();
    // rho^2/eta truncated at first order in beta.
    const double g = s * s - s * M_PI / 2.0 + 1.0;
    const double gp = 2.0 * s - M_PI / 2.0;
    const double r2 = 1.0 / b + b * g;
    const double one_s2 = 1.0 + s * s;
    const double eta_f = b * b * gp * gp / (4.0 * r2) +
                         b * b * r2 / (one_s2 * one_s2) + 1.0 / r2;
    return combine_cost(k, eta_f, eta_omega(p, s));
}

ScalingStudy scaling_study(const CostConstants& k, double s_fixed,
                           const std::vector<double>& beta_grid,
                           std::pair<double, double> power_window,
                           std::pair<double, double> linear_window) {
    if (beta_grid.size() < 3)
        throw config_error("scaling_study: need at least three beta values");
    for (std::size_t i = 0; i < beta_grid.size(); ++i) {
        if (!(beta_grid[i] > 0))
            throw config_error("scaling_study: beta values must be positive");
        if (i > 0 && !(beta_grid[i] > beta_grid[i - 1]))
            throw config_error(
                "scaling_study: beta grid must be strictly increasing");
    }

    ScalingStudy st;
    st.s_fixed = s_fixed;
    st.beta = beta_grid;
    st.FN2.reserve(beta_grid.size());
    for (double b : beta_grid)
        st.FN2.push_back(
            quench_cost(QuenchParams::from_beta(b), k, s_fixed));

    auto window = [&](std::pair<double, double> w, std::vector<double>& xs,
                      std::vector<double>& ys) {
        for (std::size_t i = 0; i < st.beta.size(); ++i) {
            if (st.beta[i] >= w.first && st.beta[i] <= w.second) {
                xs.push_back(st.beta[i]);
                ys.push_back(st.FN2[i]);
            }
        }
        if (xs.size() < 3)
            throw config_error(
                "scaling_study: fit window holds fewer than three grid "
                "points");
    };

    {
        std::vector<double> xs, ys;
        window(power_window, xs, ys);
        const PowerFit pf = fit_power(xs, ys);
        st.power = {pf.amplitude, pf.exponent, pf.rms_log, power_window.first,
                    power_window.second};
    }
    {
        std::vector<double> xs, ys;
        window(linear_window, xs, ys);
        const LinearFit lf = fit_linear(xs, ys);
        st.linear = {lf.slope, lf.intercept, lf.rms, linear_window.first,
                     linear_window.second};
    }
    return st;
}

namespace {

std::vector<double> uniform_grid(double lo, double step, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + step * i;
    return g;
}

} // namespace

FigureSeries figure_data(Figure which, const CostConstants& k) {
    FigureSeries fs;
    switch (which) {
    case Figure::fig1: {
        fs.name = "fig1";
        fs.columns = {"beta",          "exact_s0.10", "adiabatic_s0.10",
                      "exact_s0.15",   "adiabatic_s0.15",
                      "exact_s0.20",   "adiabatic_s0.20"};
        const double svals[] = {0.1, 0.15, 0.2};
        const std::vector<double> betas = uniform_grid(0.05, 0.05, 1000);
        fs.rows.resize(betas.size());
        parallel_for(static_cast<int>(betas.size()), [&](int i) {
            const double b = betas[i];
            const QuenchParams p = QuenchParams::from_beta(b);
            std::vector<double> row = {b};
            for (double s : svals) {
                row.push_back(shannon_delta(p, s, ShannonMode::exact));
                row.push_back(shannon_delta(p, s, ShannonMode::adiabatic));
            }
            fs.rows[i] = std::move(row);
        });
        break;
    }
    case Figure::fig2: {
        fs.name = "fig2";
        fs.columns = {"beta",      "exact_s10", "late_s10", "exact_s15",
                      "late_s15",  "exact_s20", "late_s20"};
        const double svals[] = {10, 15, 20};
        const std::vector<double> betas = uniform_grid(0.001, 0.001, 300);
        fs.rows.resize(betas.size());
        parallel_for(static_cast<int>(betas.size()), [&](int i) {
            const double b = betas[i];
            const QuenchParams p = QuenchParams::from_beta(b);
            std::vector<double> row = {b};
            for (double s : svals) {
                row.push_back(shannon_delta(p, s, ShannonMode::exact));
                row.push_back(shannon_delta(p, s, ShannonMode::late_time));
            }
            fs.rows[i] = std::move(row);
        });
        break;
    }
    case Figure::fig3: {
        fs.name = "fig3";
        fs.columns = {"beta", "cost_s2", "cost_s20", "cost_s200"};
        const double svals[] = {2, 20, 200};
        const std::vector<double> betas = uniform_grid(0.01, 0.01, 500);
        fs.rows.resize(betas.size());
        parallel_for(static_cast<int>(betas.size()), [&](int i) {
            const double b = betas[i];
            const QuenchParams p = QuenchParams::from_beta(b);
            std::vector<double> row = {b};
            for (double s : svals) row.push_back(quench_cost(p, k, s));
            fs.rows[i] = std::move(row);
        });
        break;
    }
    case Figure::fig4: {
        fs.name = "fig4";
        fs.columns = {"beta", "cost_exact", "cost_late", "fit_power",
                      "fit_linear"};
        const double s = 200;
        const std::vector<double> betas = uniform_grid(0.0025, 0.0025, 480);
        const ScalingStudy st = scaling_study(k, s, betas);
        char note[160];
        std::snprintf(note, sizeof note,
                      "fit_power: amplitude=%.17g exponent=%.17g on beta in "
                      "[%g, %g]",
                      st.power.amplitude, st.power.exponent,
                      st.power.window_lo, st.power.window_hi);
        fs.notes.push_back(note);
        std::snprintf(note, sizeof note,
                      "fit_linear: slope=%.17g intercept=%.17g on beta in "
                      "[%g, %g]",
                      st.linear.slope, st.linear.intercept,
                      st.linear.window_lo, st.linear.window_hi);
        fs.notes.push_back(note);
        fs.rows.resize(betas.size());
        parallel_for(static_cast<int>(betas.size()), [&](int i) {
            const double b = betas[i];
            const QuenchParams p = QuenchParams::from_beta(b);
            fs.rows[i] = {b, st.FN2[i], quench_cost_late(p, k, s),
                          st.power.amplitude * std::pow(b, st.power.exponent),
                          st.linear.slope * b + st.linear.intercept};
        });
        break;
    }
    }
    if (fs.rows.empty())
        throw config_error("figure_data: unknown figure selector");
    return fs;
}

} // namespace bicost::quench
