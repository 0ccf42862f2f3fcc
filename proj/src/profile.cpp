#include "bicost/profile.hpp"

#include <algorithm>
#include <cmath>

#include "bicost/errors.hpp"

namespace bicost {

CoefficientProfile CoefficientProfile::from_functions(
    Fn value, Fn deriv, Fn deriv2, TimeInterval domain,
    std::vector<double> breakpoints, std::string label) {
    auto impl = std::make_shared<Impl>();
    impl->value = std::move(value);
    impl->deriv = std::move(deriv);
    impl->deriv2 = std::move(deriv2);
    impl->domain = domain;
    std::sort(breakpoints.begin(), breakpoints.end());
    impl->breakpoints = std::move(breakpoints);
    impl->label = std::move(label);
    CoefficientProfile p;
    p.p_ = std::move(impl);
    return p;
}

CoefficientProfile CoefficientProfile::constant(double value) {
    return from_functions([value](double) { return value; },
                          [](double) { return 0.0; },
                          [](double) { return 0.0; }, TimeInterval{}, {},
                          "constant");
}

CoefficientProfile CoefficientProfile::tabulated(
    const std::vector<double>& times, const std::vector<double>& values) {
    const std::size_t n = times.size();
    if (n < 3 || values.size() != n)
        throw config_error("tabulated profile: need >= 3 matched samples");
    for (std::size_t i = 1; i < n; ++i)
        if (!(times[i] > times[i - 1]))
            throw config_error("tabulated profile: times must increase");

    // Natural cubic spline second derivatives (tridiagonal solve).
    std::vector<double> m(n, 0.0);
    {
        std::vector<double> diag(n, 0.0), rhs(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double hl = times[i] - times[i - 1];
            const double hr = times[i + 1] - times[i];
            diag[i] = 2.0 * (hl + hr);
            rhs[i] = 6.0 * ((values[i + 1] - values[i]) / hr -
                            (values[i] - values[i - 1]) / hl);
        }
        // Forward sweep (natural: m[0] = m[n-1] = 0).
        for (std::size_t i = 2; i + 1 < n; ++i) {
            const double hl = times[i] - times[i - 1];
            const double w = hl / diag[i - 1];
            diag[i] -= w * hl;
            rhs[i] -= w * rhs[i - 1];
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            const double hr = times[i + 1] - times[i];
            m[i] = (rhs[i] - (i + 2 < n ? hr * m[i + 1] : 0.0)) / diag[i];
            if (i == 1) break;
        }
    }

    struct Table {
        std::vector<double> t, y, m;
        std::size_t seg(double x) const {
            const auto it =
                std::upper_bound(t.begin(), t.end(), x) - t.begin();
            return static_cast<std::size_t>(
                std::clamp<std::ptrdiff_t>(it - 1, 0,
                                           static_cast<std::ptrdiff_t>(
                                               t.size()) - 2));
        }
    };
    auto tab = std::make_shared<Table>();
    tab->t = times;
    tab->y = values;
    tab->m = m;

    auto value_fn = [tab](double x) {
        const std::size_t i = tab->seg(x);
        const double h = tab->t[i + 1] - tab->t[i];
        const double a = (tab->t[i + 1] - x) / h, b = (x - tab->t[i]) / h;
        return a * tab->y[i] + b * tab->y[i + 1] +
               ((a * a * a - a) * tab->m[i] + (b * b * b - b) * tab->m[i + 1]) *
                   h * h / 6.0;
    };
    auto deriv_fn = [tab](double x) {
        const std::size_t i = tab->seg(x);
        const double h = tab->t[i + 1] - tab->t[i];
        const double a = (tab->t[i + 1] - x) / h, b = (x - tab->t[i]) / h;
        return (tab->y[i + 1] - tab->y[i]) / h -
               (3.0 * a * a - 1.0) / 6.0 * h * tab->m[i] +
               (3.0 * b * b - 1.0) / 6.0 * h * tab->m[i + 1];
    };
    auto deriv2_fn = [tab](double x) {
        const std::size_t i = tab->seg(x);
        const double h = tab->t[i + 1] - tab->t[i];
        const double a = (tab->t[i + 1] - x) / h, b = (x - tab->t[i]) / h;
        return a * tab->m[i] + b * tab->m[i + 1];
    };
    return from_functions(value_fn, deriv_fn, deriv2_fn,
                          TimeInterval{times.front(), times.back()}, {},
                          "tabulated");
}

CoefficientProfile make_example1_profile(double b1, double b2) {
    if (!(b1 > 0)) throw config_error("example1 profile: b1 must be > 0");
    if (!(b2 > 0) || b2 > 2.0)
        throw config_error(
            "example1 profile: b2 must lie in (0, 2]; steeper falloffs are "
            "not supported");
    auto den = [b1, b2](double t) { return b1 + b2 * t; };
    return CoefficientProfile::from_functions(
        [den](double t) { return 1.0 / den(t); },
        [den, b2](double t) {
            const double d = den(t);
            return -b2 / (d * d);
        },
        [den, b2](double t) {
            const double d = den(t);
            return 2.0 * b2 * b2 / (d * d * d);
        },
        TimeInterval{0.0, std::numeric_limits<double>::infinity()}, {},
        "example1");
}

CoefficientProfile make_example2_profile(double l1, double l2) {
    if (!(l2 > 0)) throw config_error("example2 profile: l2 must be > 0");
    TimeInterval dom{0.0, std::numeric_limits<double>::infinity()};
    if (l1 < 0) dom.hi = -l2 / l1; // denominator vanishes here
    auto den = [l1, l2](double t) { return l1 * t + l2; };
    return CoefficientProfile::from_functions(
        [den](double t) {
            const double d = den(t);
            return 1.0 / (d * d);
        },
        [den, l1](double t) {
            const double d = den(t);
            return -2.0 * l1 / (d * d * d);
        },
        [den, l1](double t) {
            const double d = den(t);
            return 6.0 * l1 * l1 / (d * d * d * d);
        },
        dom, {}, "example2");
}

CoefficientProfile make_quench_profile(double delta, double eta) {
    if (!(delta > 0) || !(eta > 0))
        throw config_error("quench profile: delta and eta must be > 0");
    const double om0 = delta / (eta * eta);
    return CoefficientProfile::from_functions(
        [delta, eta, om0](double t) {
            return t <= 0 ? om0 : delta / (t * t + eta * eta);
        },
        [delta, eta](double t) {
            if (t <= 0) return 0.0;
            const double d = t * t + eta * eta;
            return -2.0 * delta * t / (d * d);
        },
        [delta, eta](double t) {
            if (t <= 0) return 0.0;
            const double d = t * t + eta * eta;
            return -2.0 * delta * (eta * eta - 3.0 * t * t) / (d * d * d);
        },
        TimeInterval{}, {0.0}, "quench");
}

CkCoefficients make_ck_coefficients(double M, double omega, double Delta) {
    if (!(M > 0) || !(omega > 0) || Delta < 0)
        throw config_error("ck coefficients: need M > 0, omega > 0, Delta >= 0");
    if (!(omega * omega > 0.25 * Delta * Delta))
        throw config_error(
            "ck coefficients: overdamped (omega^2 <= Delta^2/4) not supported");
    auto expo = [](double c, double r) {
        return CoefficientProfile::from_functions(
            [c, r](double t) { return c * std::exp(r * t); },
            [c, r](double t) { return c * r * std::exp(r * t); },
            [c, r](double t) { return c * r * r * std::exp(r * t); },
            TimeInterval{}, {}, "exponential");
    };
    return {expo(M * omega * omega, Delta), expo(1.0 / M, -Delta)};
}

CoefficientProfile profile_reciprocal(const CoefficientProfile& p) {
    if (!p.valid()) throw config_error("profile_reciprocal: empty profile");
    return CoefficientProfile::from_functions(
        [p](double t) { return 1.0 / p(t); },
        [p](double t) {
            const double v = p(t);
            return -p.deriv(t) / (v * v);
        },
        [p](double t) {
            const double v = p(t), d = p.deriv(t);
            return (2.0 * d * d - v * p.deriv2(t)) / (v * v * v);
        },
        p.domain(), p.breakpoints(), "reciprocal(" + p.label() + ")");
}

} // namespace bicost
