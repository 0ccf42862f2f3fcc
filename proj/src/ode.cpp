#include "bicost/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "bicost/errors.hpp"

namespace bicost {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                 c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0,
                 a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                 a76 = 11.0 / 84.0;
// Error coefficients: 5th-order solution minus the embedded 4th-order one.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                 e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Dense-output coefficients (fourth-order continuous extension).
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

double initial_step_guess(const OdeRhs& f, double t0, double dir,
                          const std::vector<double>& y0, double atol,
                          double rtol) {
    const std::size_t n = y0.size();
    std::vector<double> f0(n);
    f(t0, y0.data(), f0.data());
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sk = atol + rtol * std::abs(y0[i]);
        dnf += (f0[i] / sk) * (f0[i] / sk);
        dny += (y0[i] / sk) * (y0[i] / sk);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10)
                   ? 1e-6
                   : 0.01 * std::sqrt(dny / dnf);
    return h * dir;
}

} // namespace

std::size_t OdeSolution::find_segment(double t) const {
    const bool fwd = t1_ >= t0_;
    const double span = std::abs(t1_ - t0_);
    const double slack = 1e-12 * std::max(1.0, span);
    if ((fwd && (t < t0_ - slack || t > t1_ + slack)) ||
        (!fwd && (t > t0_ + slack || t < t1_ - slack)))
        throw numeric_error("ode: interpolation time " + std::to_string(t) +
                            " outside integrated span");
    // Binary search over segment left edges.
    std::size_t lo = 0, hi = segments_.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi + 1) / 2;
        const double edge = segments_[mid].t;
        if (fwd ? (t >= edge) : (t <= edge))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

std::vector<double> OdeSolution::state(double t) const {
    const Segment& s = segments_[find_segment(t)];
    const double th = (t - s.t) / s.h, th1 = 1.0 - th;
    std::vector<double> y(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        const double* r = s.rcont.data() + 5 * i;
        y[i] = r[0] + th * (r[1] + th1 * (r[2] + th * (r[3] + th1 * r[4])));
    }
    return y;
}

double OdeSolution::component(double t, std::size_t i) const {
    const Segment& s = segments_[find_segment(t)];
    const double th = (t - s.t) / s.h, th1 = 1.0 - th;
    const double* r = s.rcont.data() + 5 * i;
    return r[0] + th * (r[1] + th1 * (r[2] + th * (r[3] + th1 * r[4])));
}

OdeSolution integrate(const OdeRhs& f, double t0, double t1,
                      const std::vector<double>& y0, const OdeOptions& opts) {
    if (!(opts.abs_tol > 0) || !(opts.rel_tol > 0))
        throw config_error("ode: tolerances must be positive");
    if (y0.empty())
        throw config_error("ode: empty state");

    const std::size_t n = y0.size();
    const double dir = (t1 >= t0) ? 1.0 : -1.0;

    OdeSolution sol;
    sol.t0_ = t0;
    sol.t1_ = t1;
    sol.dim_ = n;
    sol.times_.push_back(t0);

    // Checkpoints: interior breakpoints (sorted along the direction of
    // integration) plus the endpoint.  No step may straddle one.
    std::vector<double> checkpoints;
    for (double b : opts.breakpoints)
        if ((b - t0) * dir > 0 && (t1 - b) * dir > 0) checkpoints.push_back(b);
    checkpoints.push_back(t1);
    std::sort(checkpoints.begin(), checkpoints.end());
    if (dir < 0) std::reverse(checkpoints.begin(), checkpoints.end());

    if (t0 == t1) {
        OdeSolution::Segment seg;
        seg.t = t0;
        seg.h = 1.0; // unused
        seg.rcont.assign(5 * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) seg.rcont[5 * i] = y0[i];
        sol.segments_.push_back(std::move(seg));
        return sol;
    }

    std::vector<double> y = y0, ynew(n), ysti(n);
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);

    double t = t0;
    double h = opts.initial_step != 0.0
                   ? std::abs(opts.initial_step) * dir
                   : initial_step_guess(f, t0, dir, y, opts.abs_tol,
                                        opts.rel_tol);

    f(t, y.data(), k1.data()); // FSAL seed
    std::size_t nstep = 0, cp_index = 0;
    bool last_was_rejected = false;

    while (cp_index < checkpoints.size()) {
        const double target = checkpoints[cp_index];
        if ((target - t) * dir <= 1e-14 * std::max(1.0, std::abs(t))) {
            ++cp_index;
            continue;
        }
        if (++nstep > opts.max_steps)
            throw numeric_error("ode: exceeded max step count (" +
                                std::to_string(opts.max_steps) + ")");

        if (opts.max_step) {
            const double cap = opts.max_step(t, y.data());
            if (cap > 0 && std::abs(h) > cap) h = cap * dir;
        }
        // Do not step past the next checkpoint.
        if ((t + h - target) * dir > 0) h = target - t;
        if (std::abs(h) <= 16.0 * std::numeric_limits<double>::epsilon() *
                               std::max(1.0, std::abs(t)))
            throw numeric_error("ode: step size underflow at t = " +
                                std::to_string(t));

        // The six intermediate stages.
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * a21 * k1[i];
        f(t + c2 * h, ynew.data(), k2.data());
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * h, ynew.data(), k3.data());
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * h, ynew.data(), k4.data());
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                                  a54 * k4[i]);
        f(t + c5 * h, ynew.data(), k5.data());
        for (std::size_t i = 0; i < n; ++i)
            ysti[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                  a64 * k4[i] + a65 * k5[i]);
        f(t + h, ysti.data(), k6.data());
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] +
                                  a75 * k5[i] + a76 * k6[i]);
        f(t + h, ynew.data(), k7.data());

        // Scaled error norm of the embedded pair.
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sk = opts.abs_tol +
                              opts.rel_tol *
                                  std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                   e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            err += (ei / sk) * (ei / sk);
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err > 1.0) {
            // Reject: shrink and retry.
            const double fac =
                std::max(0.1, 0.9 * std::pow(err, -0.2) * 0.9);
            h *= std::min(fac, 0.9);
            last_was_rejected = true;
            continue;
        }

        // Accept: store the dense coefficients for this step.
        OdeSolution::Segment seg;
        seg.t = t;
        seg.h = h;
        seg.rcont.resize(5 * n);
        for (std::size_t i = 0; i < n; ++i) {
            double* r = seg.rcont.data() + 5 * i;
            const double ydiff = ynew[i] - y[i];
            const double bspl = h * k1[i] - ydiff;
            r[0] = y[i];
            r[1] = ydiff;
            r[2] = bspl;
            r[3] = ydiff - h * k7[i] - bspl;
            r[4] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                        d6 * k6[i] + d7 * k7[i]);
        }
        sol.segments_.push_back(std::move(seg));

        t += h;
        y.swap(ynew);
        k1.swap(k7); // FSAL
        sol.times_.push_back(t);

        if (opts.stop && opts.stop(t, y.data())) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.12g", t);
            throw numeric_error(
                (opts.stop_message.empty() ? std::string("ode: stopped")
                                           : opts.stop_message) +
                " at t = " + buf);
        }

        double fac = 0.9 * std::pow(std::max(err, 1e-16), -0.2);
        fac = std::min(5.0, std::max(0.2, fac));
        if (last_was_rejected) fac = std::min(fac, 1.0);
        last_was_rejected = false;
        h *= fac;
    }

    sol.n_steps_ = sol.segments_.size();
    return sol;
}

} // namespace bicost
