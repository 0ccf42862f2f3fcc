#ifndef BICOST_ODE_HPP
#define BICOST_ODE_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace bicost {

/// Right-hand side of y' = f(t, y).  `y` and `dy` have the dimension passed
/// to `integrate`.
using OdeRhs = std::function<void(double t, const double* y, double* dy)>;

struct OdeOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double initial_step = 0.0;   ///< 0 = choose automatically
    std::size_t max_steps = 10'000'000;
    /// Optional per-state cap on the step size (returns a positive bound or
    /// +inf).  Used to keep steps short where the solution moves fast in a
    /// state-dependent sense, e.g. h <= 0.1 * rho / |rho'|.
    std::function<double(double t, const double* y)> max_step;
    /// Optional stop predicate checked after every accepted step; returning
    /// true raises a numeric_error that reports the time of the event.
    std::function<bool(double t, const double* y)> stop;
    std::string stop_message;    ///< message prefix for the stop error
    /// Times interior to the span where the RHS loses smoothness.  The
    /// integration is split so no step straddles them.
    std::vector<double> breakpoints;
};

/// Dense solution of an initial value problem.  Fifth-order accepted states
/// plus the fourth-order continuous extension of each step, so states can be
/// interpolated anywhere inside the integration span.  Immutable after
/// construction; safe to evaluate concurrently.
class OdeSolution {
public:
    double t_begin() const { return t0_; }
    double t_end() const { return t1_; }
    std::size_t dimension() const { return dim_; }
    std::size_t n_steps() const { return n_steps_; }

    /// Interpolate the full state at `t` (clamped to the span within a
    /// round-off margin; outside it throws).
    std::vector<double> state(double t) const;
    /// Interpolate a single state component at `t`.
    double component(double t, std::size_t i) const;
    /// Times of the accepted steps, in increasing order of |t - t0|.
    const std::vector<double>& step_times() const { return times_; }

private:
    friend OdeSolution integrate(const OdeRhs&, double, double,
                                 const std::vector<double>&,
                                 const OdeOptions&);
    // Per accepted step: left time, signed width, and 5 dense coefficients
    // per component (Hairer's rcont1..rcont5 layout).
    struct Segment {
        double t, h;
        std::vector<double> rcont; // 5 * dim
    };
    std::size_t find_segment(double t) const;

    double t0_ = 0, t1_ = 0;
    std::size_t dim_ = 0, n_steps_ = 0;
    std::vector<double> times_;
    std::vector<Segment> segments_;
};

/// Integrate y' = f(t, y) from t0 to t1 (either direction) with the
/// Dormand-Prince embedded 5(4) pair and return a dense solution.
/// Throws numeric_error on step-size underflow, on exceeding
/// `max_steps`, or when the `stop` predicate fires.
OdeSolution integrate(const OdeRhs& f, double t0, double t1,
                      const std::vector<double>& y0,
                      const OdeOptions& opts = {});

} // namespace bicost

#endif
