#ifndef BICOST_PROFILE_HPP
#define BICOST_PROFILE_HPP

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace bicost {

/// Closed time interval; either end may be infinite.
struct TimeInterval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool contains(double t) const { return t >= lo && t <= hi; }
};

/// One real coefficient of a quadratic Hamiltonian as a function of time.
///
/// Carries analytic first and second derivatives (solvers and mapped
/// profiles need them; finite differences are used only as a cross-check),
/// its domain of validity, and the interior times where smoothness drops
/// below C^2 so integrators can split steps there.
///
/// Value type over immutable shared state: cheap to copy, safe to evaluate
/// concurrently.
class CoefficientProfile {
public:
    using Fn = std::function<double(double)>;

    CoefficientProfile() = default;

    /// Assemble from explicit value/derivative closures.
    static CoefficientProfile from_functions(Fn value, Fn deriv, Fn deriv2,
                                             TimeInterval domain,
                                             std::vector<double> breakpoints = {},
                                             std::string label = "custom");

    static CoefficientProfile constant(double value);

    /// Natural cubic spline through (times, values); C^2 everywhere, so no
    /// breakpoints.  Interpolation error is the caller's responsibility.
    static CoefficientProfile tabulated(const std::vector<double>& times,
                                        const std::vector<double>& values);

    double operator()(double t) const { return p_->value(t); }
    double deriv(double t) const { return p_->deriv(t); }
    double deriv2(double t) const { return p_->deriv2(t); }
    const TimeInterval& domain() const { return p_->domain; }
    const std::vector<double>& breakpoints() const { return p_->breakpoints; }
    const std::string& label() const { return p_->label; }
    bool valid() const { return static_cast<bool>(p_); }

private:
    struct Impl {
        Fn value, deriv, deriv2;
        TimeInterval domain;
        std::vector<double> breakpoints;
        std::string label;
    };
    std::shared_ptr<const Impl> p_;
};

/// Omega(t) = 1 / (b1 + b2 t) on [0, inf).  Requires b1 > 0 and
/// 0 < b2 <= 2; steeper falloffs (b2 > 2) are outside the supported range
/// and rejected.
CoefficientProfile make_example1_profile(double b1, double b2);

/// Omega(t) = 1 / (l1 t + l2)^2 where the denominator stays positive.
/// Domain is [0, inf) for l1 >= 0 and [0, -l2/l1) otherwise; requires
/// l2 > 0 so the start of the domain is regular.
CoefficientProfile make_example2_profile(double l1, double l2);

/// Smooth quench frequency: Omega = delta/eta^2 for t <= 0 and
/// delta/(t^2 + eta^2) for t > 0.  C^1 at the junction; t = 0 is a declared
/// breakpoint because the second derivative jumps there.
CoefficientProfile make_quench_profile(double delta, double eta);

struct CkCoefficients {
    CoefficientProfile A1; ///< M omega^2 e^{Delta t}
    CoefficientProfile B1; ///< (1/M) e^{-Delta t}
};

/// Exponentially damped-oscillator coefficient pair.  Requires M > 0,
/// omega > 0, Delta >= 0 and the underdamped condition omega^2 > Delta^2/4.
CkCoefficients make_ck_coefficients(double M, double omega, double Delta);

/// 1 / p(t) with chain-rule derivatives; p must not vanish where evaluated.
CoefficientProfile profile_reciprocal(const CoefficientProfile& p);

} // namespace bicost

#endif
