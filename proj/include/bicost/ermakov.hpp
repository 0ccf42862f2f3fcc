#ifndef BICOST_ERMAKOV_HPP
#define BICOST_ERMAKOV_HPP

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bicost/oscillator.hpp"

namespace bicost {

/// Solution rho(t) of an auxiliary (Ermakov-Pinney type) equation, with its
/// first derivative, the second derivative supplied by the governing
/// equation itself, and the co-integrated phase theta(t) = int dt / rho^2.
///
/// Numeric instances interpolate a dense adaptive Runge-Kutta solution;
/// analytic instances evaluate closed forms.  Immutable and safe for
/// concurrent evaluation.
class AuxiliaryTrajectory {
public:
    double rho(double t) const;
    double rho_dot(double t) const;
    double rho_ddot(double t) const; ///< from the governing equation
    double theta(double t) const;    ///< phase measured from t_begin

    double t_begin() const;
    double t_end() const;

    /// Accepted step times (numeric) or a uniform sampling (analytic).
    const std::vector<double>& times() const;
    /// Times where the governing coefficients are non-smooth.
    const std::vector<double>& breakpoints() const;
    /// Short description: "dopri5 tol=..." or the closed-form name.
    const std::string& source() const;
    bool is_analytic() const;

    /// Max |rho'' - rhs(t, rho, rho')| over `n` off-grid sample times; the
    /// second derivative is formed by differencing the dense rho' so the
    /// check is independent of the stored right-hand side values.
    double max_residual(int n = 64) const;

    struct Impl;
    explicit AuxiliaryTrajectory(std::shared_ptr<const Impl> p)
        : p_(std::move(p)) {}

private:
    std::shared_ptr<const Impl> p_;
};

struct SolveOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    /// Floor under rho; crossing it raises a singularity error that reports
    /// the collapse time.
    double rho_floor = 1e-6;
};

/// Solve rho'' + Omega(t)^2 rho = 1/rho^3 from (rho0 > 0, rho_dot0) over
/// [t0, t1].  Steps are additionally capped by 0.1 rho/|rho'| and split at
/// the profile's breakpoints.
AuxiliaryTrajectory solve_auxiliary_otf(const CoefficientProfile& omega,
                                        double t0, double t1, double rho0,
                                        double rho_dot0,
                                        const SolveOptions& opts = {});

/// Solve the two-coefficient auxiliary equation
///   rho'' - (B1'/B1) rho' + A1 B1 rho = B1^2 / rho^3
/// over [t0, t1].  B1 must not vanish on the span.
AuxiliaryTrajectory solve_auxiliary_otmf(const CoefficientProfile& A1,
                                         const CoefficientProfile& B1,
                                         double t0, double t1, double rho0,
                                         double rho_dot0,
                                         const SolveOptions& opts = {});

/// Instantaneous-ground-state initial data (Omega(t0)^{-1/2}, 0).
std::pair<double, double> ground_state_initial(const CoefficientProfile& omega,
                                               double t0);

/// Named closed-form auxiliary solutions.
enum class AnalyticKind {
    constant,      ///< Omega = omega_const, rho = omega^{-1/2}
    example1case1, ///< Omega = 1/(b1 + b2 t), 0 < b2 < 2
    example1case2, ///< Omega = 1/(b1 + 2 t) marginal case
    example2,      ///< Omega = 1/(l1 t + l2)^2, rho linear
    quench,        ///< smooth quench profile
    ck,            ///< damped oscillator (two-coefficient equation)
};

struct AnalyticParams {
    // Interpreted per kind; unused members ignored.
    double omega = 1;          // constant
    double b1 = 1, b2 = 1;     // example1
    double l1 = 1, l2 = 1;     // example2
    double delta = 1, eta = 1; // quench
    double M = 1, Delta = 0;   // ck (omega doubles as its frequency)
};

AuxiliaryTrajectory analytic_auxiliary(AnalyticKind kind,
                                       const AnalyticParams& params,
                                       double t0, double t1);

/// Which governing structure a trajectory/derived set belongs to.
enum class OscFamily { otf, otmf };

/// The scalar functions of the auxiliary solution that enter energy matrix
/// elements and the cost:
///   OTF : f = rho'^2 + Omega^2 rho^2 + rho^{-2},
///         g1 = rho'^2 - rho rho'',  g2 = 2 i rho'/rho (stored by magnitude)
///   OTMF: f3 = rho'^2/B1 + A1 rho^2 + B1/rho^2 and the conjugate pair
///         f1/f2 with f1 f2 = f3^2 - 4 A1 B1.
/// For B1 = 1 the two families coincide (f3 = f).
class DerivedFunctions {
public:
    DerivedFunctions(AuxiliaryTrajectory traj, OtfOscillator osc);
    DerivedFunctions(AuxiliaryTrajectory traj, OtmfOscillator osc);

    OscFamily family() const { return family_; }
    const AuxiliaryTrajectory& trajectory() const { return traj_; }

    /// Diagonal profile: f (OTF) or f3 (OTMF).
    double f(double t) const;
    double f3(double t) const { return f(t); }

    /// OTF g-functions; g2 is purely imaginary, returned by magnitude.
    double g1(double t) const;
    double g2_mag(double t) const;

    /// Off-diagonal coefficient f1 (f2 is its conjugate); for the OTF
    /// family this equals g1 - g2.
    std::complex<double> f1(double t) const;
    std::complex<double> f2(double t) const { return std::conj(f1(t)); }
    /// Product f1 * f2 (real and nonnegative).
    double f1f2(double t) const;

    /// Frequency-squared combination entering the cost gap: 4 Omega^2
    /// (OTF) or 4 A1 B1 (OTMF).
    double four_omega_sq(double t) const;

    /// Lewis-Riesenfeld phase ingredients.
    double theta(double t) const { return traj_.theta(t); }
    double Theta_n(int n, double t) const {
        return -(n + 0.5) * theta(t);
    }

private:
    AuxiliaryTrajectory traj_;
    OscFamily family_;
    CoefficientProfile a1_, b1_; // OTF stores Omega^2 implicitly via a1_
};

/// Quadrature form of the diagonal function,
///   f(t) = 2 int_{t0}^{t} rho^2 Omega Omega' dt' + c,
/// used as an independent cross-check of the algebraic f.
double f_integral_form(const AuxiliaryTrajectory& traj,
                       const CoefficientProfile& omega, double c, double t,
                       double tol = 1e-10);

struct SchwarzianCheck {
    double schwarzian;     ///< {theta, t} evaluated from rho, rho', rho''
    double residual;       ///< Omega^2 - theta'^2 - (1/2){theta, t}
};

/// Verify that theta(t) = int dt/rho^2 reproduces Omega^2 through
/// Omega^2 = theta'^2 + (1/2){theta, t}.
SchwarzianCheck schwarzian_check(const AuxiliaryTrajectory& traj,
                                 const CoefficientProfile& omega, double t);

} // namespace bicost

#endif
