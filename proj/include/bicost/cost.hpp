#ifndef BICOST_COST_HPP
#define BICOST_COST_HPP

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "bicost/ermakov.hpp"
#include "bicost/oscillator.hpp"
#include "bicost/specfun.hpp"

namespace bicost {

/// One entry of the Hamiltonian matrix in the instantaneous eigenbasis of
/// the dynamical invariant.  Hermitian, and zero unless |n - m| is 0 or 2.
struct MatrixElement {
    int n = 0;
    int m = 0;
    std::complex<double> value;
};

/// Energy matrix element E_{nm}(t):
///   E_{nn}     = (1/2)(n + 1/2) f
///   E_{n,n+2}  = (1/4) f1 sqrt((n+1)(n+2))
///   E_{n+2,n}  = (1/4) f2 sqrt((n+1)(n+2))
/// (f3, A1, B1 replace f, Omega^2, 1 when the mass also varies).
MatrixElement matrix_element(const DerivedFunctions& df, int n, int m,
                             double t);

/// Regularized cost squared at time t:
///   F_r^2 = lambda12^2 f^2  - 4 lambda2^2 Omega^2   (fixed mass)
///   F_r^2 = lambda12^2 f3^2 - 4 lambda2^2 A1 B1     (varying mass)
/// A negative value signals an invalid weight configuration (lambda2^2 too
/// large for the trajectory) and raises config_error.
double cost_squared(const DerivedFunctions& df, const CostConstants& k,
                    double t);

/// The three algebraically equivalent arrangements, exposed for
/// cross-checks: the primary lambda12^2 f^2 - 4 lambda2^2 Omega^2, the
/// split lambda1^2 f^2 + lambda2^2 (f^2 - 4 Omega^2), and the ground-state
/// form 16 lambda12^2 E_00^2 - 4 lambda2^2 Omega^2.
struct CostSquaredForms {
    double primary, split, via_e00;
};
CostSquaredForms cost_squared_forms(const DerivedFunctions& df,
                                    const CostConstants& k, double t);

inline double cost_squared_otf(const DerivedFunctions& df,
                               const CostConstants& k, double t) {
    return cost_squared(df, k, t);
}
inline double cost_squared_otmf(const DerivedFunctions& df,
                                const CostConstants& k, double t) {
    return cost_squared(df, k, t);
}

/// Inverse-square variant: the singular strength D0 moves the spectrum's
/// mean but not the level spacing, so it decides the sign of the trace
/// regulator while leaving the cost untouched.
struct IsotonicInfo {
    double omega_is;         ///< sqrt(A0 B0)
    double epsilon;          ///< (1/2) sqrt(1 + 4 D0 / B0)
    double mean_plus;        ///< (omega_is/2)(epsilon/2 + 1/(2 sqrt 3))
    double mean_minus;       ///< (omega_is/2)(epsilon/2 - 1/(2 sqrt 3))
    double mean_cost_branch; ///< the branch the positive cost uses (minus)
    int mean_sign;           ///< sign of that branch: -1, 0, +1
};

struct TimeIndepCost {
    double F2 = 0;         ///< regularized cost squared
    double complexity = 0; ///< geodesic cost sqrt(F2) for unit parameter
    /// Drive strength whose spectral shift regularizes the trace by itself:
    /// F0^2 = A1 omega / sqrt 3, A1 = A0 - C0^2/(4 B0), omega = sqrt(A1 B0).
    std::optional<double> regulator_force_sq;
    /// Cost recomputed through the displaced spectrum that drive produces;
    /// matches F2 (positive branch, same magnitude).
    std::optional<double> F2_driven_route;
    std::optional<IsotonicInfo> isotonic;
};

/// Cost of a constant-coefficient generalized oscillator
///   F^2 = lambda1^2 (4 A0 B0 - C0^2),
/// of its linearly driven variant (the drive only re-centers the trace), or
/// of the inverse-square variant F^2 = lambda1^2 A0 B0.  Rejects
/// non-oscillatory coefficients (4 A0 B0 - C0^2 <= 0), except the all-zero
/// generator, whose cost is zero.
TimeIndepCost cost_timeindep(const TimeIndepGeneralized& spec,
                             const CostConstants& k);

/// Cumulative geodesic cost along a trajectory.
struct CostTrajectory {
    std::vector<double> times;
    std::vector<double> F2;         ///< instantaneous cost squared
    std::vector<double> cumulative; ///< C(t) = integral of sqrt(F^2)
    std::vector<double> bound;      ///< lambda12 (t-t0) sqrt(mean f^2)
    double quadrature_error = 0;    ///< summed absolute error estimate
};

/// Integrate sqrt(F2(t)) adaptively over [t0, t1], reporting n_samples
/// cumulative values.  `f_fn` is the diagonal profile feeding the running
/// upper bound (pass an empty function to skip the bound column);
/// `breakpoints` pre-split non-smooth times.  Negative F2 anywhere raises
/// config_error.
CostTrajectory total_cost(const std::function<double(double)>& F2_fn,
                          const std::function<double(double)>& f_fn,
                          const CostConstants& k, double t0, double t1,
                          int n_samples = 201, double tol = 1e-10,
                          const std::vector<double>& breakpoints = {});

/// Upper bound lambda12 T sqrt((1/T) int_0^T f^2 dt) on the total cost up
/// to time T (Cauchy-Schwarz on the diagonal part).
double cost_bound(const DerivedFunctions& df, const CostConstants& k,
                  double T, double tol = 1e-10);

/// Smallest positive time where the adiabaticity ratio |Omega'|/Omega^2
/// reaches 1 (freeze-out).  Returns nullopt when the ratio stays below 1 on
/// (0, scan_to]: the drive is adiabatic throughout.
std::optional<double> kz_time(const CoefficientProfile& omega,
                              double scan_to = 1e3);

} // namespace bicost

#endif
