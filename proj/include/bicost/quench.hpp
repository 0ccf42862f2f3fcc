#ifndef BICOST_QUENCH_HPP
#define BICOST_QUENCH_HPP

#include <string>
#include <utility>
#include <vector>

#include "bicost/specfun.hpp"

namespace bicost::quench {

/// End-critical protocol Omega = delta/(t^2 + eta^2) (constant before
/// t = 0).  Everything downstream works in the dimensionless pair
/// (beta, s) = (delta/eta, t/eta); eta only carries units back in.
struct QuenchParams {
    double delta = 1;
    double eta = 1;

    QuenchParams(double delta_, double eta_);
    static QuenchParams from_beta(double beta, double eta = 1.0);

    double omega0() const { return delta / (eta * eta); } ///< initial freq
    double alpha() const { return omega0(); }
    double beta() const { return delta / eta; }
    /// 1 + beta^2; its square root is the phase stretch factor nu.  (The
    /// source text names this lambda; renamed to avoid the cost weights.)
    double lambda_exp() const { return 1.0 + beta() * beta(); }
    double nu() const;
};

/// Closed-form auxiliary solution at dimensionless time s, with
/// derivatives in physical time t = eta s.  Constant equilibrium branch
/// for s <= 0.
struct RhoPoint {
    double rho, rho_dot, rho_ddot;
};
RhoPoint quench_rho(const QuenchParams& p, double s);

/// Frequency at dimensionless time s (constant omega0 for s <= 0).
double quench_omega(const QuenchParams& p, double s);

/// Shannon-entropy change of every level, ln(sqrt(Omega0) rho):
///   exact      closed form, valid everywhere, level-independent
///   adiabatic  (1/2) ln(s^2+1), valid before freeze-out (s < beta)
///   late_time  (1/2) ln(1+(s^2-s pi/2+1) beta^2), for beta << 1, s >> 1
/// Values outside a mode's validity window are still returned (they are
/// approximations, not errors).  `n` tags the level and is ignored: the
/// change is the same for every level.
enum class ShannonMode { exact, adiabatic, late_time };
double shannon_delta(const QuenchParams& p, double s, ShannonMode mode,
                     int n = 0);

/// Diagonal function f(s) by its own closed form (independent of the
/// rho-based route, which must agree):
///   f = [ (1+2b^2)(1+2b^2+s^2) + (s^2-1) cos Th - 2s sqrt(1+b^2) sin Th ]
///       / (2 b eta (1+s^2)(1+b^2)),         Th = 2 nu arctan(s).
double quench_f(const QuenchParams& p, double s);

/// Dimensionless cost F_N^2 = eta^2 F_r^2; independent of eta at fixed
/// (beta, s).  Negative values (lambda2^2 too large) raise config_error.
double quench_cost(const QuenchParams& p, const CostConstants& k, double s);

/// Same cost through the late-time truncation of rho^2
/// (rho^2/eta = 1/beta + beta (s^2 - s pi/2 + 1)); valid beta << 1,
/// s >> 1.
double quench_cost_late(const QuenchParams& p, const CostConstants& k,
                        double s);

struct PowerScaling {
    double amplitude = 0, exponent = 0;
    double rms_log = 0; ///< fit residual in log-log space
    double window_lo = 0, window_hi = 0;
};
struct LinearScaling {
    double slope = 0, intercept = 0;
    double rms = 0;
    double window_lo = 0, window_hi = 0;
};

/// Cost-versus-beta curve at fixed s with a power-law fit on the small-
/// beta window and a linear fit on the crossover window.  Windows default
/// to [0.01, 0.1] and [0.3, 1.0]; each must contain at least three grid
/// points.
struct ScalingStudy {
    double s_fixed = 0;
    std::vector<double> beta;
    std::vector<double> FN2;
    PowerScaling power;
    LinearScaling linear;
};
ScalingStudy scaling_study(const CostConstants& k, double s_fixed,
                           const std::vector<double>& beta_grid,
                           std::pair<double, double> power_window = {0.01,
                                                                     0.1},
                           std::pair<double, double> linear_window = {0.3,
                                                                      1.0});

/// CSV-ready table for one of the four summary figures:
///   fig1  entropy change vs beta (exact + adiabatic), s = 0.1/0.15/0.2
///   fig2  entropy change vs beta (exact + late-time), s = 10/15/20
///   fig3  cost vs beta, s = 2/20/200
///   fig4  cost vs beta at s = 200: exact, late-time, and the two fits
struct FigureSeries {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> notes; ///< e.g. fitted constants (fig4)
};
enum class Figure { fig1, fig2, fig3, fig4 };
FigureSeries figure_data(Figure which, const CostConstants& k);

} // namespace bicost::quench

#endif
