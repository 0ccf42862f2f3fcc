#ifndef BICOST_QUADRATURE_HPP
#define BICOST_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace bicost {

struct QuadResult {
    double value = 0;
    double error = 0; ///< conservative absolute error estimate
};

/// Single 15-point Gauss-Kronrod panel on [a, b] with the embedded 7-point
/// Gauss error estimate.
QuadResult gauss_kronrod_15(const std::function<double(double)>& f, double a,
                            double b);

/// Globally adaptive integral of f over [a, b] to absolute tolerance
/// abs_tol (plus rel_tol * |result|).  `breakpoints` lists interior
/// non-smooth abscissae where the interval is pre-split.
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b, double abs_tol = 1e-10,
                              double rel_tol = 1e-12,
                              const std::vector<double>& breakpoints = {});

} // namespace bicost

#endif
