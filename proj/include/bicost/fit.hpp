#ifndef BICOST_FIT_HPP
#define BICOST_FIT_HPP

#include <cmath>
#include <vector>

#include "bicost/errors.hpp"

namespace bicost {

struct LinearFit {
    double slope = 0;
    double intercept = 0; ///< value at x = 0
    double rms = 0;       ///< root-mean-square residual
};

/// Ordinary least squares y ~ intercept + slope * x.
inline LinearFit fit_linear(const std::vector<double>& x,
                            const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw config_error("fit_linear: need >= 2 matched samples");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0) throw numeric_error("fit_linear: degenerate abscissae");
    LinearFit f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

struct PowerFit {
    double amplitude = 0;
    double exponent = 0;
    double rms_log = 0; ///< rms residual in log space
};

/// Fit y ~ amplitude * x^exponent by least squares on (log x, log y).
/// Requires strictly positive samples.
inline PowerFit fit_power(const std::vector<double>& x,
                          const std::vector<double>& y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0))
            throw config_error("fit_power: samples must be positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    const LinearFit lf = fit_linear(lx, ly);
    return {std::exp(lf.intercept), lf.slope, lf.rms};
}

} // namespace bicost

#endif
