#include "bicost/specfun.hpp"

#include <array>
#include <cmath>
#include <string>

#include "bicost/errors.hpp"
#include "bicost/roots.hpp"

namespace bicost {
namespace {

// Coefficients of B_n(q) in descending powers of q, n = 0..6.
// B_6 = q^6 - 3q^5 + (5/2)q^4 - (1/2)q^2 + 1/42.
const std::array<std::array<double, 7>, 7> kBernoulliCoeff = {{
    {1.0},
    {1.0, -0.5},
    {1.0, -1.0, 1.0 / 6.0},
    {1.0, -1.5, 0.5, 0.0},
    {1.0, -2.0, 1.0, 0.0, -1.0 / 30.0},
    {1.0, -2.5, 5.0 / 3.0, 0.0, -1.0 / 6.0, 0.0},
    {1.0, -3.0, 2.5, 0.0, -0.5, 0.0, 1.0 / 42.0},
}};

} // namespace

double bernoulli_poly(int n, double q) {
    if (n < 0 || n > 6)
        throw config_error("bernoulli_poly: order must lie in [0, 6], got " +
                           std::to_string(n));
    const auto& c = kBernoulliCoeff[static_cast<std::size_t>(n)];
    double acc = c[0];
    for (int i = 1; i <= n; ++i) acc = acc * q + c[static_cast<std::size_t>(i)];
    return acc;
}

double hurwitz_zeta_nonpos(int k, double q) {
    // Written-out Horner forms of -B_{n+1}(q)/(n+1); kept independent of
    // bernoulli_poly but following the same evaluation order so the two
    // paths agree exactly.
    switch (k) {
        case 0:
            return -(q - 0.5);
        case -1:
            return -((q - 1.0) * q + 1.0 / 6.0) / 2.0;
        case -2:
            return -(((q - 1.5) * q + 0.5) * q) / 3.0;
        default:
            throw config_error(
                "hurwitz_zeta_nonpos: only k in {0, -1, -2} supported, got " +
                std::to_string(k));
    }
}

std::pair<double, double> solve_mean_ratio() {
    // zeta(-1, 1/2 - 2 gamma) is positive at gamma = 0 and negative by
    // gamma = 1/2, so [0, 1/2] brackets the positive root.
    auto h = [](double g) { return hurwitz_zeta_nonpos(-1, 0.5 - 2.0 * g); };
    const double pos = find_root_brent(h, 0.0, 0.5, 1e-15);
    // h is even in gamma, so the other root is the mirror image; solve it
    // independently instead of assuming the symmetry.
    const double neg = find_root_brent(h, -0.5, 0.0, 1e-15);
    return {neg, pos};
}

std::pair<double, double> solve_mean_ratio_timeindep() {
    auto h = [](double x) { return hurwitz_zeta_nonpos(-1, 0.5 - x); };
    const double pos = find_root_brent(h, 0.0, 1.0, 1e-15);
    const double neg = find_root_brent(h, -1.0, 0.0, 1e-15);
    return {neg, pos};
}

CostConstants default_cost_constants(double lambda0,
                                     std::optional<double> lambda2_sq_override) {
    if (!(lambda0 > 0))
        throw config_error("cost constants: lambda0 must be > 0");
    const double l0sq = lambda0 * lambda0;
    CostConstants k;
    k.lambda0 = lambda0;
    k.lambda1_sq = std::sqrt(3.0) / 432.0 * l0sq;
    k.lambda2_sq = lambda2_sq_override ? *lambda2_sq_override : 0.05 * l0sq;
    if (!(k.lambda2_sq > 0))
        throw config_error("cost constants: lambda2^2 must be > 0");
    k.lambda12_sq = k.lambda1_sq + k.lambda2_sq;
    k.gamma = -1.0 / (4.0 * std::sqrt(3.0));
    return k;
}

CostConstants make_cost_constants(double lambda0, double lambda1_sq,
                                  double lambda2_sq) {
    if (!(lambda0 > 0) || !(lambda1_sq > 0) || !(lambda2_sq > 0))
        throw config_error("cost constants: weights must be > 0");
    CostConstants k;
    k.lambda0 = lambda0;
    k.lambda1_sq = lambda1_sq;
    k.lambda2_sq = lambda2_sq;
    k.lambda12_sq = lambda1_sq + lambda2_sq;
    k.gamma = -1.0 / (4.0 * std::sqrt(3.0));
    return k;
}

double epstein_hurwitz_regularized(double alpha, double beta_sq) {
    return hurwitz_zeta_nonpos(-2, alpha) +
           beta_sq * hurwitz_zeta_nonpos(0, alpha);
}

} // namespace bicost
