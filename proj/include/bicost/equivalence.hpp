#ifndef BICOST_EQUIVALENCE_HPP
#define BICOST_EQUIVALENCE_HPP

#include <memory>
#include <optional>

#include "bicost/ermakov.hpp"
#include "bicost/oscillator.hpp"
#include "bicost/profile.hpp"
#include "bicost/specfun.hpp"

namespace bicost {

/// Monotone clock change tau(t) = int dt/m1(t) + c3, with c3 fixed so
/// tau(0) = 0 when the span contains 0 (tau(t_begin) = 0 otherwise).
/// Built by co-integrated quadrature; the inverse is found by bracketed
/// root finding on the dense integral, so the round trip is exact to
/// ~1e-12 of the span.
class Reparametrization {
public:
    double tau(double t) const;
    double t_of_tau(double tau) const;
    /// d tau / dt = 1/m1(t).
    double jacobian(double t) const;
    double c3() const;

    double t_begin() const;
    double t_end() const;
    double tau_begin() const;
    double tau_end() const;
    const CoefficientProfile& m1() const;

    struct Impl;
    explicit Reparametrization(std::shared_ptr<const Impl> p)
        : p_(std::move(p)) {}

private:
    std::shared_ptr<const Impl> p_;
};

/// Build the clock change over [t0, t1].  m1 must be strictly positive on
/// the span; a sign change would make tau non-monotone.
Reparametrization build_reparam(const CoefficientProfile& m1, double t0,
                                double t1);

/// The fixed-mass frequency equivalent to the varying-mass pair:
///   Omega(tau) = sqrt(A1/B1) evaluated at t(tau),
/// with chain-rule first and second derivatives in tau.  The ratio A1/B1
/// must stay positive.
CoefficientProfile map_otmf_to_otf(const CoefficientProfile& A1,
                                   const CoefficientProfile& B1,
                                   const Reparametrization& rep);

/// Both sides of the equivalence, solved consistently: the varying-mass
/// trajectory over t in [0, T], and the fixed-mass trajectory over
/// tau in [0, tau(T)] with the mapped frequency and transported initial
/// data (rho carries over as a scalar, d rho/d tau = m1 rho').
struct MappedPair {
    DerivedFunctions otmf; ///< over t
    DerivedFunctions otf;  ///< over tau
    Reparametrization rep;
};

/// rho0 defaults to the instantaneous equilibrium (B1/A1)^{1/4} at t = 0.
MappedPair build_equivalent_pair(const OtmfOscillator& osc, double T,
                                 std::optional<double> rho0 = {},
                                 double rho_dot0 = 0.0,
                                 const SolveOptions& opts = {});

/// Max over a uniform t-grid of |f3(t) - B1(t) f(tau(t))| / |f3(t)|: the
/// diagonal functions themselves map pointwise.
double verify_f3_mapping(const MappedPair& pair, int n_grid = 200);

/// Total costs on the two sides.  They must agree even though the
/// instantaneous norms do not map pointwise.
struct CostEquivalence {
    double D_otmf = 0;
    double D_otf = 0;
    double gap_rel = 0; ///< |D_otmf - D_otf| / |D_otmf|
};
CostEquivalence verify_cost_equivalence(const MappedPair& pair,
                                        const CostConstants& k,
                                        double tol = 1e-9);

} // namespace bicost

#endif
