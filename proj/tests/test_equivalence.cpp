#include <doctest.h>

#include <cmath>
#include <vector>

#include "bicost/cost.hpp"
#include "bicost/equivalence.hpp"
#include "bicost/errors.hpp"
#include "bicost/profile.hpp"
#include "bicost/specfun.hpp"

using namespace bicost;

namespace {

OtmfOscillator damped_pair(double M, double omega, double Delta) {
    const CkCoefficients ck = make_ck_coefficients(M, omega, Delta);
    return OtmfOscillator{ck.A1, ck.B1};
}

} // namespace

TEST_CASE("clock change for the damped oscillator has a closed form") {
    // m1 = M e^{Delta t}  =>  tau = (1 - e^{-Delta t})/(Delta M).
    const double M = 1.0, Delta = 0.3;
    const CkCoefficients ck = make_ck_coefficients(M, 1.0, Delta);
    const CoefficientProfile m1 = profile_reciprocal(ck.B1);
    const Reparametrization rep = build_reparam(m1, 0.0, 2.0);
    CHECK(rep.tau(0.0) == doctest::Approx(0.0));
    for (double t : {0.3, 1.0, 1.7, 2.0}) {
        const double expected = (1.0 - std::exp(-Delta * t)) / (Delta * M);
        CHECK(rep.tau(t) == doctest::Approx(expected).epsilon(1e-10));
        // round trip through the inverse
        CHECK(rep.t_of_tau(rep.tau(t)) == doctest::Approx(t).epsilon(1e-9));
        CHECK(rep.jacobian(t) == doctest::Approx(1.0 / m1(t)));
    }
}

TEST_CASE("mapped frequency is the instantaneous sqrt(A1/B1)") {
    // For the damped pair sqrt(A1/B1) = M omega e^{Delta t}, i.e. in tau:
    // Omega(tau) = M omega / (1 - Delta M tau).
    const double M = 1.0, omega = 1.0, Delta = 0.3;
    const CkCoefficients ck = make_ck_coefficients(M, omega, Delta);
    const Reparametrization rep =
        build_reparam(profile_reciprocal(ck.B1), 0.0, 2.0);
    const CoefficientProfile Om = map_otmf_to_otf(ck.A1, ck.B1, rep);
    for (double t : {0.0, 0.5, 1.3, 2.0}) {
        const double tau = rep.tau(t);
        CHECK(Om(tau) ==
              doctest::Approx(M * omega / (1.0 - Delta * M * tau))
                  .epsilon(1e-9));
    }
    // derivative in tau by finite differences
    const double tau = rep.tau(1.0), h = 1e-5;
    CHECK(Om.deriv(tau) ==
          doctest::Approx((Om(tau + h) - Om(tau - h)) / (2 * h))
              .epsilon(1e-6));
}

TEST_CASE("diagonal functions map pointwise between the clocks") {
    const MappedPair pair =
        build_equivalent_pair(damped_pair(1.0, 1.0, 0.3), 2.0);
    CHECK(verify_f3_mapping(pair) < 1e-6);
}

TEST_CASE("total costs agree across the clock change") {
    const CostConstants k = default_cost_constants();
    for (double T : {0.5, 1.0}) {
        const MappedPair pair =
            build_equivalent_pair(damped_pair(1.0, 1.0, 0.3), T);
        const CostEquivalence ce = verify_cost_equivalence(pair, k);
        CAPTURE(T);
        CHECK(ce.D_otmf > 0);
        CHECK(ce.gap_rel < 1e-6);
    }
}

TEST_CASE("instantaneous norms do not map, only their integrals do") {
    // The equivalence is between total costs; the pointwise norms differ
    // by the clock jacobian.  Verify a definite separation so the matching
    // totals are not accidentally trivial on this family.
    const CostConstants k = default_cost_constants();
    const MappedPair pair =
        build_equivalent_pair(damped_pair(1.0, 1.0, 0.3), 1.0);
    double max_sep = 0;
    for (int i = 1; i < 40; ++i) {
        const double t = i / 40.0;
        const double Ft = std::sqrt(cost_squared(pair.otmf, k, t));
        const double Ftau =
            std::sqrt(cost_squared(pair.otf, k, pair.rep.tau(t)));
        max_sep = std::max(max_sep,
                           std::abs(Ft - Ftau) / std::max(Ft, Ftau));
    }
    CHECK(max_sep > 1e-3);
}

TEST_CASE("degenerate mass profile is rejected") {
    // m1 crossing zero makes the clock non-monotone.
    const CoefficientProfile m1 = CoefficientProfile::from_functions(
        [](double t) { return 1.0 - t; }, [](double) { return -1.0; },
        [](double) { return 0.0; }, TimeInterval{0.0, 3.0});
    CHECK_THROWS_AS((void)build_reparam(m1, 0.0, 3.0), config_error);
}

TEST_CASE("unit mass: the clock change is the identity") {
    // With B1 = 1 the two families coincide; tau(t) = t and the mapped
    // frequency equals sqrt(A1).
    const CoefficientProfile one = CoefficientProfile::constant(1.0);
    const CoefficientProfile A1 = CoefficientProfile::from_functions(
        [](double t) { return 1.0 + 0.1 * t; },
        [](double) { return 0.1; }, [](double) { return 0.0; },
        TimeInterval{0.0, 10.0});
    const Reparametrization rep = build_reparam(one, 0.0, 2.0);
    for (double t : {0.5, 1.5, 2.0})
        CHECK(rep.tau(t) == doctest::Approx(t).epsilon(1e-12));
    const CoefficientProfile Om = map_otmf_to_otf(A1, one, rep);
    CHECK(Om(1.0) == doctest::Approx(std::sqrt(1.1)).epsilon(1e-10));
}
