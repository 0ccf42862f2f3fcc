#include "bicost/oscillator.hpp"

#include "bicost/errors.hpp"

namespace bicost {

OtmfOscillator to_otmf(const GeneralizedTd& s) {
    if (s.c1 == 0)
        throw config_error("generalized oscillator: c1 must be nonzero");
    if (!s.A0.valid() || !s.g.valid())
        throw config_error("generalized oscillator: missing profiles");
    const double shift = s.c2 * s.c2 / (4.0 * s.c1);
    const CoefficientProfile A0 = s.A0, g = s.g;
    // A1 = A0 - (c2^2 / 4 c1) g,  B1 = c1 g; derivatives are linear.
    auto a1 = CoefficientProfile::from_functions(
        [A0, g, shift](double t) { return A0(t) - shift * g(t); },
        [A0, g, shift](double t) { return A0.deriv(t) - shift * g.deriv(t); },
        [A0, g, shift](double t) { return A0.deriv2(t) - shift * g.deriv2(t); },
        A0.domain(), A0.breakpoints(), "generalized_A1");
    const double c1 = s.c1;
    auto b1 = CoefficientProfile::from_functions(
        [g, c1](double t) { return c1 * g(t); },
        [g, c1](double t) { return c1 * g.deriv(t); },
        [g, c1](double t) { return c1 * g.deriv2(t); }, g.domain(),
        g.breakpoints(), "generalized_B1");
    return {a1, b1};
}

OtmfOscillator to_otmf(const CkOscillator& s) {
    const CkCoefficients c = make_ck_coefficients(s.M, s.omega, s.Delta);
    return {c.A1, c.B1};
}

OtfOscillator to_otf(const QuenchOscillator& s) {
    return {make_quench_profile(s.delta, s.eta)};
}

} // namespace bicost
