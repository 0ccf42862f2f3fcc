#ifndef BICOST_OSCILLATOR_HPP
#define BICOST_OSCILLATOR_HPP

#include <optional>
#include <variant>

#include "bicost/profile.hpp"

namespace bicost {

/// H = (A0/2) X^2 + (B0/2) P^2 + (C0/4)(XP + PX), optionally with a
/// constant linear drive -F0 X or an inverse-square term (D0/2) X^{-2}
/// (the latter excludes C0 and F0).
struct TimeIndepGeneralized {
    double A0 = 0, B0 = 0, C0 = 0;
    std::optional<double> F0; ///< linear drive amplitude
    std::optional<double> D0; ///< inverse-square coupling
};

/// H = (1/2) P^2 + (1/2) Omega(t)^2 X^2.
struct OtfOscillator {
    CoefficientProfile omega;
};

/// H = (A1(t)/2) X^2 + (B1(t)/2) P^2 with positive mass 1/B1.
struct OtmfOscillator {
    CoefficientProfile A1, B1;
};

/// Time-dependent generalized oscillator whose B0 and C0 share one shape:
/// B0(t) = c1 g(t), C0(t) = c2 g(t).  Completing the square in P maps it
/// onto an OtmfOscillator with A1 = A0 - C0^2/(4 B0), B1 = B0.
struct GeneralizedTd {
    CoefficientProfile A0;
    double c1 = 1, c2 = 0;
    CoefficientProfile g;
};

/// Exponentially damped oscillator: A1 = M omega^2 e^{Delta t},
/// B1 = (1/M) e^{-Delta t}.
struct CkOscillator {
    double M = 1, omega = 1, Delta = 0;
};

/// Smooth quench of the trap frequency (see make_quench_profile).
struct QuenchOscillator {
    double delta = 1, eta = 1;
};

using OscillatorSpec =
    std::variant<TimeIndepGeneralized, OtfOscillator, OtmfOscillator,
                 GeneralizedTd, CkOscillator, QuenchOscillator>;

/// Reduce a GeneralizedTd to its OtmfOscillator normal form.
OtmfOscillator to_otmf(const GeneralizedTd& s);
/// CkOscillator coefficients as an OtmfOscillator.
OtmfOscillator to_otmf(const CkOscillator& s);
/// QuenchOscillator frequency as an OtfOscillator.
OtfOscillator to_otf(const QuenchOscillator& s);

} // namespace bicost

#endif
