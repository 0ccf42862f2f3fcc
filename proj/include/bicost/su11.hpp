#ifndef BICOST_SU11_HPP
#define BICOST_SU11_HPP

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "bicost/ermakov.hpp"
#include "bicost/oscillator.hpp"
#include "bicost/profile.hpp"

namespace bicost::su11 {

using cplx = std::complex<double>;

/// Dense 2x2 complex matrix, the defining representation used to verify
/// all group identities.
struct Mat2 {
    cplx a11{}, a12{}, a21{}, a22{};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    cplx det() const { return a11 * a22 - a12 * a21; }
    cplx trace() const { return a11 + a22; }
};

Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(cplx s, const Mat2& a);

/// Largest entry magnitude; `max_abs_diff` compares two matrices by it.
double max_abs(const Mat2& a);
double max_abs_diff(const Mat2& a, const Mat2& b);

/// Coefficients on the generators (K0, K+, K-).  Used both for single
/// exponentials exp[b0 K0 + b+ K+ + b- K-] and for ordered products
/// exp[c+ K+] exp[c0 K0] exp[c- K-].
struct Triple {
    cplx k0{}, kp{}, km{};
};

struct KMatrices {
    Mat2 k0, kp, km;
};
/// The 2x2 non-unitary representation: K0 = diag(-1,1)/2, K+ lower-left 1,
/// K- upper-right -1.  Satisfies [K+,K-] = -2 K0, [K0,K±] = ±K±.
KMatrices k_matrices();

/// a.k0 K0 + a.kp K+ + a.km K- as a matrix.
Mat2 k_linear(const Triple& a);

/// chi with chi^2 = b+ b- - b0^2/4 (principal square root).
cplx chi_of(const Triple& b);

/// Single exponential exp[b0 K0 + b+ K+ + b- K-] in closed form:
/// cos(chi) I + sinc(chi) (b.K).  Entire in chi^2; a series handles
/// |chi| < 1e-4.
Mat2 matrix_from_b(const Triple& b);

/// Ordered product exp[c+ K+] exp[c0 K0] exp[c- K-]; the outer factors are
/// nilpotent and the middle one diagonal, so the product is exact.
Mat2 matrix_from_c(const Triple& c);

/// Normal-ordering decomposition
///   c0 = -2 ln g(chi),  c± = b± sinc(chi) / g(chi),
///   g(chi) = cos(chi) - (b0/2) sinc(chi).
/// Throws numeric_error when g(chi) = 0 (the decomposition is singular).
Triple decompose_b_to_c(const Triple& b);

/// Invert a group matrix to its exponent: chi = arccos(tr/2) (principal
/// branch), b.K = (M - cos(chi) I)/sinc(chi).  Throws numeric_error at
/// sinc(chi) = 0 (tr = -2), where the exponent is not unique.
Triple b_from_matrix(const Mat2& m);

/// Numerical inverse of the decomposition (principal branch).
inline Triple b_from_c(const Triple& c) {
    return b_from_matrix(matrix_from_c(c));
}

/// A group element with every representation populated and cross-checked
/// by construction: matrix = matrix_from_b(b) and c = decompose_b_to_c(b).
struct Element {
    Triple b, c;
    cplx chi;
    Mat2 matrix;
};
Element element_from_b(const Triple& b);

/// Classical solution of x'' + xi x' + Omega1^2 x = 0 with
/// xi = d ln m1 / dt, co-integrating int dt/(m1 x^2) for the lowering
/// coefficient.  Solving stops with a numeric_error when |x| falls to the
/// caustic floor, where that integral diverges.
class ClassicalTrajectory {
public:
    double x(double t) const;
    double x_dot(double t) const;
    /// Co-integrated int_{t0}^{t} dt' / (m1 x^2).
    double lowering_integral(double t) const;
    double x0() const;
    double t_begin() const;
    double t_end() const;
    const std::vector<double>& times() const;

    /// Max |x'' + xi x' + Omega1^2 x| over n off-grid samples, with x''
    /// formed by differencing the dense x'.
    double max_residual(int n = 64) const;

    /// Profiles the trajectory was solved with.
    const CoefficientProfile& m1() const;
    const CoefficientProfile& omega1_sq() const;

    struct Impl;
    explicit ClassicalTrajectory(std::shared_ptr<const Impl> p)
        : p_(std::move(p)) {}

private:
    std::shared_ptr<const Impl> p_;
};

ClassicalTrajectory solve_classical(const CoefficientProfile& m1,
                                    const CoefficientProfile& omega1_sq,
                                    double t0, double t1, double x0 = 1.0,
                                    double x_dot0 = 0.0,
                                    const SolveOptions& opts = {});

/// Evolution-operator coefficients at time t from the classical solution:
///   c+ = m1 x'/x,  c0 = -2 ln[x(t)/x(0)],  c- = -x(0)^2 int dt'/(m1 x^2).
/// Throws numeric_error when x has reached a caustic by time t.
Triple evolution_c_coefficients(const ClassicalTrajectory& xc, double t);

/// The 2x2 image of the oscillator Hamiltonian: with a+ = -i m1 Omega1^2
/// = -i A1 and a- = -i/m1 = -i B1,
///   H = a+ K+ + a- K-  =  [[0, i B1], [-i A1, 0]].
Mat2 hamiltonian_matrix(double A1, double B1);

/// Max over the uniform grid of the entrywise Schrodinger defect
/// || i dU/dt - H(t) U(t) ||, with dU/dt from 4th-order central
/// differences (the four outermost grid points are skipped).
double verify_schrodinger_residual(const std::function<Mat2(double)>& U,
                                   const std::function<Mat2(double)>& H,
                                   const std::vector<double>& grid);

/// Constant generalized-oscillator coefficients of a Hermitian generator
/// H0 = h.k0 K0 + h.kp K+ + h.km K-, using K+ = (i/2)X^2, K- = (i/2)P^2,
/// K0 = (i/4)(XP+PX):
///   A0 = i h.kp,  B0 = i h.km,  C0 = i h.k0  (all must come out real).
/// For an endpoint evolution exponent b (U = exp[b.K]), the generator
/// triple is h = i b.  Rejects non-Hermitian input.
TimeIndepGeneralized geodesic_generator(const Triple& h);

} // namespace bicost::su11

#endif
