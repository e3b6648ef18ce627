#pragma once

#include <utility>
#include <vector>

#include "nlsist/core.hpp"

namespace nlsist {

/// Blaschke-factor removal of one eigenvalue from the reflection coefficient:
/// r~(z) = r(z)(z - z1)/(z - conj(z1)); |r~| = |r| on the real grid.
std::vector<Complex> strip_reflection(const std::vector<Complex>& r, const RealGrid& z_grid,
                                      Complex z1);

struct BacklundInputs {
    Complex z1;  // Im z1 > 0
    Complex c1;  // nonzero
    double t = 0.0;
    double x = 0.0;
    Mat2 m_at_z1 = Mat2::identity();  // radiation-background RH solution at z1
};

/// u(t,x) = u~(t,x) + B with B the one-soliton Darboux addition built from
/// the background solution at z1.
Complex backlund_combine(const BacklundInputs& in, Complex u_tilde_at_x);

/// The exact one-soliton solution determined by (z1, c1).
Complex soliton_closed_form(Complex z1, Complex c1, double t, double x);

/// Phase offset between the soliton-family phase gamma and psi0 = arg(c1):
/// gamma + psi0 = -pi/2. Frozen by the closed-form matching test.
inline constexpr double kGammaPsiOffset = -M_PI / 2;

/// (omega, gamma, v, x0) -> (z1, c1): z1 = (-v + i omega)/2,
/// |c1| = omega e^{omega x0}, arg c1 = -gamma - pi/2.
std::pair<Complex, Complex> params_to_spectrum(const SolitonParams& p);

/// Inverse map; gamma is reduced to (-pi, pi].
SolitonParams spectrum_to_params(Complex z1, Complex c1);

}  // namespace nlsist
