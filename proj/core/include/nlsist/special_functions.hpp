#pragma once

#include "nlsist/core.hpp"

namespace nlsist {

/// Complex Gamma function (Lanczos, reflection for Re z < 1/2);
/// relative error below ~1e-12 on the window used here.
Complex gamma_fn(Complex z);

/// Weber parabolic cylinder function D_a(zeta), normalized by the asymptotic
/// expansion e^{-zeta^2/4} zeta^a (1 + ...) for |arg zeta| < 3pi/4.
/// Validated envelope: |a| <= 2.5, |zeta| <= 50, and away from a narrow
/// wedge around arg zeta = +-3pi/4 when |zeta| is beyond the Maclaurin
/// radius; outside it an UnsupportedRangeError is thrown.
Complex parabolic_cylinder(Complex a, Complex zeta);

/// d/dzeta D_a(zeta) via the ladder identity D_a' = a D_{a-1} - (zeta/2) D_a.
Complex parabolic_cylinder_deriv(Complex a, Complex zeta);

/// Switchover radius between the compensated Maclaurin branch and the
/// asymptotic/connection branches.
inline constexpr double kPcSwitchRadius = 7.5;

/// Half-width of the excluded wedge around the Stokes rays arg = +-3pi/4
/// (outer branches only).
inline constexpr double kPcWedgeHalfWidth = 0.15;

}  // namespace nlsist
