#include "doctest.h"

#include <cmath>

#include "nlsist/special_functions.hpp"

using namespace nlsist;

namespace {
double rel_gap(Complex got, Complex want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}
}  // namespace

TEST_CASE("gamma function against fixed references") {
    // reference values computed at 30 digits with an independent
    // arbitrary-precision library
    CHECK(rel_gap(gamma_fn(Complex(0.5, -0.3)),
                  Complex(1.26099278639657693320133946292, 0.731759505691833595485579325785)) <
          1e-12);
    CHECK(rel_gap(gamma_fn(Complex(0.0, -0.2)),
                  Complex(-0.54242640892369806819823003155, 4.80973710160310552200530070953)) <
          1e-12);
    CHECK(rel_gap(gamma_fn(Complex(1.0, 0.0)), Complex(1.0, 0.0)) < 1e-13);
    CHECK(rel_gap(gamma_fn(Complex(5.0, 0.0)), Complex(24.0, 0.0)) < 1e-13);
}

TEST_CASE("gamma reflection identity |Gamma(iy)|^2 = pi/(y sinh(pi y))") {
    for (double y : {0.05, 0.2, 0.5, 1.0}) {
        const double lhs = std::norm(gamma_fn(Complex(0.0, y)));
        const double rhs = M_PI / (y * std::sinh(M_PI * y));
        CHECK(std::abs(lhs - rhs) / rhs < 1e-12);
    }
}

TEST_CASE("D_0 is exactly the Gaussian") {
    for (Complex zeta : {Complex(0.7, 0.0), Complex(-1.5, 2.0), Complex(3.0, -4.0)}) {
        const Complex want = std::exp(-zeta * zeta / 4.0);
        CHECK(rel_gap(parabolic_cylinder(Complex(0.0), zeta), want) < 1e-12);
    }
}

TEST_CASE("parabolic cylinder against fixed references") {
    // independent arbitrary-precision references, 30 digits
    CHECK(rel_gap(parabolic_cylinder(Complex(0.0, 0.3), Complex(1.2, -0.4)),
                  Complex(0.735485212383723077402449614186, 0.28513151204426443412564308423)) <
          1e-11);
    CHECK(rel_gap(parabolic_cylinder(Complex(0.0, -0.5), Complex(3.0, 2.0)),
                  Complex(-0.330518227990622901931690438909, 0.187297282213433509307834801107)) <
          1e-11);
    CHECK(rel_gap(parabolic_cylinder(Complex(0.0, 0.05), Complex(-2.0, 1.0)),
                  Complex(0.160535875235302308021812322219, 0.247005720143596103417364555901)) <
          1e-11);
    // asymptotic branch
    CHECK(rel_gap(parabolic_cylinder(Complex(0.0, 0.2), Complex(9.0, 3.0)),
                  Complex(1.26583168098674369123990755131e-8,
                          -6.63666435618783460281324253461e-9)) < 1e-9);
    // connection branch (left half-plane, growing solution)
    {
        const Complex want(37904.7618681710402260982095081, -731102.308695299484308686628973);
        const Complex got = parabolic_cylinder(Complex(0.0, -0.3), Complex(-8.0, 1.0));
        CHECK(std::abs(got - want) / std::abs(want) < 1e-9);
    }
}

TEST_CASE("ladder recurrence on a small lattice") {
    const double h = 1e-3;
    for (double nu : {-0.1, -0.4}) {
        const Complex a = kImagUnit * nu;
        for (Complex zeta : {Complex(0.8, 0.3), Complex(-1.2, 1.7), Complex(4.0, -1.0)}) {
            const Complex d1 = (-parabolic_cylinder(a, zeta + 2 * h) +
                                8.0 * parabolic_cylinder(a, zeta + h) -
                                8.0 * parabolic_cylinder(a, zeta - h) +
                                parabolic_cylinder(a, zeta - 2 * h)) /
                               (12.0 * h);
            const Complex res = d1 + 0.5 * zeta * parabolic_cylinder(a, zeta) -
                                a * parabolic_cylinder(a - 1.0, zeta);
            CHECK(std::abs(res) < 1e-9);
            // and the closed-form derivative agrees with the stencil
            CHECK(std::abs(parabolic_cylinder_deriv(a, zeta) - d1) < 1e-9);
        }
    }
}

TEST_CASE("Weber ODE residual by second differences") {
    // h balances the ~1e-13 evaluation noise (amplified by 1/h^2) against the
    // extrapolated truncation term
    const double h = 5e-3;
    for (double nu : {-0.05, -0.5}) {
        const Complex a = kImagUnit * nu;
        for (Complex zeta : {Complex(0.5, 0.2), Complex(-1.0, 1.0), Complex(2.5, -2.0)}) {
            const Complex d0 = parabolic_cylinder(a, zeta);
            auto d2 = [&](double s) {
                return (parabolic_cylinder(a, zeta + s) - 2.0 * d0 +
                        parabolic_cylinder(a, zeta - s)) /
                       (s * s);
            };
            const Complex dd = (4.0 * d2(h) - d2(2 * h)) / 3.0;
            CHECK(std::abs(dd + (0.5 - zeta * zeta / 4.0 + a) * d0) < 1e-7);
        }
    }
}

TEST_CASE("branch agreement in the switchover annulus") {
    // continuity across |zeta| = switch radius along a safe direction
    const Complex a = kImagUnit * -0.2;
    const Complex dir = std::polar(1.0, 0.4);
    const Complex lo = parabolic_cylinder(a, (kPcSwitchRadius - 1e-6) * dir);
    const Complex hi = parabolic_cylinder(a, (kPcSwitchRadius + 1e-6) * dir);
    CHECK(std::abs(lo - hi) / std::max(1.0, std::abs(lo)) < 1e-9);
}

TEST_CASE("unsupported ranges are refused") {
    CHECK_THROWS_AS(parabolic_cylinder(Complex(0.0, -0.2), Complex(60.0, 0.0)),
                    UnsupportedRangeError);
    CHECK_THROWS_AS(parabolic_cylinder(Complex(3.0, 0.0), Complex(1.0, 0.0)),
                    UnsupportedRangeError);
    // the Stokes wedge at |zeta| beyond the Maclaurin radius
    CHECK_THROWS_AS(parabolic_cylinder(Complex(0.0, -0.2), std::polar(20.0, 3 * M_PI / 4)),
                    UnsupportedRangeError);
}
