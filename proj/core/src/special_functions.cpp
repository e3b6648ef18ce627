#include "nlsist/special_functions.hpp"

#include <cmath>

#include "nlsist/dd.hpp"

namespace nlsist {

Complex gamma_fn(Complex z) {
    // Lanczos, g = 7, 9 coefficients
    static const double g = 7.0;
    static const double coef[9] = {0.99999999999980993,  676.5203681218851,
                                   -1259.1392167224028,  771.32342877765313,
                                   -176.61502916214059,  12.507343278686905,
                                   -0.13857109526572012, 9.9843695780195716e-6,
                                   1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return M_PI / (std::sin(M_PI * z) * gamma_fn(1.0 - z));
    }
    z -= 1.0;
    Complex x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (z + double(i));
    Complex t = z + g + 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

namespace {

using dd::Cdd;
using dd::Dd;

// Kummer 1F1(alpha, beta, x) in compensated arithmetic; beta is real.
Cdd hyp1f1_dd(const Cdd& alpha, double beta, const Cdd& x) {
    Cdd sum(1.0, 0.0), term(1.0, 0.0);
    for (int n = 0; n < 500; ++n) {
        Cdd an = dd::add(alpha, Cdd(double(n), 0.0));
        Dd dn = dd::mul(Dd(beta + double(n)), Dd(double(n + 1)));
        term = dd::div(dd::mul(dd::mul(term, an), x), dn);
        sum = dd::add(sum, term);
        double ts = std::abs(term.to_complex());
        if (ts < 1e-38 * (1.0 + std::abs(sum.to_complex())) && n > 4) break;
    }
    return sum;
}

// Maclaurin evaluation via the two-Kummer representation, carried out
// entirely in compensated arithmetic (including the Gamma prefactors): the
// two halves cancel to about e^{3|zeta|^2/4}, which exceeds double
// precision already at |zeta| ~ 4.
Complex pc_maclaurin(Complex a, Complex zeta) {
    Cdd A(a), Z(zeta);
    Cdd half_a = dd::mul(A, Dd(0.5));
    Cdd z2_half = dd::mul(dd::mul(Z, Z), Dd(0.5));

    Cdd m1 = hyp1f1_dd(dd::neg(half_a), 0.5, z2_half);
    Cdd m2 = hyp1f1_dd(dd::sub(Cdd(0.5, 0.0), half_a), 1.5, z2_half);

    Dd sqrt_pi = dd::sqrt(Dd(3.141592653589793116, 1.2246467991473532e-16));
    Dd sqrt_2pi = dd::sqrt(dd::kTwoPi);

    Cdd c1 = dd::mul(Cdd(sqrt_pi, Dd(0.0)),
                     dd::rgamma(dd::sub(Cdd(0.5, 0.0), half_a)));
    Cdd c2 = dd::mul(dd::mul(Cdd(sqrt_2pi, Dd(0.0)), Z), dd::rgamma(dd::neg(half_a)));

    Cdd body = dd::sub(dd::mul(c1, m1), dd::mul(c2, m2));
    // prefactor 2^{a/2} e^{-zeta^2/4}
    Cdd pref = dd::exp(dd::sub(dd::mul(Cdd(dd::kLn2, Dd(0.0)), half_a),
                               dd::mul(z2_half, Dd(0.5))));
    return dd::mul(pref, body).to_complex();
}

// Asymptotic expansion, |arg zeta| < 3pi/4: truncated at its smallest term.
Complex pc_asymptotic(Complex a, Complex zeta) {
    Complex sum = 1.0, term = 1.0;
    double best = 1e300;
    Complex inv_z2 = 1.0 / (zeta * zeta);
    for (int n = 1; n <= 60; ++n) {
        // term_n = term_{n-1} * (-2)(a/2-(n-1))(a/2-(n-1/2)) / (n zeta^2)
        Complex factor = -2.0 * (0.5 * a - double(n - 1)) * (0.5 * a - (double(n) - 0.5)) *
                         inv_z2 / double(n);
        term *= factor;
        double ts = std::abs(term);
        if (ts >= best) break;  // divergent tail reached
        best = ts;
        sum += term;
        if (ts < 1e-18 * std::abs(sum)) break;
    }
    return std::exp(-zeta * zeta / 4.0) * std::exp(a * std::log(zeta)) * sum;
}

}  // namespace

Complex parabolic_cylinder(Complex a, Complex zeta) {
    if (std::abs(a) > 2.5)
        throw UnsupportedRangeError("parabolic_cylinder: |a| outside validated envelope");
    if (std::abs(zeta) > 50.0)
        throw UnsupportedRangeError("parabolic_cylinder: |zeta| outside validated envelope");

    const double r = std::abs(zeta);
    if (r <= kPcSwitchRadius) return pc_maclaurin(a, zeta);

    const double arg = std::arg(zeta);
    const double limit = 0.75 * M_PI;
    if (std::abs(arg) < limit - kPcWedgeHalfWidth) return pc_asymptotic(a, zeta);
    if (std::abs(arg) > limit + kPcWedgeHalfWidth) {
        // connection through the left half-plane: both rotated arguments
        // fall inside the asymptotic sector
        Complex iz = kImagUnit * zeta, miz = -kImagUnit * zeta;
        Complex da1 = pc_asymptotic(-a - 1.0, iz);
        Complex da2 = pc_asymptotic(-a - 1.0, miz);
        Complex pref = gamma_fn(a + 1.0) / std::sqrt(2.0 * M_PI);
        return pref * (std::exp(kImagUnit * a * M_PI / 2.0) * da1 +
                       std::exp(-kImagUnit * a * M_PI / 2.0) * da2);
    }
    throw UnsupportedRangeError(
        "parabolic_cylinder: zeta inside the excluded Stokes wedge at large |zeta|");
}

Complex parabolic_cylinder_deriv(Complex a, Complex zeta) {
    return a * parabolic_cylinder(a - 1.0, zeta) - 0.5 * zeta * parabolic_cylinder(a, zeta);
}

}  // namespace nlsist
