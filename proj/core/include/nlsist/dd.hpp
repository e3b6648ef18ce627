#pragma once

// Compensated (double-double) arithmetic, ~32 significant digits. Used only
// by the parabolic-cylinder Maclaurin branch, where the series suffers
// cancellation of order e^{3|zeta|^2/4} and plain doubles run out of digits
// well before the asymptotic series becomes accurate.

#include <cmath>
#include <complex>

namespace nlsist::dd {

struct Dd {
    double hi = 0.0;
    double lo = 0.0;
    Dd() = default;
    Dd(double h) : hi(h) {}
    Dd(double h, double l) : hi(h), lo(l) {}
    double to_double() const { return hi + lo; }
};

inline Dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline Dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline Dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline Dd add(const Dd& a, const Dd& b) {
    Dd s = two_sum(a.hi, b.hi);
    double e = s.lo + a.lo + b.lo;
    return quick_two_sum(s.hi, e);
}

inline Dd neg(const Dd& a) { return {-a.hi, -a.lo}; }
inline Dd sub(const Dd& a, const Dd& b) { return add(a, neg(b)); }

inline Dd mul(const Dd& a, const Dd& b) {
    Dd p = two_prod(a.hi, b.hi);
    double e = p.lo + a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, e);
}

inline Dd div(const Dd& a, const Dd& b) {
    double q1 = a.hi / b.hi;
    Dd r = sub(a, mul(Dd(q1), b));
    double q2 = r.hi / b.hi;
    r = sub(r, mul(Dd(q2), b));
    double q3 = r.hi / b.hi;
    Dd q = quick_two_sum(q1, q2);
    return add(q, Dd(q3));
}

inline Dd sqrt(const Dd& x) {
    // one dd Newton step from the double estimate
    double s0 = std::sqrt(x.hi);
    if (s0 == 0.0) return Dd(0.0);
    Dd r = sub(x, mul(Dd(s0), Dd(s0)));
    double corr = r.to_double() / (2.0 * s0);
    return add(Dd(s0), Dd(corr));
}

// ln 2 and pi/2 split into exact double pairs
inline const Dd kLn2{6.931471805599452862e-01, 2.319046813846299558e-17};
inline const Dd kHalfPi{1.570796326794896558e+00, 6.123233995736766036e-17};
inline const Dd kTwoPi{6.283185307179586232e+00, 2.449293598294706414e-16};

inline Dd exp(const Dd& x) {
    if (x.hi > 700.0) return Dd(INFINITY);
    if (x.hi < -700.0) return Dd(0.0);
    double k = std::round(x.hi / kLn2.hi);
    Dd r = sub(x, mul(Dd(k), kLn2));
    const int squarings = 9;
    r = mul(r, Dd(std::ldexp(1.0, -squarings)));
    // Taylor for the reduced argument
    Dd sum(1.0), term(1.0);
    for (int n = 1; n <= 18; ++n) {
        term = div(mul(term, r), Dd(double(n)));
        sum = add(sum, term);
        if (std::fabs(term.hi) < 1e-40) break;
    }
    for (int s = 0; s < squarings; ++s) sum = mul(sum, sum);
    double scale = std::ldexp(1.0, int(k));
    return {sum.hi * scale, sum.lo * scale};
}

inline Dd log(const Dd& x) {
    // Newton refinement of the double log via the dd exp
    double y0 = std::log(x.hi);
    Dd corr = sub(mul(x, exp(Dd(-y0))), Dd(1.0));
    return add(Dd(y0), corr);
}

inline void sincos_taylor(const Dd& r, Dd& s, Dd& c) {
    Dd r2 = mul(r, r);
    s = r;
    Dd term = r;
    for (int n = 1; n <= 20; ++n) {
        term = div(mul(term, r2), Dd(-double(2 * n) * double(2 * n + 1)));
        s = add(s, term);
        if (std::fabs(term.hi) < 1e-40) break;
    }
    c = Dd(1.0);
    term = Dd(1.0);
    for (int n = 1; n <= 20; ++n) {
        term = div(mul(term, r2), Dd(-double(2 * n - 1) * double(2 * n)));
        c = add(c, term);
        if (std::fabs(term.hi) < 1e-40) break;
    }
}

inline void sincos(const Dd& x, Dd& s, Dd& c) {
    double j = std::round(x.hi / kHalfPi.hi);
    Dd r = sub(x, mul(Dd(j), kHalfPi));
    Dd sr, cr;
    sincos_taylor(r, sr, cr);
    switch (((long(j) % 4) + 4) % 4) {
        case 0: s = sr; c = cr; break;
        case 1: s = cr; c = neg(sr); break;
        case 2: s = neg(sr); c = neg(cr); break;
        default: s = neg(cr); c = sr; break;
    }
}

struct Cdd {
    Dd re, im;
    Cdd() = default;
    Cdd(Dd r, Dd i) : re(r), im(i) {}
    Cdd(double r, double i = 0.0) : re(r), im(i) {}
    Cdd(std::complex<double> z) : re(z.real()), im(z.imag()) {}
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

inline Cdd add(const Cdd& a, const Cdd& b) { return {add(a.re, b.re), add(a.im, b.im)}; }
inline Cdd sub(const Cdd& a, const Cdd& b) { return {sub(a.re, b.re), sub(a.im, b.im)}; }
inline Cdd neg(const Cdd& a) { return {neg(a.re), neg(a.im)}; }

inline Cdd mul(const Cdd& a, const Cdd& b) {
    return {sub(mul(a.re, b.re), mul(a.im, b.im)), add(mul(a.re, b.im), mul(a.im, b.re))};
}

inline Cdd mul(const Cdd& a, const Dd& b) { return {mul(a.re, b), mul(a.im, b)}; }

inline Cdd div(const Cdd& a, const Dd& b) { return {div(a.re, b), div(a.im, b)}; }

inline Cdd div(const Cdd& a, const Cdd& b) {
    Dd denom = add(mul(b.re, b.re), mul(b.im, b.im));
    Cdd num = mul(a, Cdd(b.re, neg(b.im)));
    return div(num, denom);
}

inline Cdd exp(const Cdd& z) {
    Dd mag = exp(z.re);
    Dd s, c;
    sincos(z.im, s, c);
    return {mul(mag, c), mul(mag, s)};
}

inline Cdd log(const Cdd& z) {
    Dd norm2 = add(mul(z.re, z.re), mul(z.im, z.im));
    Dd lr = mul(log(norm2), Dd(0.5));
    // refine the double-precision angle by one rotation step
    double th0 = std::atan2(z.im.to_double(), z.re.to_double());
    Dd s, c;
    sincos(Dd(th0), s, c);
    // w = z * e^{-i th0}; the residual angle is atan(w_im/w_re) ~ w_im/w_re
    Dd wre = add(mul(z.re, c), mul(z.im, s));
    Dd wim = sub(mul(z.im, c), mul(z.re, s));
    Dd dth = div(wim, wre);
    return {lr, add(Dd(th0), dth)};
}

/// log Gamma by shifted Stirling series, accurate to ~1e-30 relative.
inline Cdd lngamma(const Cdd& z_in) {
    // Bernoulli numbers B_2..B_32 as exact rationals
    static const double num[] = {1,  -1,  1,  -1,  5,  -691,  7,  -3617,
                                 43867, -174611, 854513, -236364091, 8553103,
                                 -23749461029.0, 8615841276005.0, -7709321041217.0};
    static const double den[] = {6, 30, 42, 30, 66, 2730, 6, 510,
                                 798, 330, 138, 2730, 6, 870, 14322, 510};
    Cdd z = z_in;
    Cdd shift_log(0.0, 0.0);
    int guard = 0;
    while (z.re.to_double() < 25.0 && guard++ < 64) {
        shift_log = add(shift_log, log(z));
        z = add(z, Cdd(1.0, 0.0));
    }
    Cdd lz = log(z);
    // (z - 1/2) log z - z + log(2 pi)/2
    Cdd res = mul(sub(z, Cdd(0.5, 0.0)), lz);
    res = sub(res, z);
    res = add(res, Cdd(mul(log(kTwoPi), Dd(0.5)), Dd(0.0)));
    Cdd zinv = div(Cdd(1.0, 0.0), z);
    Cdd zinv2 = mul(zinv, zinv);
    Cdd pw = zinv;  // z^{-(2n-1)}
    for (int n = 1; n <= 16; ++n) {
        Dd coeff = div(Dd(num[n - 1]), Dd(den[n - 1] * double(2 * n) * double(2 * n - 1)));
        res = add(res, mul(pw, coeff));
        pw = mul(pw, zinv2);
    }
    return sub(res, shift_log);
}

/// 1/Gamma(z); exactly zero at the poles z = 0, -1, -2, ...
inline Cdd rgamma(const Cdd& z) {
    double zr = z.re.to_double(), zi = z.im.to_double();
    if (std::fabs(zi) < 1e-13 && zr < 0.5 &&
        std::fabs(zr - std::round(zr)) < 1e-13)
        return Cdd(0.0, 0.0);
    return exp(neg(lngamma(z)));
}

}  // namespace nlsist::dd
